"""Numerics for the radial operator ``-d^2/dr^2 + (k^2 - 1/4)/r^2`` on ``(0, inf)``.

Solutions, m-functions, spectral measures and eigenfunction transforms for
every self-adjoint extension ``(k, theta)`` with ``|k| < 1``, evaluated so
that nothing degrades as ``k`` passes through 0.
"""

from .eigen_solutions import (ExtensionParams, SolutionEval, eval_u, eval_u_theta, eval_v, eval_w,
                              eval_w_direct, ode_residual, q_kappa, wronskian_at)
from .exceptions import (AccuracyError, BoundaryError, BranchCutError, ConvergenceError, DomainError,
                         InconclusiveTruncation, PoleError, SeriesError, SpectralError)
from .special_functions import (LOWER_CUT, PRINCIPAL, BranchCut, SeriesConfig, chi, chi_dkappa, cut_log,
                                cut_power, digamma, gamma_fn, hankel1, script_y, sinc_c)
from .spectral_measures import (Atom, SpectralMeasure, atom_weight, bound_state_energy, build_measure,
                                density, m_function, m_limit_check, phi, residue_weight, v_kappa_density)
from .transforms import (EnergyGrid, GridFunction, PolyBump, SpectralFunction, apply_hamiltonian,
                         bound_state_norm, diag_defect, forward, integrate, inverse, parseval_defect)

__version__ = "0.1.0"

__all__ = [
    "AccuracyError", "Atom", "BoundaryError", "BranchCut", "BranchCutError", "ConvergenceError",
    "DomainError", "EnergyGrid", "ExtensionParams", "GridFunction", "InconclusiveTruncation",
    "LOWER_CUT", "PRINCIPAL", "PoleError", "PolyBump", "SeriesConfig", "SeriesError", "SolutionEval",
    "SpectralError", "SpectralFunction", "SpectralMeasure", "apply_hamiltonian", "atom_weight",
    "bound_state_energy", "bound_state_norm", "build_measure", "chi", "chi_dkappa", "cut_log",
    "cut_power", "density", "diag_defect", "digamma", "eval_u", "eval_u_theta", "eval_v", "eval_w",
    "eval_w_direct", "forward", "gamma_fn", "hankel1", "integrate", "inverse", "m_function",
    "m_limit_check", "ode_residual", "parseval_defect", "phi", "q_kappa", "residue_weight",
    "script_y", "sinc_c", "v_kappa_density", "wronskian_at",
]
