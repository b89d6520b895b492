"""The ten acceptance criteria, each at its stated tolerance.

Every criterion prints one ``[PASS]``/``[FAIL]`` line with the measured
defect, whatever the outcome, before asserting.
"""

import pytest

from isq_spectral.verify import CHECKS, VerifyConfig

CRITERIA = [
    (1, "ode"),
    (2, "wronskian"),
    (3, "m_limit"),
    (4, "residue"),
    (5, "unitarity"),
    (6, "diagonalization"),
    (7, "bound_norm"),
    (8, "continuity"),
    (9, "hankel"),
    (10, "symmetry"),
]


def test_every_check_is_a_criterion():
    assert sorted(name for _, name in CRITERIA) == sorted(CHECKS)


@pytest.mark.acceptance
@pytest.mark.parametrize("number,name", CRITERIA, ids=[f"{n:02d}-{c}" for n, c in CRITERIA])
def test_criterion(number, name, capsys):
    result = CHECKS[name](VerifyConfig())
    with capsys.disabled():
        print(f"\ncriterion {number:2d} {result.line()}")
    assert result.passed, result.detail
