"""Command-line front end: ``isq-spectral {eval,measure,transform,verify,table}``.

Output is ``{"meta": {...}, "data": {...}}`` JSON with columnar arrays, or CSV
with a one-line header.  Floats are written with ``repr`` (shortest
round-trip), so identical runs give byte-identical payloads.

Exit codes: 0 success, 1 usage or validation error, 2 numerical failure,
3 inconclusive spectral truncation.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

import numpy as np

from . import __version__
from .eigen_solutions import ExtensionParams, eval_u, eval_u_theta, eval_v, eval_w
from .exceptions import DomainError, InconclusiveTruncation, SpectralError
from .special_functions import DEFAULT_SERIES, SeriesConfig, chi, chi_dkappa, hankel1, script_y
from .spectral_measures import (atom_weight, bound_state_energy, build_measure, density, m_function,
                                m_limit_check, phi)
from .transforms import EnergyGrid, GridFunction, PolyBump, forward, inverse, parseval_report
from .verify import VerifyConfig, run_all

EXIT_OK, EXIT_USAGE, EXIT_NUMERIC, EXIT_INCONCLUSIVE = 0, 1, 2, 3
COMMANDS = ("eval", "measure", "transform", "verify", "table")
THREADS_ENV = "ISQ_SPECTRAL_THREADS"

TAGS = {
    "u": "u^k(E|r) = r^(1/2+k) X_k(r^2 E),  X_k(z) = sum_n (-z/4)^n / (2^k Gamma(k+n+1) n!)",
    "w": "w^k = (u^k cos(pi k) - u^-k)/sin(pi k);  k=0: (2/pi)[(log(r/2)+gamma) u^0 - sqrt(r) Y(r^2 E)]",
    "u_theta": "u^k_theta = u^k cos(theta - pi k/2) + w^k sin(theta - pi k/2)",
    "v": "v^k(z|r) = (i pi/2) e^(i pi k/2) sqrt(r) H1_k(r z^(1/2)),  arg z in (-pi/2, 3pi/2)",
    "d_r": "derivative in r of the preceding solution",
    "density": "1/t,  t = 2 + Phi^2 (1 - cos 2theta cos pi k) + Phi (E^(-k/2) + E^(k/2)) sin 2theta",
    "phi": "Phi(k,E) = -(log E / (pi sinc(pi k))) sinh(k log E/2)/(k log E/2)",
    "im_m": "Im M_{k,theta}(E + i eta)",
    "m_limit": "Richardson limit of Im M_{k,theta}(E + i eta) as eta -> 0",
    "atom_energy": "E_b = -exp[(pi cot theta/(2 cos(pi k/2))) sinc(pi k/2) g(cot theta tan(pi k/2))],  g(y) = log((1+y)/(1-y))/y",
    "atom_weight": "pi^2 sinc(pi k) |E_b| / (2 sin(theta + pi k/2) sin(theta - pi k/2))",
    "forward": "(U psi)(E) = int u^k_theta(E|r) psi(r) dr",
    "inverse": "(U^-1 phi)(r) = int u^k_theta(E|r) phi(E) density(E) dE + weight u^k_theta(E_b|r) phi(E_b)",
    "chi": "X_k(z) = sum_n (-z/4)^n / (2^k Gamma(k+n+1) n!)",
    "chi_dkappa": "d/dk X_k(z), termwise factor -(log 2 + digamma(k+n+1))",
    "script_y": "Y(z) = sum_{n>=1} (-1)^n c_n z^n / ((n!)^2 4^n),  c_n = 1 + 1/2 + ... + 1/n",
    "hankel1": "H1_k(x) = J_k(x) + i Y_k(x)",
    "m": "M_{k,theta}(z) = -(1/2) W(v, u_{theta-pi/2}) / W(v, u_theta)",
}


class UsageError(Exception):
    """Bad command line or configuration; maps to exit code 1."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass(frozen=True)
class GridSpec:
    lo: float
    hi: float
    n: int
    spacing: str = "linear"

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        parts = text.split(":")
        if len(parts) not in (3, 4):
            raise UsageError(f"grid '{text}' must be min:max:n[:log]")
        try:
            lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError as exc:
            raise UsageError(f"grid '{text}': {exc}") from None
        spacing = "linear"
        if len(parts) == 4:
            if parts[3] not in ("log", "linear"):
                raise UsageError(f"grid spacing must be 'log' or 'linear', got '{parts[3]}'")
            spacing = parts[3]
        if n < 1 or not (math.isfinite(lo) and math.isfinite(hi)) or (n > 1 and not hi > lo):
            raise UsageError(f"grid '{text}' needs n >= 1 and max > min")
        if spacing == "log" and lo <= 0:
            raise UsageError("log grids need min > 0")
        return cls(lo, hi, n, spacing)

    def values(self) -> np.ndarray:
        if self.n == 1:
            return np.array([self.lo])
        if self.spacing == "log":
            return np.geomspace(self.lo, self.hi, self.n)
        return np.linspace(self.lo, self.hi, self.n)


@dataclass(frozen=True)
class RunConfig:
    command: str
    params: ExtensionParams
    r_grid: GridSpec | None = None
    e_grid: GridSpec | None = None
    eta_list: tuple = (1e-2, 1e-3, 1e-4)
    e_max: float = 400.0
    tolerances: dict = field(default_factory=dict)
    out: str | None = None
    fmt: str = "json"
    seed_goldens: bool = False
    bump: tuple = (1.0, 2.0, 3)
    input: str | None = None
    goldens_dir: str = "tests/goldens"
    only: tuple = ()

    def echo(self) -> dict:
        d = asdict(self)
        d["params"] = {"kappa": self.params.kappa, "theta": self.params.theta}
        return d


# ---------------------------------------------------------------------------
# argument handling

TOL_NAMES = {
    "eval": {"rel_tol"},
    "measure": {"rel_tol"},
    "transform": {"quad_tol", "tail_tol"},
    "table": {"rtol", "atol"},
    "verify": {f.name for f in fields(VerifyConfig) if f.name.endswith("_tol")},
}


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="isq-spectral", description=__doc__.splitlines()[0])
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("--kappa", type=float, default=0.0)
    ap.add_argument("--theta", type=float, default=math.pi / 2)
    ap.add_argument("--theta-mode", choices=("absolute", "offset-from-theta-kappa"), default="absolute")
    ap.add_argument("--r-grid", default=None, help="min:max:n[:log]")
    ap.add_argument("--e-grid", default=None, help="min:max:n[:log]")
    ap.add_argument("--eta-list", default="1e-2,1e-3,1e-4", help="comma-separated decreasing etas")
    ap.add_argument("--e-max", type=float, default=400.0)
    ap.add_argument("--tol", action="append", default=[], metavar="NAME=VALUE")
    ap.add_argument("--out", default=None, help="output path (stdout when omitted)")
    ap.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    ap.add_argument("--seed-goldens", action="store_true", help="table: write goldens instead of comparing")
    ap.add_argument("--goldens-dir", default="tests/goldens")
    ap.add_argument("--bump", default="1:2:3", help="transform: built-in bump a:b:power")
    ap.add_argument("--input", default=None, help="transform: CSV with columns r,value[,weight]")
    ap.add_argument("--only", default="", help="verify: comma-separated subset of checks")
    return ap


def _parse_tols(command: str, items) -> dict:
    out = {}
    for item in items:
        name, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"--tol expects NAME=VALUE, got '{item}'")
        if name not in TOL_NAMES[command]:
            raise UsageError(f"unknown tolerance '{name}' for {command}; known: {sorted(TOL_NAMES[command])}")
        try:
            v = float(value)
        except ValueError:
            raise UsageError(f"tolerance '{name}' is not a number") from None
        if not v > 0:
            raise UsageError(f"tolerance '{name}' must be positive")
        out[name] = v
    return out


def config_from_args(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    try:
        params = (ExtensionParams.from_offset(ns.kappa, ns.theta) if ns.theta_mode == "offset-from-theta-kappa"
                  else ExtensionParams(ns.kappa, ns.theta))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    r_grid = GridSpec.parse(ns.r_grid) if ns.r_grid else None
    e_grid = GridSpec.parse(ns.e_grid) if ns.e_grid else None
    if r_grid is not None and r_grid.lo <= 0:
        raise UsageError("r-grid min must be > 0")
    if ns.command == "measure" and e_grid is not None and e_grid.lo <= 0:
        raise UsageError("measure needs an E-grid with min > 0")
    try:
        etas = tuple(float(x) for x in ns.eta_list.split(",") if x.strip())
    except ValueError:
        raise UsageError("--eta-list must be comma-separated numbers") from None
    if not etas or any(e <= 0 for e in etas):
        raise UsageError("etas must be positive")
    if not ns.e_max > 0:
        raise UsageError("--e-max must be positive")
    try:
        a, b, pw = ns.bump.split(":")
        bump = (float(a), float(b), int(pw))
    except ValueError:
        raise UsageError("--bump must be a:b:power") from None
    if not 0 < bump[0] < bump[1] or bump[2] < 1:
        raise UsageError("--bump needs 0 < a < b and power >= 1")
    only = tuple(x for x in ns.only.split(",") if x)
    return RunConfig(ns.command, params, r_grid, e_grid, etas, ns.e_max, _parse_tols(ns.command, ns.tol),
                     ns.out, ns.fmt, ns.seed_goldens, bump, ns.input, ns.goldens_dir, only)


# ---------------------------------------------------------------------------
# output


def _clean(x):
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple, np.ndarray)):
        return [_clean(v) for v in x]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (float, np.floating)):
        x = float(x)
        return x if math.isfinite(x) else repr(x)
    return x


def _split_complex(name: str, arr) -> dict:
    arr = np.asarray(arr).ravel()
    if np.iscomplexobj(arr):
        return {f"{name}_re": arr.real, f"{name}_im": arr.imag}
    return {name: arr}


def render(payload: dict, fmt: str) -> dict[str, str]:
    """Serialise ``{"meta", "data"}``; returns ``{suffix: text}`` (several CSV tables possible)."""
    if fmt == "json":
        return {"": json.dumps(_clean(payload), indent=1) + "\n"}
    tables = {k: v for k, v in payload["data"].items() if isinstance(v, dict) and _is_table(v)}
    if _is_table(payload["data"]):
        tables = {"": payload["data"]}
    out = {}
    for name, cols in tables.items():
        cols = {k: v for k, v in cols.items() if isinstance(v, (list, np.ndarray))}
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for row in zip(*cols.values()):
            w.writerow([repr(float(v)) if isinstance(v, (float, np.floating)) else v for v in row])
        out[name] = buf.getvalue()
    return out


def _is_table(d: dict) -> bool:
    lens = {len(v) for v in d.values() if isinstance(v, (list, np.ndarray))}
    return len(lens) == 1


def emit(payload: dict, cfg: RunConfig) -> None:
    parts = render(payload, cfg.fmt)
    if cfg.out is None:
        for name, text in parts.items():
            if name and len(parts) > 1:
                sys.stdout.write(f"# {name}\n")
            sys.stdout.write(text)
        return
    base = Path(cfg.out)
    base.parent.mkdir(parents=True, exist_ok=True)
    for name, text in parts.items():
        path = base if not name or len(parts) == 1 else base.with_name(f"{base.stem}.{name}{base.suffix}")
        path.write_text(text)


def _meta(cfg: RunConfig, tags: dict) -> dict:
    return {"version": __version__, "config": cfg.echo(), "paper_tags": tags}


def _threads() -> int:
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        n = int(raw)
    except ValueError:
        raise UsageError(f"{THREADS_ENV} must be an integer, got '{raw}'") from None
    if n < 1:
        raise UsageError(f"{THREADS_ENV} must be >= 1")
    return n


def _pmap(fn, chunks):
    n = _threads()
    if n == 1 or len(chunks) == 1:
        return [fn(c) for c in chunks]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, chunks))  # map keeps input order


def _chunks(arr: np.ndarray) -> list[np.ndarray]:
    return np.array_split(arr, max(1, min(len(arr), 4 * _threads())))


# ---------------------------------------------------------------------------
# commands


def _series_cfg(cfg: RunConfig) -> SeriesConfig:
    return replace(DEFAULT_SERIES, **({"rel_tol": cfg.tolerances["rel_tol"]} if "rel_tol" in cfg.tolerances else {}))


def cmd_eval(cfg: RunConfig) -> tuple[dict, int]:
    p = cfg.params
    r = (cfg.r_grid or GridSpec(0.1, 5.0, 25)).values()
    E = (cfg.e_grid or GridSpec(0.5, 25.0, 10)).values()
    if np.any(E == 0):
        raise DomainError("E = 0 is not allowed for v (logarithm of zero)")
    scfg = _series_cfg(cfg)

    def block(es):
        e2, r2 = np.meshgrid(es, r, indexing="ij")
        u, w, ut = eval_u(p.kappa, e2, r2, scfg), eval_w(p.kappa, e2, r2, scfg), eval_u_theta(p, e2, r2, scfg)
        v = eval_v(p.kappa, e2.astype(complex), r2, scfg)
        cols = {"E": e2.ravel(), "r": r2.ravel()}
        for name, s in (("u", u), ("w", w), ("u_theta", ut), ("v", v)):
            cols.update(_split_complex(name, s.value))
            cols.update(_split_complex(f"{name}_dr", s.d_r))
        return cols

    parts = _pmap(block, _chunks(E))
    data = {k: np.concatenate([c[k] for c in parts]) for k in parts[0]}
    tags = {k: TAGS[k.split("_re")[0].split("_im")[0].removesuffix("_dr")] if not k.endswith(("_dr", "_dr_re", "_dr_im"))
            else TAGS["d_r"] for k in data if k not in ("E", "r")}
    return {"meta": _meta(cfg, tags), "data": data}, EXIT_OK


def cmd_measure(cfg: RunConfig) -> tuple[dict, int]:
    p = cfg.params
    E = (cfg.e_grid or GridSpec(0.01, 100.0, 41, "log")).values()
    etas = np.asarray(cfg.eta_list)

    def block(es):
        cols = {"E": es, "density": density(p, es), "phi": phi(p.kappa, es)}
        for eta in etas:
            cols[f"im_m_eta={eta!r}"] = np.imag(m_function(p, es + 1j * eta))
        if etas.size >= 3 and np.all(np.diff(etas) < 0):
            lim = [m_limit_check(p, float(e), etas) for e in es]
            cols["m_limit"] = np.array([x[0] for x in lim])
            cols["m_limit_err"] = np.array([x[1] for x in lim])
        return cols

    parts = _pmap(block, _chunks(E))
    data = {k: np.concatenate([c[k] for c in parts]) for k in parts[0]}
    m = build_measure(p)
    data["atom"] = None if m.atom is None else {"energy": m.atom.energy, "weight": m.atom.weight}
    tags = {"density": TAGS["density"], "phi": TAGS["phi"], "im_m": TAGS["im_m"], "m_limit": TAGS["m_limit"],
            "atom.energy": TAGS["atom_energy"], "atom.weight": TAGS["atom_weight"]}
    return {"meta": _meta(cfg, tags), "data": data}, EXIT_OK


def _load_grid_function(path: str) -> GridFunction:
    try:
        raw = np.genfromtxt(path, delimiter=",", names=True)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    names = raw.dtype.names or ()
    if "r" not in names or "value" not in names:
        raise UsageError("input CSV needs columns r,value[,weight]")
    r, v = np.atleast_1d(raw["r"]), np.atleast_1d(raw["value"])
    order = np.argsort(r)
    r, v = r[order], v[order]
    if "weight" in names:
        w = np.atleast_1d(raw["weight"])[order]
    else:
        g = np.diff(r)
        w = 0.5 * (np.concatenate([g, [0.0]]) + np.concatenate([[0.0], g]))
    if r.size < 2 or r[0] <= 0:
        raise UsageError("input needs at least two nodes with r > 0")
    return GridFunction((float(r[0]), float(r[-1])), r, w, v)


def cmd_transform(cfg: RunConfig) -> tuple[dict, int]:
    p = cfg.params
    psi = _load_grid_function(cfg.input) if cfg.input else PolyBump(*cfg.bump).grid()
    grid = EnergyGrid.build(cfg.e_max)
    tol = cfg.tolerances.get("quad_tol", 1e-12)
    phi_ = forward(p, psi, grid, tol=tol)
    rec = inverse(p, phi_, psi.nodes)
    data = {
        "spectral": {"E": phi_.e_nodes, "weight": phi_.e_weights, "density": density(p, phi_.e_nodes),
                     "forward": phi_.values},
        "radial": {"r": psi.nodes, "psi": psi.values, "inverse": rec},
        "atom": None if phi_.atom_coeff is None else {
            "energy": bound_state_energy(p), "weight": atom_weight(p), "coefficient": phi_.atom_coeff},
    }
    code = EXIT_OK
    if psi.func is not None:
        rep = parseval_report(p, psi, cfg.e_max, grid=grid, tol=tol)
        data["parseval"] = {"defect": rep.defect, "tail": rep.tail, "norm2": rep.norm2,
                            "spectral_norm2": rep.spectral_norm2}
        if rep.tail > cfg.tolerances.get("tail_tol", 1e-4):
            code = EXIT_INCONCLUSIVE
    data["roundtrip_sup"] = float(np.max(np.abs(rec - psi.values)))
    tags = {"forward": TAGS["forward"], "inverse": TAGS["inverse"], "density": TAGS["density"]}
    return {"meta": _meta(cfg, tags), "data": data}, code


def cmd_verify(cfg: RunConfig) -> tuple[dict, int]:
    vcfg = replace(VerifyConfig(), **cfg.tolerances)
    unknown = [n for n in cfg.only if n not in _check_names()]
    if unknown:
        raise UsageError(f"unknown checks {unknown}; known: {_check_names()}")
    results = []
    try:
        for res in run_all(vcfg, cfg.only or None):
            print(res.line(), file=sys.stderr)
            results.append(res)
    except InconclusiveTruncation as exc:
        print(f"inconclusive: {exc}", file=sys.stderr)
        code = EXIT_INCONCLUSIVE
    else:
        code = EXIT_OK if all(r.passed for r in results) else EXIT_NUMERIC
    data = {
        "check": [r.name for r in results], "passed": [r.passed for r in results],
        "measured": [r.measured for r in results], "threshold": [r.threshold for r in results],
        "seconds": [r.seconds for r in results],
        "details": {r.name: r.detail for r in results},
    }
    return {"meta": _meta(cfg, {}), "data": data}, code


def _check_names():
    from .verify import CHECKS

    return list(CHECKS)


# ---------------------------------------------------------------------------
# goldens


def golden_tables() -> dict[str, tuple[dict, dict]]:
    """Regression tables: ``name -> (columns, tags)``.  Inputs are fixed here."""
    kz = [(0.0, 0.0), (0.5, 4.0), (0.3, 2.0), (-0.7, 10.0), (0.95, 0.3), (1e-3, 50.0), (0.0, -3.0)]
    k, z = np.array(kz).T
    special = {"kappa": k, "zeta": z,
               "chi": np.array([chi(a, b) for a, b in kz]),
               "chi_dkappa": np.array([chi_dkappa(a, b) for a, b in kz]),
               "script_y": np.array([script_y(b) for b in z])}
    xs = [0.3, 1.7, 5.0, 30.0]
    h = np.array([hankel1(0.3, x) for x in xs])
    special_h = {"x": np.array(xs), "hankel1_re": h.real, "hankel1_im": h.imag}

    pts = [(0.0, math.pi / 2, 1.0, 1.0), (0.5, 0.3, 4.0, 0.5), (-0.3, 1.2, -2.0, 2.0),
           (1e-4, 2.0, 20.0, 0.05), (0.9, 0.1, 0.2, 3.0)]
    sol = {"kappa": [], "theta": [], "E": [], "r": [], "u": [], "u_dr": [], "w": [], "w_dr": [],
           "u_theta": [], "u_theta_dr": [], "v_re": [], "v_im": []}
    for kk, th, E, r in pts:
        p = ExtensionParams(kk, th)
        u, w, ut, v = eval_u(kk, E, r), eval_w(kk, E, r), eval_u_theta(p, E, r), eval_v(kk, complex(E), r)
        for key, val in (("kappa", kk), ("theta", th), ("E", E), ("r", r), ("u", u.value), ("u_dr", u.d_r),
                         ("w", w.value), ("w_dr", w.d_r), ("u_theta", ut.value), ("u_theta_dr", ut.d_r),
                         ("v_re", complex(v.value).real), ("v_im", complex(v.value).imag)):
            sol[key].append(float(val))

    mp = [(0.0, math.pi / 2), (0.5, math.pi / 2), (0.5, 0.3), (-0.3, 1.2), (1e-3, 1.0), (0.8, 2.9)]
    meas = {"kappa": [], "theta": [], "density_E0.5": [], "density_E7": [], "m_re": [], "m_im": [],
            "atom_energy": [], "atom_weight": []}
    for kk, th in mp:
        p = ExtensionParams(kk, th)
        m = complex(m_function(p, 2.0 + 1.0j))
        eb = bound_state_energy(p)
        for key, val in (("kappa", kk), ("theta", th), ("density_E0.5", density(p, 0.5)),
                         ("density_E7", density(p, 7.0)), ("m_re", m.real), ("m_im", m.imag),
                         ("atom_energy", math.nan if eb is None else eb),
                         ("atom_weight", math.nan if eb is None else atom_weight(p))):
            meas[key].append(float(val))

    return {
        "special_functions": (special, {c: TAGS[c] for c in ("chi", "chi_dkappa", "script_y")}),
        "hankel": (special_h, {"hankel1": TAGS["hankel1"] + ",  order 0.3"}),
        "solutions": (sol, {"u": TAGS["u"], "w": TAGS["w"], "u_theta": TAGS["u_theta"], "v": TAGS["v"]}),
        "measures": (meas, {"density": TAGS["density"], "m": TAGS["m"] + " at z = 2 + i",
                            "atom_energy": TAGS["atom_energy"], "atom_weight": TAGS["atom_weight"]}),
    }


def cmd_table(cfg: RunConfig) -> tuple[dict, int]:
    d = Path(cfg.goldens_dir)
    rtol = cfg.tolerances.get("rtol", 1e-12)
    atol = cfg.tolerances.get("atol", 1e-14)
    diffs = {}
    for name, (cols, tags) in golden_tables().items():
        payload = {"meta": {"version": __version__, "paper_tags": tags,
                            "provenance": "isq-spectral table --seed-goldens"},
                   "data": {k: np.asarray(v) for k, v in cols.items()}}
        path = d / f"{name}.json"
        if cfg.seed_goldens:
            d.mkdir(parents=True, exist_ok=True)
            path.write_text(render(payload, "json")[""])
            continue
        if not path.exists():
            raise UsageError(f"missing golden {path}; run with --seed-goldens")
        ref = json.loads(path.read_text())["data"]
        for col, vals in cols.items():
            new = np.asarray(vals, dtype=float)
            old = np.array([float(x) for x in ref.get(col, [])])
            if old.shape != new.shape:
                diffs[f"{name}.{col}"] = "shape mismatch"
                continue
            bad = ~((np.isnan(old) & np.isnan(new)) | np.isclose(new, old, rtol=rtol, atol=atol))
            if np.any(bad):
                diffs[f"{name}.{col}"] = float(np.max(np.abs(new[bad] - old[bad])))
    data = {"goldens_dir": str(d), "seeded": cfg.seed_goldens, "diffs": diffs}
    return {"meta": _meta(cfg, {}), "data": data}, EXIT_NUMERIC if diffs else EXIT_OK


HANDLERS = {"eval": cmd_eval, "measure": cmd_measure, "transform": cmd_transform,
            "verify": cmd_verify, "table": cmd_table}


def run(cfg: RunConfig) -> int:
    payload, code = HANDLERS[cfg.command](cfg)
    emit(payload, cfg)
    return code


def main(argv=None) -> int:
    try:
        cfg = config_from_args(sys.argv[1:] if argv is None else argv)
        return run(cfg)
    except UsageError as exc:
        print(json.dumps({"error": "usage", "message": str(exc)}), file=sys.stderr)
        return EXIT_USAGE
    except InconclusiveTruncation as exc:
        print(json.dumps({"error": "inconclusive", "message": str(exc), "tail": exc.tail}), file=sys.stderr)
        return EXIT_INCONCLUSIVE
    except DomainError as exc:
        print(json.dumps({"error": "validation", "message": str(exc)}), file=sys.stderr)
        return EXIT_USAGE
    except SpectralError as exc:
        print(json.dumps({"error": "numerical", "message": str(exc)}), file=sys.stderr)
        return EXIT_NUMERIC


if __name__ == "__main__":
    sys.exit(main())
