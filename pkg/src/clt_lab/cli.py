"""Command-line entry point: one subcommand per computed quantity.

Exit codes: 0 success, 2 input error, 3 scale/limit error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import asdict, dataclass
from enum import Enum
from fractions import Fraction
from pathlib import Path

from ._parallel import pmap
from . import asymptotics, convolution, deviation, extremal, gamma_family, vonmises
from .errors import CltLabError, InputError
from .law import Law, lattice_span, make_law, min_gap, moments

CONVERGE_HEADER = [
    "n",
    "d_kolm",
    "d_interval",
    "sqrtn_d_kolm",
    "sqrtn_d_interval",
    "limit_kolm",
    "limit_interval",
]


class LawFileError(InputError):
    pass


@dataclass
class RunConfig:
    command: str
    law_path: Path | None = None
    n: int = 64
    n_start: int = 4
    n_factor: int = 2
    steps: int = 11
    s: int | None = None
    x: float | None = None
    objective: str = "interval"
    mode: str = "two-point"
    k: int = 4
    restarts: int = 32
    seed: int = 0
    grid_size: int = 10_000
    out_path: Path | None = None
    exact: bool = False

    def __post_init__(self):
        if self.n_factor < 2:
            raise InputError("--n-factor must be >= 2")
        if self.steps < 1:
            raise InputError("--steps must be >= 1")
        if self.n < 1 or self.n_start < 1:
            raise InputError("n must be >= 1")


# ---------------------------------------------------------------- law files

def _parse_number(raw, what: str) -> Fraction:
    if isinstance(raw, bool) or not isinstance(raw, (str, int, float)):
        raise LawFileError(f"{what}: expected a rational or decimal string, got {raw!r}")
    try:
        return Fraction(str(raw).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise LawFileError(f"{what}: cannot parse {raw!r}") from exc


def parse_law_document(text: str) -> Law:
    """Parse ``{"atoms": [{"x": "...", "p": "..."}, ...]}``; unknown keys are rejected."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise LawFileError(f"law file is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict) or set(doc) != {"atoms"}:
        raise LawFileError('law file must be an object with the single key "atoms"')
    atoms = doc["atoms"]
    if not isinstance(atoms, list):
        raise LawFileError('"atoms" must be a list')
    pairs = []
    for i, atom in enumerate(atoms):
        if not isinstance(atom, dict) or set(atom) != {"x", "p"}:
            raise LawFileError(f'atom {i} must have exactly the keys "x" and "p"')
        pairs.append((_parse_number(atom["x"], f"atom {i} x"), _parse_number(atom["p"], f"atom {i} p")))
    return make_law(pairs)


def dump_law_document(law: Law) -> str:
    masses = law.exact_masses or law.masses
    atoms = [{"x": str(x), "p": str(p) if isinstance(p, Fraction) else repr(p)} for x, p in zip(law.positions, masses)]
    return json.dumps({"atoms": atoms})


def load_law(path: Path | None) -> Law:
    if path is None:
        raise LawFileError("this command needs a law file")
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise LawFileError(f"cannot read {path}: {exc}") from exc
    return parse_law_document(text)


# ---------------------------------------------------------------- helpers

def fmt(v: float) -> str:
    return f"{v:.15g}"


def _n_values(cfg: RunConfig) -> list[int]:
    return [cfg.n_start * cfg.n_factor**i for i in range(cfg.steps)]


def converge_rows(law: Law, ns: list[int]) -> list[list[float]]:
    lim_k = asymptotics.kolmogorov_limit(law)
    lim_i = asymptotics.interval_limit(law).value

    def row(n):
        d_k, d_i = deviation.distances(convolution.standardized_sum(law, n))
        r = math.sqrt(n)
        return [n, d_k, d_i, r * d_k, r * d_i, lim_k, lim_i]

    return pmap(row, ns)


def gamma_rows(ns: list[int]) -> list[list[float]]:
    lim_k = asymptotics.kolmogorov_limit_params(0.0, gamma_family.EXP_SIGMA, gamma_family.EXP_ALPHA)
    lim_i = asymptotics.interval_limit_params(0.0, gamma_family.EXP_SIGMA, gamma_family.EXP_ALPHA).value
    rows = []
    for n in ns:
        ext = gamma_family.smooth_deviation_extrema(n)
        d_k, d_i = max(ext.sup_dev, -ext.inf_dev), ext.sup_dev - ext.inf_dev
        r = math.sqrt(n)
        rows.append([n, d_k, d_i, r * d_k, r * d_i, lim_k, lim_i])
    return rows


def rows_to_csv(rows: list[list[float]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CONVERGE_HEADER)
    for r in rows:
        w.writerow([str(int(r[0]))] + [fmt(v) for v in r[1:]])
    return buf.getvalue()


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, Enum):
        return obj.value
    return obj


# ---------------------------------------------------------------- commands

def cmd_moments(cfg):
    law = load_law(cfg.law_path)
    m = moments(law)
    out = {"mu": m.mu, "sigma2": m.sigma2, "sigma": m.sigma, "alpha": m.alpha, "beta": m.beta}
    if len(law) > 1:
        out["h"] = lattice_span(law)
        out["min_gap"] = min_gap(law)
    lines = [f"{k:8s} {fmt(v) if isinstance(v, float) else v}" for k, v in out.items() if k != "beta"]
    lines += [f"beta_{s:<3d} {fmt(b)}" for s, b in m.beta.items()]
    return "\n".join(lines), out, None


def cmd_span(cfg):
    law = load_law(cfg.law_path)
    h, g = lattice_span(law), min_gap(law)
    return f"h        {h}\nmin_gap  {g}", {"h": h, "min_gap": g}, None


def cmd_distance(cfg):
    law = load_law(cfg.law_path)
    m = moments(law)
    if cfg.exact:
        sum_pmf = convolution.exact_convolve_oracle(law, cfg.n)
    else:
        sum_pmf = convolution.self_convolve(law, cfg.n)
    pmf = convolution.standardize(sum_pmf, m)
    ext = deviation.deviation_extrema(pmf)
    d_k, d_i = max(ext.sup_dev, -ext.inf_dev), ext.sup_dev - ext.inf_dev
    r = math.sqrt(cfg.n)
    out = {
        "n": cfg.n,
        "exact_convolution": cfg.exact,
        "atoms": len(pmf),
        "sup_dev": ext.sup_dev,
        "inf_dev": ext.inf_dev,
        "arg_sup": ext.arg_sup,
        "arg_inf": ext.arg_inf,
        "d_kolm": d_k,
        "d_interval": d_i,
        "sqrtn_d_kolm": r * d_k,
        "sqrtn_d_interval": r * d_i,
    }
    text = "\n".join(f"{k:17s} {fmt(v) if isinstance(v, float) else v}" for k, v in out.items())
    return text, out, None


def cmd_converge(cfg):
    law = load_law(cfg.law_path)
    rows = converge_rows(law, _n_values(cfg))
    text = rows_to_csv(rows)
    return text.rstrip("\n"), None, text


def cmd_gamma_converge(cfg):
    rows = gamma_rows(_n_values(cfg))
    text = rows_to_csv(rows)
    return text.rstrip("\n"), None, text


def cmd_limit(cfg):
    law = load_law(cfg.law_path)
    rep = asymptotics.interval_limit(law)
    out = {
        "branch": rep.branch.value,
        "limit_interval": rep.value,
        "h_term": rep.h_term,
        "alpha_term": rep.alpha_term,
        "exp_term": rep.exp_term,
        "y0": rep.y0,
        "limit_kolm": asymptotics.kolmogorov_limit(law),
        "objective_interval": extremal.interval_objective(law),
        "objective_kolm": extremal.kolmogorov_objective(law),
        "profile_argmax": asymptotics.profile_argmax(law),
    }
    text = "\n".join(f"{k:19s} {fmt(v) if isinstance(v, float) else v}" for k, v in out.items())
    return text, out, None


def cmd_edgeworth(cfg):
    law = load_law(cfg.law_path)
    res = asymptotics.expansion_residual_sup(law, cfg.n)
    out = {"n": cfg.n, "residual_sup": res, "sqrtn_residual_sup": math.sqrt(cfg.n) * res}
    if cfg.x is not None:
        out["x"] = cfg.x
        out["psi_n"] = asymptotics.psi_n(law, cfg.n, cfg.x)
        out["edgeworth_cdf"] = asymptotics.edgeworth_cdf(law, cfg.n, cfg.x)
    text = "\n".join(f"{k:19s} {fmt(v) if isinstance(v, float) else v}" for k, v in out.items())
    return text, out, None


def cmd_vonmises(cfg):
    law = load_law(cfg.law_path)
    ss = [cfg.s] if cfg.s is not None else [1, 2, 3]
    reports = [vonmises.vonmises_check(law, s) for s in ss]
    lines = ["s  eta        lhs                 rhs                 holds equality predicted"]
    for r in reports:
        lines.append(
            f"{r.s}  {str(r.eta):10s} {fmt(r.lhs):19s} {fmt(r.rhs):19s} {r.holds!s:5s} {r.equality!s:8s} {r.predicted_equality}"
        )
    convex = vonmises.log_moment_convexity(law)
    pair = vonmises.pair_identity_check(law) if len(law) > 1 else True
    lines.append(f"log-moment convexity: {convex}")
    lines.append(f"pair identity:        {pair}")
    out = {"reports": [asdict(r) for r in reports], "log_moment_convexity": convex, "pair_identity": pair}
    return "\n".join(lines), out, None


def cmd_extremal(cfg):
    mode = cfg.mode.replace("-", "_")
    if mode == "two_point":
        res = extremal.two_point_scan(cfg.objective, cfg.grid_size)
    else:
        res = extremal.search_k_atoms(cfg.k, mode, cfg.objective, cfg.restarts, cfg.seed)
    law = res.best_law
    out = {
        "objective": res.objective_kind.value,
        "mode": res.mode.value,
        "value": res.objective_value,
        "t_star": res.t_star,
        "law": json.loads(dump_law_document(law)),
        "iterations": len(res.trace),
    }
    lines = [f"objective  {out['objective']}", f"mode       {out['mode']}", f"value      {fmt(res.objective_value)}"]
    if res.t_star is not None:
        lines.append(f"t*         {fmt(res.t_star)}")
    lines.append("law        " + ", ".join(f"{x}: {p:.6g}" for x, p in zip(law.positions, law.masses)))
    return "\n".join(lines), out, None


def cmd_constants(cfg):
    c = asymptotics.constants()
    out = asdict(c)
    return "\n".join(f"{k:19s} {fmt(v)}" for k, v in out.items()), out, None


COMMANDS = {
    "moments": cmd_moments,
    "span": cmd_span,
    "distance": cmd_distance,
    "converge": cmd_converge,
    "limit": cmd_limit,
    "edgeworth": cmd_edgeworth,
    "vonmises": cmd_vonmises,
    "extremal": cmd_extremal,
    "gamma-converge": cmd_gamma_converge,
    "constants": cmd_constants,
}


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        text, data, raw = COMMANDS[cfg.command](cfg)
    except CltLabError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=stderr)
        return exc.exit_code
    except ValueError as exc:
        # argument-range checks inside the modules
        print(f"error: {exc}", file=stderr)
        return InputError.exit_code
    print(text, file=stdout)
    if cfg.out_path is not None:
        payload = raw if raw is not None else json.dumps(_jsonable(data), indent=2) + "\n"
        with open(cfg.out_path, "w", newline="") as fh:
            fh.write(payload)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="clt-lab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, law=True, help=None):
        sp = sub.add_parser(name, help=help)
        if law:
            sp.add_argument("law_path", type=Path, metavar="LAW", help="law file (JSON)")
        sp.add_argument("--out", dest="out_path", type=Path, default=None)
        return sp

    add("moments", help="moments, span and minimal gap of a law")
    add("span", help="lattice span and minimal atom gap")
    sp = add("distance", help="Kolmogorov and interval distance of P_n to N(0,1)")
    sp.add_argument("--n", type=int, default=64)
    sp.add_argument("--exact", action="store_true", help="use exact rational convolution (n <= 64)")
    for name in ("converge", "gamma-converge"):
        sp = add(name, law=name == "converge", help="sqrt(n)-scaled distances along n = n_start * n_factor^i")
        sp.add_argument("--n-start", type=int, default=4)
        sp.add_argument("--n-factor", type=int, default=2)
        sp.add_argument("--steps", type=int, default=11)
    add("limit", help="asymptotic limits, branch and objectives")
    sp = add("edgeworth", help="sup residual of the one-term expansion")
    sp.add_argument("--n", type=int, default=64)
    sp.add_argument("--x", type=float, default=None)
    sp = add("vonmises", help="von Mises inequality checks")
    sp.add_argument("--s", type=int, default=None)
    sp = add("extremal", law=False, help="search for extremal laws")
    sp.add_argument("--objective", choices=["interval", "kolmogorov"], default="interval")
    sp.add_argument("--mode", choices=["two-point", "lattice", "continuous-h0"], default="two-point")
    sp.add_argument("--k", type=int, default=4)
    sp.add_argument("--restarts", type=int, default=32)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--grid-size", type=int, default=10_000)
    add("constants", law=False, help="named constants")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = RunConfig(**vars(args))
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
