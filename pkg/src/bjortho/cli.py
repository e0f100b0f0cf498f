"""Command-line front end.

Exit codes: 0 orthogonal/pass, 1 not orthogonal/fail, 2 indeterminate,
3 usage or configuration error.  Every command prints a human summary;
``--json PATH`` also writes the full report, and the summary is always
rendered from that report so the two cannot drift apart.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .admissible import AdmissibleSpec, discretize_symmetrized
from .numerics import Verdict, default_band
from .operators import (
    DEFAULT_MESH,
    LinearOperator,
    ZeroSeminormError,
    bhatia_semrl_orthogonal,
    induced_seminorm,
    op_orthogonal_characterization,
    op_orthogonal_definition,
    sain_orthogonal,
)
from .ortho import (
    OrthoSpaceSpec,
    UnsupportedNormError,
    bj_orthogonal,
    is_smooth_point,
    ortho_space_orthogonal,
    supporting_functionals,
)
from .spaces import (
    DimensionError,
    Euclidean,
    Lp,
    SemiNormFamily,
    family_from_json,
    is_norm_spec,
    norm_from_json,
    spec_to_json,
)
from .verify import CSV_HEADER, AgreementReport, CheckConfig, TheoremId, reproduce_counterexamples, run_check

EXIT_CODES = {Verdict.ORTHOGONAL: 0, Verdict.NOT_ORTHOGONAL: 1, Verdict.INDETERMINATE: 2}
EXIT_USAGE = 3
ROUTES = ("definition", "characterization", "bhatia-semrl", "sain")


class UsageError(Exception):
    """Bad arguments or configuration; maps to exit code 3."""


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


# -- input parsing -------------------------------------------------------------


def _loads(text: str, origin: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"{origin}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _load_file(path: str):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return _loads(text, path)


def _vector(text: str, name: str) -> np.ndarray:
    obj = _loads(text, f"--{name}")
    try:
        v = np.asarray(obj, dtype=float)
    except (TypeError, ValueError):
        raise UsageError(f"--{name} must be a JSON array of numbers") from None
    if v.ndim != 1:
        raise UsageError(f"--{name} must be a flat JSON array")
    return v


def _operator(path: str) -> np.ndarray:
    obj = _load_file(path)
    if isinstance(obj, dict):
        return np.asarray(LinearOperator.from_json(obj).entries)
    m = np.asarray(obj, dtype=float)
    if m.ndim != 2:
        raise UsageError(f"{path}: operator must be a matrix")
    return m


def _space(path: str) -> OrthoSpaceSpec:
    """A bare norm, or ``{"norm": ..., "admissible": ...}``."""
    obj = _load_file(path)
    if "kind" in obj:
        return OrthoSpaceSpec(norm_from_json(obj))
    norm = norm_from_json(obj["norm"])
    adm = AdmissibleSpec.from_json(obj["admissible"]) if obj.get("admissible") else None
    return OrthoSpaceSpec(norm, obj.get("family", "UnitDualSphere"), adm)


def _family(path: str | None) -> SemiNormFamily:
    return SemiNormFamily([Euclidean()]) if path is None else family_from_json(_load_file(path))


def _admissible(path: str | None) -> AdmissibleSpec:
    return AdmissibleSpec() if path is None else AdmissibleSpec.from_json(_load_file(path))


# -- rendering -----------------------------------------------------------------


def _fmt_state(name: str, st: dict) -> str:
    return f"  {name}: {st['verdict']} (margin {st['margin']:.3e})"


def render(report: dict) -> str:
    """Human summary of a command report; a pure function of the JSON."""
    cmd = report["command"]
    lines = []
    if cmd == "check":
        lines.append(f"check x={report['x']} y={report['y']}: {report['result']['verdict']}")
        lines.append(_fmt_state("orthogonality space", report["result"]))
        lines.append(_fmt_state("Birkhoff-James", report["bj"]))
    elif cmd == "op-check":
        lines.append(f"op-check: {report['outcome']}")
        for name, st in report["routes"].items():
            lines.append(_fmt_state(name, st))
        if report.get("disagreement"):
            lines.append("  routes disagree: " + ", ".join(f"{k}={v}" for k, v in report["disagreement"].items()))
    elif cmd == "op-norm":
        lines.append(f"P(T) = {report['P']:.12g}")
        lines.append(f"  attainment pairs: {len(report['attainment'])} (band {report['tol_band']:.1e})")
        if report.get("spectral") is not None:
            lines.append(f"  spectral norm: {report['spectral']:.12g}")
    elif cmd == "smoothness":
        word = "smooth" if report["smooth"] else "not smooth"
        lines.append(f"x={report['x']} is {word}: {len(report['support'])} extreme supporting functional(s)")
        for f in report["support"]:
            lines.append(f"  f = {f}")
    elif cmd == "verify":
        rep = AgreementReport.from_json(report["report"])
        lines.append(rep.summary())
        lines.append(f"  {CSV_HEADER}")
        lines.append(f"  {rep.csv_line()}")
        for d in rep.disagreements[:5]:
            lines.append(f"  disagreement at index {d['index']}: {json.dumps(d['verdicts'], sort_keys=True)}")
    elif cmd == "fixtures":
        for f in report["fixtures"]:
            lines.append(f"{'PASS' if f['passed'] else 'FAIL'} {f['name']}")
    else:
        raise ValueError(f"unknown report command {cmd!r}")
    return "\n".join(lines)


# -- commands ------------------------------------------------------------------


def _cmd_check(args) -> tuple[dict, int]:
    x, y = _vector(args.x, "x"), _vector(args.y, "y")
    space = _space(args.space)
    band = default_band()
    res = ortho_space_orthogonal(x, y, space, band)
    bj = bj_orthogonal(x, y, space.norm, band)
    report = {"command": "check", "x": x.tolist(), "y": y.tolist(), "result": res.to_json(), "bj": bj.to_json()}
    return report, EXIT_CODES[res.verdict]


def _route_results(args, T, A) -> dict:
    band = default_band()
    family = _family(args.family)
    adm = _admissible(args.admissible)
    wanted = ROUTES if args.route == "all" else (args.route,)
    single_norm = len(family) == 1 and not adm.overrides and is_norm_spec(family[0])
    euclid = single_norm and all(
        isinstance(n, Euclidean) or (isinstance(n, Lp) and n.p == 2.0) for n in (family[0], adm.base_norm)
    )
    sample = discretize_symmetrized(adm, args.mesh, T.shape[1])
    out = {}
    for route in wanted:
        if route == "definition":
            out[route] = op_orthogonal_definition(T, A, family, sample, band)
        elif route == "characterization":
            out[route] = op_orthogonal_characterization(T, A, family, sample, band).verdict
        elif route == "bhatia-semrl":
            if euclid:
                out[route] = bhatia_semrl_orthogonal(T, A, band)
            elif args.route != "all":
                raise UsageError("bhatia-semrl needs the Euclidean family over the Euclidean sphere")
        elif route == "sain":
            if single_norm:
                out[route] = sain_orthogonal(T, A, adm.base_norm, family[0], band=band, sample=sample).verdict
            elif args.route != "all":
                raise UsageError("sain needs a single-norm family over an unscaled unit sphere")
    return out


def _cmd_op_check(args) -> tuple[dict, int]:
    T, A = _operator(args.T), _operator(args.A)
    if T.shape != A.shape:
        raise UsageError(f"T has shape {T.shape} but A has shape {A.shape}")
    routes = _route_results(args, T, A)
    decided = {k: v.verdict.value for k, v in routes.items() if not v.indeterminate}
    report = {"command": "op-check", "routes": {k: v.to_json() for k, v in routes.items()}}
    if len(set(decided.values())) > 1:
        report["outcome"] = "disagreement"
        report["disagreement"] = decided
        return report, 1
    if decided:
        verdict = Verdict(next(iter(decided.values())))
        if len(decided) < len(routes):
            verdict = Verdict.INDETERMINATE
    else:
        verdict = Verdict.INDETERMINATE
    report["outcome"] = verdict.value
    return report, EXIT_CODES[verdict]


def _cmd_op_norm(args) -> tuple[dict, int]:
    T = _operator(args.T)
    family = _family(args.family)
    adm = _admissible(args.admissible)
    sample = discretize_symmetrized(adm, args.mesh, T.shape[1])
    res = induced_seminorm(T, family, sample, refine=not args.no_refine)
    report = {"command": "op-norm", **res.to_json(), "spectral": None}
    if args.family is None and args.admissible is None:
        report["spectral"] = float(np.linalg.norm(T, 2))
    return report, 0


def _cmd_smoothness(args) -> tuple[dict, int]:
    x = _vector(args.x, "x")
    norm = norm_from_json(_load_file(args.norm))
    support = supporting_functionals(x, norm)
    smooth = is_smooth_point(x, norm)
    report = {
        "command": "smoothness",
        "x": x.tolist(),
        "norm": spec_to_json(norm),
        "smooth": smooth,
        "support": support.extremes.tolist(),
    }
    return report, 0 if smooth else 1


def _cmd_verify(args) -> tuple[dict, int]:
    try:
        theorem = TheoremId.parse(args.theorem)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    config = CheckConfig.from_json(_load_file(args.config)) if args.config else CheckConfig()
    rep = run_check(theorem, config, args.count, args.seed, workers=args.workers)
    if args.csv:
        path = Path(args.csv)
        fresh = not path.exists() or path.stat().st_size == 0
        with path.open("a") as fh:
            if fresh:
                fh.write(CSV_HEADER + "\n")
            fh.write(rep.csv_line() + "\n")
    return {"command": "verify", "report": rep.to_json()}, 0 if rep.passed else 1


def _cmd_fixtures(args) -> tuple[dict, int]:
    results = reproduce_counterexamples()
    report = {"command": "fixtures", "fixtures": [r.to_json() for r in results]}
    return report, 0 if all(r.passed for r in results) else 1


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="bjortho", description="Birkhoff-James orthogonality checks.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def with_json(p):
        p.add_argument("--json", metavar="PATH", help="write the full report as JSON")
        return p

    p = with_json(sub.add_parser("check", help="orthogonality of two vectors in a space"))
    p.add_argument("--x", required=True, help="JSON array")
    p.add_argument("--y", required=True, help="JSON array")
    p.add_argument("--space", required=True, help="norm or space JSON file")
    p.set_defaults(func=_cmd_check)

    def operator_args(p):
        p.add_argument("--family", help="semi-norm family JSON file (default: Euclidean)")
        p.add_argument("--admissible", help="admissible set JSON file (default: Euclidean sphere)")
        p.add_argument("--mesh", type=float, default=DEFAULT_MESH)

    p = with_json(sub.add_parser("op-check", help="orthogonality of two operators"))
    p.add_argument("--T", required=True, help="operator JSON file")
    p.add_argument("--A", required=True, help="operator JSON file")
    p.add_argument("--route", choices=(*ROUTES, "all"), default="all")
    operator_args(p)
    p.set_defaults(func=_cmd_op_check)

    p = with_json(sub.add_parser("op-norm", help="induced semi-norm of an operator"))
    p.add_argument("--T", required=True, help="operator JSON file")
    p.add_argument("--no-refine", action="store_true", help="report the raw sampled maximum")
    operator_args(p)
    p.set_defaults(func=_cmd_op_norm)

    p = with_json(sub.add_parser("smoothness", help="supporting functionals at a point"))
    p.add_argument("--x", required=True, help="JSON array")
    p.add_argument("--norm", required=True, help="norm JSON file")
    p.set_defaults(func=_cmd_smoothness)

    p = with_json(sub.add_parser("verify", help="randomised cross-check of one theorem"))
    p.add_argument("--theorem", required=True, help="e.g. T3_7 or T3_7_characterization")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--config", help="check config JSON file")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--csv", metavar="PATH", help="append the one-line summary to a CSV file")
    p.set_defaults(func=_cmd_verify)

    p = with_json(sub.add_parser("fixtures", help="replay the pinned counterexamples"))
    p.set_defaults(func=_cmd_fixtures)
    return parser


def run(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "count", 1) < 1:
            raise UsageError("--count must be >= 1")
        report, code = args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KeyError as exc:
        print(f"error: missing config field {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DimensionError, ZeroSeminormError, UnsupportedNormError, TypeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if args.json:
        Path(args.json).write_text(json.dumps(report, indent=2))
    print(render(report))
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
