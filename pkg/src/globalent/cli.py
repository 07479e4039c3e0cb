"""Command-line entry point: ``globalent measure|tangle|check|zoo``."""
from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

import numpy as np

from . import zoo
from .checks import run_suite
from .linalg import DensityMatrix, InvariantError, PureState
from .mixed import BoundOptions, global_lower_bound
from .pure import global_entanglement
from .tangles import four_partite_audit, tangle_mixed_focus, three_tangle

EXIT_OK, EXIT_STATE, EXIT_ZOO, EXIT_STRUCTURE, EXIT_PROPERTY = 0, 2, 3, 4, 5

# reference values for the bound-entangled benchmarks, with the
# acceptance half-width; larger values are better lower bounds
REFERENCES = {"upb-shifts": (0.1434, 2e-3), "dct": (0.2158, 2e-3)}


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _complex_list(data, what: str) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.shape[-1:] != (2,):
        raise CliError(EXIT_STATE, f"{what}: complex entries must be [re, im] pairs")
    return arr[..., 0] + 1j * arr[..., 1]


def load_state_file(path: str | Path, renormalize: bool = False) -> PureState | DensityMatrix:
    """Parse a JSON state file ``{"dims": [...], "kind": "pure"|"density", "data": ...}``."""
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, UnicodeDecodeError, json.JSONDecodeError) as exc:
        raise CliError(EXIT_STATE, f"cannot read state file {path}: {exc}") from None
    if not isinstance(doc, dict) or not {"dims", "kind", "data"} <= doc.keys():
        raise CliError(EXIT_STATE, "state file needs keys 'dims', 'kind', 'data'")
    dims = doc["dims"]
    if not isinstance(dims, list) or not all(isinstance(d, int) for d in dims):
        raise CliError(EXIT_STATE, "'dims' must be a list of integers")
    try:
        if doc["kind"] == "pure":
            return PureState.from_vector(dims, _complex_list(doc["data"], "data"), renormalize)
        if doc["kind"] == "density":
            return DensityMatrix.from_matrix(dims, _complex_list(doc["data"], "data"), renormalize)
    except InvariantError as exc:
        raise CliError(EXIT_STATE, f"invalid state: invariant '{exc.invariant}' violated, "
                                   f"defect {exc.defect:.3e}") from None
    except ValueError as exc:
        raise CliError(EXIT_STATE, f"invalid state data: {exc}") from None
    raise CliError(EXIT_STATE, f"unknown kind {doc['kind']!r}; expected 'pure' or 'density'")


def _parse_params(items) -> dict[str, str]:
    out = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise CliError(EXIT_ZOO, f"--param expects k=v, got {item!r}")
        out[key.strip()] = value.strip()
    return out


def _source(args):
    """Returns (state, family or None, params, notes)."""
    if bool(args.state) == bool(args.zoo):
        raise CliError(EXIT_STATE if args.state else EXIT_ZOO, "give exactly one of --state or --zoo")
    if args.state:
        return load_state_file(args.state, args.renormalize), None, {}, []
    params = _parse_params(args.param)
    try:
        state = zoo.build(args.zoo, **params)
    except (KeyError, ValueError, TypeError) as exc:
        raise CliError(EXIT_ZOO, f"bad zoo spec: {exc.args[0] if exc.args else exc}") from None
    family = args.zoo.replace("_", "-")
    notes = [zoo.FAMILIES[family].note] if zoo.FAMILIES[family].note else []
    return state, family, params, notes


def _opts(args) -> BoundOptions:
    return BoundOptions(restarts=args.restarts, seed=args.seed, tol=args.tol)


def _num(x: float) -> float:
    x = float(x)
    if not math.isfinite(x):
        raise CliError(EXIT_STRUCTURE, "non-finite number in report")
    return x


def _reference_verdict(family, params, value):
    if family not in REFERENCES or params:
        return None
    ref, half = REFERENCES[family]
    if value > ref + half:
        status = "improved"
    elif value >= ref - half:
        status = "within"
    else:
        status = "below"
    return {"reference": ref, "half_width": half, "status": status}


def cmd_measure(args, out) -> int:
    state, family, params, notes = _source(args)
    report: dict = {"dims": list(state.dims), "notes": notes}
    if isinstance(state, PureState):
        rep = global_entanglement(state)
        report.update(kind="pure", value=_num(rep.value), value_vector_formula=_num(rep.value_vector_formula),
                      value_purity_formula=_num(rep.value_purity_formula), num=rep.num,
                      fully_separable=rep.value <= args.sep_tol,
                      partitions=[{"left": list(p.left), "right": list(p.right), "label": p.label(),
                                   "squared_concurrence": _num(c)} for p, c in rep.per_partition])
    else:
        res = global_lower_bound(state, _opts(args))
        report.update(kind="density", value=_num(res.value), raw_objective=_num(res.raw_objective),
                      restarts=res.restarts_used, seed=args.seed, converged=res.converged,
                      best_z=[[_num(z.real), _num(z.imag)] for z in res.best_z])
        verdict = _reference_verdict(family, params, res.value)
        if verdict:
            report["reference"] = verdict
    if args.json:
        out.write(json.dumps(report, sort_keys=True) + "\n")
        return EXIT_OK
    for note in notes:
        out.write(f"note: {note}\n")
    out.write(f"dims: {report['dims']}\n")
    if report["kind"] == "pure":
        out.write(f"global entanglement (purity formula): {report['value_purity_formula']:.4f}\n")
        out.write(f"global entanglement (vector formula): {report['value_vector_formula']:.4f}\n")
        out.write(f"bipartitions: {report['num']}\n")
        out.write(f"{'partition':<12} {'C^2':>8}\n")
        for p in report["partitions"]:
            out.write(f"{p['label']:<12} {p['squared_concurrence']:>8.4f}\n")
        out.write(f"fully separable: {'yes' if report['fully_separable'] else 'no'}\n")
    else:
        out.write(f"lower bound: {report['value']:.4f}\n")
        out.write(f"raw objective: {report['raw_objective']:.4f}\n")
        out.write(f"restarts: {report['restarts']} (seed {report['seed']})\n")
        out.write(f"converged: {'yes' if report['converged'] else 'no'}\n")
        ref = report.get("reference")
        if ref:
            msg = {"improved": "IMPROVED lower bound, above the reference window",
                   "within": "within the reference window",
                   "below": "BELOW the reference window"}[ref["status"]]
            out.write(f"reference {ref['reference']:.4f} +/- {ref['half_width']:g}: {msg}\n")
    return EXIT_OK


def _tangle_dict(r) -> dict:
    return {"focus": r.focus, "grouping": r.grouping, "lhs": _num(r.lhs), "lhs_exact": r.lhs_exact,
            "residual": _num(r.residual),
            "components": [{"name": c.name, "value": _num(c.value), "exact": c.exact} for c in r.components]}


def cmd_tangle(args, out) -> int:
    state, _, _, notes = _source(args)
    n = state.dims.n
    if n == 3:
        if args.focus in (None, "all"):
            foci = [0, 1, 2]
        else:
            try:
                foci = [int(args.focus) if args.focus.isdigit() else "ABC".index(args.focus.upper())]
            except ValueError:
                raise CliError(EXIT_STRUCTURE, f"bad --focus {args.focus!r} for a tripartite state") from None
        if isinstance(state, PureState) and tuple(state.dims) == (2, 2, 2):
            reports = [three_tangle(state, f) for f in foci]
        else:
            rho = state.projector() if isinstance(state, PureState) else state
            reports = [tangle_mixed_focus(rho, f, _opts(args)) for f in foci]
    elif n == 4 and isinstance(state, PureState):
        reports = four_partite_audit(state, _opts(args))
        if args.focus not in (None, "all"):
            want = args.focus.upper().strip("()")
            reports = [r for r in reports if r.focus.strip("()") == want]
            if not reports:
                raise CliError(EXIT_STRUCTURE, f"no grouping with focus {args.focus!r}")
    else:
        raise CliError(EXIT_STRUCTURE, "tangle supports tripartite states and four-party pure states")
    if args.json:
        out.write(json.dumps({"dims": list(state.dims), "notes": notes,
                              "reports": [_tangle_dict(r) for r in reports]}, sort_keys=True) + "\n")
        return EXIT_OK
    for note in notes:
        out.write(f"note: {note}\n")
    for r in reports:
        out.write(f"{r.grouping or r.focus}: lhs {r.lhs:.4f}{'' if r.lhs_exact else ' (lower bound)'}\n")
        for c in r.components:
            out.write(f"  {c.name:<14} {c.value:>8.4f}  {'exact' if c.exact else 'lower-bound'}\n")
        out.write(f"  residual       {r.residual:>8.4f}\n")
    return EXIT_OK


def cmd_check(args, out) -> int:
    try:
        results = run_suite(args.suite, args.trials, args.seed)
    except KeyError as exc:
        raise CliError(EXIT_STRUCTURE, str(exc)) from None
    if args.json:
        out.write(json.dumps([{"name": r.name, "passed": r.passed, "worst": _num(r.worst),
                               "threshold": _num(r.threshold), "trials": r.trials, "detail": r.detail}
                              for r in results], sort_keys=True) + "\n")
    else:
        for r in results:
            out.write(f"{'PASS' if r.passed else 'FAIL'} {r.name:<12} worst {r.worst:.3e} "
                      f"(threshold {r.threshold:.1e}, {r.trials} trials) {r.detail}\n")
    return EXIT_OK if all(r.passed for r in results) else EXIT_PROPERTY


def cmd_zoo(args, out) -> int:
    for name, fam in zoo.FAMILIES.items():
        params = ", ".join(fam.params) or "-"
        out.write(f"{name:<16} params: {params}\n")
    return EXIT_OK


def _add_source(p):
    p.add_argument("--state", help="JSON state file")
    p.add_argument("--zoo", help="zoo family name (see 'zoo list')")
    p.add_argument("--param", action="append", metavar="K=V", help="zoo parameter, repeatable")
    p.add_argument("--renormalize", action="store_true", help="rescale off-norm state files instead of rejecting")
    p.add_argument("--restarts", type=int, default=32)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float, default=1e-7)
    p.add_argument("--json", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="globalent", description="Global entanglement of multipartite states.")
    sub = parser.add_subparsers(dest="command", required=True)

    m = sub.add_parser("measure", help="global entanglement (pure) or its lower bound (mixed)")
    _add_source(m)
    m.add_argument("--sep-tol", type=float, default=1e-10, help="separability threshold for pure states")
    m.set_defaults(func=cmd_measure)

    t = sub.add_parser("tangle", help="3-tangle or the four-party grouping audit")
    _add_source(t)
    t.add_argument("--focus", help="focus party (index or letter) or pair, e.g. A or AB")
    t.add_argument("--audit", action="store_true", help="list all ten four-party groupings (default for N=4)")
    t.set_defaults(func=cmd_tangle)

    c = sub.add_parser("check", help="randomized property suites")
    c.add_argument("suite", choices=["equivalence", "lu", "monotone", "partitions", "all"])
    c.add_argument("--trials", type=int, default=200)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_check)

    z = sub.add_parser("zoo", help="zoo utilities")
    z.add_argument("action", choices=["list"])
    z.set_defaults(func=cmd_zoo)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, out)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
