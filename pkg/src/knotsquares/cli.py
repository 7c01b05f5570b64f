"""Command-line interface.

Exit codes: 0 success, 1 infeasible (no object exists or a check failed),
2 invalid input.  Payloads go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from . import alexander, census, diagrams, numtheory, plangraph, realize

OK, INFEASIBLE, INVALID = 0, 1, 2


class _Fail(Exception):
    def __init__(self, code: int, message: str, payload: dict | None = None):
        super().__init__(message)
        self.code = code
        self.payload = payload


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _load_diagram(path: str) -> diagrams.LinkDiagram:
    try:
        return diagrams.LinkDiagram.from_json(Path(path).read_text())
    except OSError as exc:
        raise _Fail(INVALID, f"cannot read {path}: {exc.strerror}") from None
    except diagrams.DiagramError as exc:
        raise _Fail(INVALID, f"invalid diagram: {exc}") from None


# -- subcommands ---------------------------------------------------------------


def cmd_twosquares(args) -> tuple[dict, str]:
    n = args.n
    decs = numtheory.coprime_decompositions(n) if args.coprime else numtheory.two_square_decompositions(n)
    payload = {
        "n": n,
        "decompositions": [[d.a, d.b] for d in decs],
        "r2": numtheory.r2(n),
        "r2_0": numtheory.r2_0(n),
    }
    lines = [f"{d.a}^2 + {d.b}^2" for d in decs] or ["(none)"]
    lines.append(f"r2 = {payload['r2']}, r2_0 = {payload['r2_0']}")
    return payload, "\n".join(lines)


def cmd_realize(args) -> tuple[dict, str]:
    n = args.n
    if n % 2 == 0:
        raise _Fail(INVALID, f"n must be odd, got {n}")
    try:
        if args.square:
            cert = realize.realize_square_prime_alternating(n)
        elif args.rational:
            cert = realize.realize_achiral_rational(n)
        else:
            cert = realize.realize_achiral(n)
    except numtheory.NotSumOfTwoSquares as exc:
        raise _Fail(INFEASIBLE, f"not a sum of two squares, witness {exc.witness}") from None
    except (realize.NoCoprimeDecomposition, realize.ExcludedValue) as exc:
        raise _Fail(INFEASIBLE, str(exc)) from None
    except realize.VerificationFailed as exc:
        raise _Fail(INFEASIBLE, f"verification failed: {exc}") from None
    except ValueError as exc:
        raise _Fail(INVALID, str(exc)) from None
    # re-verify from the serialized diagram before printing
    if cert.diagram is not None:
        again = diagrams.LinkDiagram.from_dict(cert.diagram.to_dict())
        if diagrams.goeritz_det(again) != n:
            raise _Fail(INFEASIBLE, "serialized diagram failed re-verification")
    payload = cert.to_dict()
    notation = cert.payload.get("notation") or cert.payload.get("half_notation") or cert.payload.get("catalog") or ""
    text = f"{cert.kind.value} det={cert.claimed_det} {notation}".rstrip()
    if cert.transcript.get("methods"):
        text += "  " + " ".join(f"{k}={v}" for k, v in sorted(cert.transcript["methods"].items()))
    return payload, text


def cmd_det(args) -> tuple[dict, str]:
    d = _load_diagram(args.pd)
    try:
        values = diagrams.det_report(d, args.method)
    except diagrams.BudgetExceeded as exc:
        raise _Fail(INFEASIBLE, str(exc)) from None
    except diagrams.DiagramError as exc:
        raise _Fail(INVALID, str(exc)) from None
    payload = {"methods": values, "alternating": diagrams.is_alternating(d), "crossings": len(d.crossings)}
    if len(set(values.values())) != 1:
        raise _Fail(INFEASIBLE, f"methods disagree: {values}", payload)
    payload["det"] = next(iter(values.values()))
    text = f"{payload['det']}  " + " ".join(f"{k}={v}" for k, v in sorted(values.items()))
    return payload, text


def cmd_census(args) -> tuple[dict, str]:
    n = args.det
    if n < 3 or n % 2 == 0:
        raise _Fail(INVALID, f"--det must be odd and > 1, got {n}")
    if args.list:
        rows = census.census_rows(n, achiral_only=args.achiral)
        if args.format == "csv":
            return {"rows": rows}, census.export_csv(rows).rstrip("\n")
        return {"rows": rows}, census.export_json(rows)
    count = census.count_achiral_rational(n) if args.achiral else census.count_rational_by_det(n)
    payload = {"det": n, "achiral_only": args.achiral, "count": count}
    if not args.achiral:
        payload["count_chiral_twice"] = census.count_rational_chiral_twice(n)
    return payload, str(count)


def cmd_selfdual(args) -> tuple[dict, str]:
    if args.check:
        try:
            g = plangraph.PlanarMultigraph.from_json(Path(args.check).read_text())
        except OSError as exc:
            raise _Fail(INVALID, f"cannot read {args.check}: {exc.strerror}") from None
        except (ValueError, json.JSONDecodeError) as exc:
            raise _Fail(INVALID, f"invalid graph: {exc}") from None
        if g.rotations is None:
            raise _Fail(INVALID, "graph JSON needs rotations for a dual")
        try:
            sd = plangraph.is_self_dual(g)
        except plangraph.BudgetExceeded as exc:
            raise _Fail(INFEASIBLE, str(exc)) from None
        payload = {
            "self_dual": sd,
            "spanning_trees": plangraph.spanning_tree_count(g),
            "cut_vertex": plangraph.has_cut_vertex(g),
        }
        if sd and g.num_edges % 2 == 0:
            payload["tree_bound_ok"] = plangraph.selfdual_tree_bound_check(g)
        text = " ".join(f"{k}={v}" for k, v in sorted(payload.items()))
        if not sd:
            raise _Fail(INFEASIBLE, "graph is not self-dual", payload)
        return payload, text
    if args.n is None:
        raise _Fail(INVALID, "give N or --check FILE")
    n = args.n
    if n % 2 == 0:
        raise _Fail(INVALID, f"n must be odd, got {n}")
    try:
        g = plangraph.realize_selfdual(n)
    except numtheory.NotSumOfTwoSquares as exc:
        raise _Fail(INFEASIBLE, f"not a sum of two squares, witness {exc.witness}") from None
    trees = plangraph.spanning_tree_count(g)
    payload = {"graph": g.to_dict(), "spanning_trees": trees, "self_dual": plangraph.is_self_dual(g)}
    if trees != n or not payload["self_dual"]:
        raise _Fail(INFEASIBLE, "constructed graph failed verification", payload)
    return payload, json.dumps(payload, sort_keys=True)


def cmd_alex(args) -> tuple[dict, str]:
    p, q = args.p, args.q
    try:
        form = census.SchubertForm(p, q % p if p > 1 else 0)
    except ValueError as exc:
        raise _Fail(INVALID, str(exc)) from None
    exp = alexander.even_expansion(form.p, form.q)
    poly = alexander.alexander_rational(form.p, form.q)
    payload = {
        "p": form.p,
        "q": form.q,
        "polynomial": poly.to_text(),
        "even_expansion": list(exp.entries),
        "leading_coeff": poly.leading,
        "formula_leading_coeff": alexander.leading_coeff(exp) if len(exp) else 1,
        "achiral": census.is_achiral_rational(form),
    }
    payload["leading_is_square"] = _is_square(abs(poly.leading))
    text = "\n".join([
        poly.to_text(),
        f"leading {payload['leading_coeff']} (formula {payload['formula_leading_coeff']}), "
        f"even expansion {' '.join(map(str, exp.entries))}, square={payload['leading_is_square']}",
    ])
    return payload, text


def _is_square(x: int) -> bool:
    return math.isqrt(x) ** 2 == x


def cmd_chirality(args) -> tuple[dict, str]:
    try:
        v = numtheory.chirality_filter(args.det, args.signed)
    except ValueError as exc:
        raise _Fail(INVALID, str(exc)) from None
    return v.to_dict(), f"{v.verdict.value}: {v.reason}"


def cmd_bounds(args) -> tuple[dict, str]:
    d = _load_diagram(args.pd)
    payload: dict = {"crossings": len(d.crossings)}
    try:
        payload["det"] = diagrams.goeritz_det(d)
        payload["crowell"] = realize.crowell_bound_check(d)
    except diagrams.DiagramError as exc:
        raise _Fail(INVALID, str(exc)) from None
    if len(d.crossings) % 2 == 0:
        payload["achiral_bound"] = realize.achiral_bound_check(d)
    else:
        payload["achiral_bound"] = None
    text = " ".join(f"{k}={v}" for k, v in sorted(payload.items()))
    if payload["crowell"] is False or payload["achiral_bound"] is False:
        raise _Fail(INFEASIBLE, "bound violated", payload)
    return payload, text


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="knotsquares", description=__doc__.splitlines()[0])
    ap.add_argument("--json", action="store_true", help="print the JSON payload")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("twosquares", help="two-square decompositions and counts")
    s.add_argument("n", type=_positive)
    s.add_argument("--coprime", action="store_true")
    s.set_defaults(func=cmd_twosquares)

    s = sub.add_parser("realize", help="achiral knot with a given determinant")
    s.add_argument("n", type=_positive)
    g = s.add_mutually_exclusive_group()
    g.add_argument("--rational", action="store_true")
    g.add_argument("--square", action="store_true")
    s.set_defaults(func=cmd_realize)

    s = sub.add_parser("det", help="determinant of a diagram file")
    s.add_argument("--pd", required=True)
    s.add_argument("--method", choices=["goeritz", "states", "trees", "all"], default="all")
    s.set_defaults(func=cmd_det)

    s = sub.add_parser("census", help="two-bridge knots of a given determinant")
    s.add_argument("--det", type=_positive, required=True)
    s.add_argument("--achiral", action="store_true")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--list", action="store_true")
    g.add_argument("--count", action="store_true")
    s.add_argument("--format", choices=["json", "csv"], default="json")
    s.set_defaults(func=cmd_census)

    s = sub.add_parser("selfdual", help="self-dual graph with n spanning trees, or check a graph")
    s.add_argument("n", type=_positive, nargs="?")
    s.add_argument("--check", metavar="FILE")
    s.set_defaults(func=cmd_selfdual)

    s = sub.add_parser("alex", help="Alexander polynomial of S(p, q)")
    s.add_argument("p", type=_positive)
    s.add_argument("q", type=int)
    s.set_defaults(func=cmd_alex)

    s = sub.add_parser("chirality", help="determinant-based chirality filter")
    s.add_argument("--det", type=_positive)
    s.add_argument("--signed", type=int)
    s.set_defaults(func=cmd_chirality)

    s = sub.add_parser("bounds", help="determinant lower bounds for a diagram file")
    s.add_argument("--pd", required=True)
    s.set_defaults(func=cmd_bounds)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    if args.command == "chirality" and args.det is None and args.signed is None:
        print("error: give --det or --signed", file=sys.stderr)
        return INVALID
    try:
        payload, text = args.func(args)
    except _Fail as f:
        print(f"error: {f}", file=sys.stderr)
        if f.payload is not None:
            print(json.dumps(f.payload, sort_keys=True))
        return f.code
    print(json.dumps(payload, sort_keys=True) if args.json else text)
    return OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
