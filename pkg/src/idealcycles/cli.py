"""Command-line front end: ``idealcycles {beta,verify,degree,fiveterm,volume,selftest}``.

Exit codes: 0 success, 1 input error, 2 violated precondition, 3 verification mismatch.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

import mpmath

from . import randomgen, selftest
from .blochmachine import algvol, five_term_boundary, pre_bloch_to_json, shapes_to_chain
from .chaincore import Chain, coinvariant_reduce
from .chainmaps import verify_commuting_square
from .cyclefile import CycleFile, load
from .errors import (
    DegreeCertificateFailed,
    IdealCyclesError,
    NotACycle,
    ParseError,
    VerificationMismatch,
)
from .exactnum import ProjPoint, format_scalar
from .idealgeom import check_ideal_fundamental_cycle, is_closed

VOLUME_TOL = 1e-8


def _point_text(p: ProjPoint) -> str:
    if p.is_infinity:
        return "inf"
    return format_scalar(p.num if p.den == p.field.one else p.num / p.den)


def _coeff_text(a) -> str:
    return f"({a})" if "/" in str(a) or str(a).startswith("-") else str(a)


def format_normal_chain(c: Chain, limit: int | None = None) -> str:
    if not c:
        return "0"
    parts = []
    items = c.items()
    for g, a in items[:limit]:
        pts = ",".join(_point_text(p) for p in g.normal_tuple.points)
        parts.append(f"{_coeff_text(a)}*<({pts})>" + ("~" if g.torsion else ""))
    if limit is not None and len(items) > limit:
        parts.append(f"... ({len(items) - limit} more terms)")
    return " + ".join(parts)


def upper_shape_form(c: Chain) -> list[tuple]:
    """Shape pairs (a, z) with Im z >= 0, using [1/z] = -[z]."""
    out = []
    for g, a in c.items():
        z = g.parameter
        if not z.is_infinity and z.num != z.field.zero and z.to_complex().imag < 0:
            z = ProjPoint(z.den, z.num)
            a = -a
        out.append((a, z))
    return out


def format_shapes(pairs) -> str:
    if not pairs:
        return "0"
    return " + ".join(f"{_coeff_text(a)}*[{_point_text(z)}]" for a, z in pairs)


def _vol_text(v, digits: int = 15) -> str:
    return mpmath.nstr(v, digits)


# ---------------------------------------------------------------------------
# commands; each returns a report dict and may raise


def _load(args) -> CycleFile:
    cf = load(args.file)
    if getattr(args, "coeff_mode", None):
        cf.coefficient_mode = args.coeff_mode
    if getattr(args, "precision", None):
        cf.precision = args.precision
    return cf


def _raw_or_shapes(cf: CycleFile) -> str:
    if cf.primary in ("raw_cycle", "shapes"):
        return cf.primary
    if cf.raw_cycle is not None:
        return "raw_cycle"
    if cf.shapes is not None:
        return "shapes"
    raise ParseError("beta needs a raw ideal cycle or a shape list")


def degree_report(cf: CycleFile, n_samples: int, seed: int):
    if cf.raw_cycle is None:
        raise ParseError("degree needs a raw ideal cycle")
    return check_ideal_fundamental_cycle(cf.raw_cycle, n_samples, seed, cf.pairings)


def cmd_beta(args) -> dict:
    cf = _load(args)
    mode = cf.coefficient_mode
    source = _raw_or_shapes(cf)
    report: dict = {"command": "beta", "source": source, "coefficient_mode": mode}
    if source == "raw_cycle":
        if not is_closed(cf.raw_cycle, cf.pairings):
            raise NotACycle("raw ideal cycle does not close up modulo its face pairings")
        if not args.skip_degree:
            deg = degree_report(cf, args.samples, args.seed)
            report["degree"] = deg.as_dict()
            if not deg.passed:
                raise DegreeCertificateFailed(
                    f"degree certificate failed: sampled degrees {deg.degrees_histogram}", report
                )
        beta = coinvariant_reduce(cf.raw_cycle.with_mode(mode))
    else:
        if not args.skip_degree:
            raise DegreeCertificateFailed(
                "a bare shape list has no tetrahedra to certify; pass --skip-degree"
            )
        beta = shapes_to_chain(cf.shapes, mode)
    vol = algvol(beta, cf.precision)
    report.update(
        beta=pre_bloch_to_json(beta),
        beta_text=format_normal_chain(beta),
        shape_form=format_shapes(upper_shape_form(beta)),
        volume=_vol_text(vol),
        precision=cf.precision,
    )
    return report


def cmd_verify(args) -> dict:
    cf = _load(args)
    if cf.decorated is None:
        raise ParseError("verify needs a decorated payload")
    start = time.perf_counter()
    rep = verify_commuting_square(cf.decorated, cf.cusp_data(), cf.representation(), cf.coefficient_mode)
    report = {"command": "verify", **rep.as_dict(), "seconds": round(time.perf_counter() - start, 3)}
    report["terms"] = len(rep.left_chain)
    if args.format != "structured":
        report["left_text"] = format_normal_chain(rep.left_chain, 3)
        report["right_text"] = format_normal_chain(rep.right_chain, 3)
    report["ok"] = rep.ok(VOLUME_TOL)
    if not report["ok"]:
        raise VerificationMismatch(
            f"routes disagree: chains_equal={rep.chains_equal}, "
            f"volume_diff={mpmath.nstr(rep.volume_diff, 5)}",
            report,
        )
    return report


def cmd_degree(args) -> dict:
    cf = _load(args)
    deg = degree_report(cf, args.samples, args.seed)
    report = {"command": "degree", **deg.as_dict()}
    if not deg.is_cycle:
        raise NotACycle("raw ideal cycle does not close up modulo its face pairings", report)
    if not deg.passed:
        raise DegreeCertificateFailed(f"sampled degrees {deg.degrees_histogram}", report)
    return report


def cmd_fiveterm(args) -> dict:
    rng = random.Random(args.seed)
    f = randomgen.default_field()
    worst, failures = 0.0, 0
    for _ in range(args.count):
        t = randomgen.random_tuple(f, rng, 5, height=5)
        v = float(abs(algvol(five_term_boundary(t), args.precision or 212)))
        worst = max(worst, v)
        failures += v >= VOLUME_TOL
    report = {"command": "fiveterm", "count": args.count, "seed": args.seed,
              "max_abs_volume": f"{worst:.3e}", "failures": failures}
    if failures:
        raise VerificationMismatch(f"{failures} five-term sums exceed {VOLUME_TOL}", report)
    return report


def cmd_volume(args) -> dict:
    cf = _load(args)
    payload = cf.payload()
    if cf.primary == "shapes":
        vol = algvol(shapes_to_chain(cf.shapes, "Q"), cf.precision)
    elif cf.primary == "raw_cycle":
        vol = algvol(payload, cf.precision)
    else:
        rep = verify_commuting_square(payload, cf.cusp_data(), cf.representation(), cf.coefficient_mode)
        vol = rep.right_volume
    return {"command": "volume", "source": cf.primary, "volume": _vol_text(vol), "precision": cf.precision}


def cmd_selftest(args) -> dict:
    start = time.perf_counter()
    results = selftest.run(args.seed, args.quick)
    suites = [
        {"name": r.name, "passed": r.passed, "total": r.total, "seconds": round(r.seconds, 3),
         "failures": [repr(x) for x in r.failures[:3]]}
        for r in results
    ]
    report = {"command": "selftest", "seed": args.seed, "quick": args.quick, "suites": suites,
              "seconds": round(time.perf_counter() - start, 3)}
    bad = sum(not r.ok for r in results)
    if bad:
        raise VerificationMismatch(f"{bad} suites failed", report)
    return report


COMMANDS = {
    "beta": cmd_beta,
    "verify": cmd_verify,
    "degree": cmd_degree,
    "fiveterm": cmd_fiveterm,
    "volume": cmd_volume,
    "selftest": cmd_selftest,
}


# ---------------------------------------------------------------------------
# argument parsing and output


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "structured"], default="text",
                        help="'structured' prints one JSON object")
    common.add_argument("--precision", type=int, default=None, help="bits for the dilogarithm")
    common.add_argument("--seed", type=int, default=None)

    parser = argparse.ArgumentParser(prog="idealcycles", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(name, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.add_argument("file", help="cycle file (JSON)")
        p.add_argument("--coeff-mode", choices=["Z", "Q"], default=None)
        return p

    p = with_file("beta", "reduced invariant and volume of a raw ideal cycle or shape list")
    p.add_argument("--skip-degree", action="store_true")
    p.add_argument("--samples", type=int, default=100)
    with_file("verify", "compare both routes of the commuting square on a decorated cycle")
    p = with_file("degree", "closure and sampled degree of a raw ideal cycle")
    p.add_argument("--samples", type=int, default=100)
    with_file("volume", "Algvol of the primary payload")
    p = sub.add_parser("fiveterm", parents=[common], help="random five-term checks")
    p.add_argument("--count", type=int, default=1000)
    p = sub.add_parser("selftest", parents=[common], help="randomized invariant suites")
    p.add_argument("--quick", action="store_true")
    return parser


def _print_text(report: dict, out) -> None:
    for key, value in report.items():
        if key == "suites":
            for s in value:
                status = "ok" if s["passed"] == s["total"] and s["total"] else "FAIL"
                print(f"  {status:4s} {s['passed']:5d}/{s['total']:<5d} {s['seconds']:6.2f}s  {s['name']}", file=out)
                for f in s["failures"]:
                    print(f"         {f}", file=out)
        elif isinstance(value, dict):
            print(f"{key}:", file=out)
            for k, v in value.items():
                print(f"  {k}: {v}", file=out)
        elif key in ("left_chain", "right_chain", "beta", "diff"):
            continue
        else:
            print(f"{key}: {value}", file=out)


def emit(report: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "structured":
        json.dump(report, out, indent=1, default=str)
        out.write("\n")
    else:
        _print_text(report, out)


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.seed is None:
        args.seed = selftest.DEFAULT_SEED if args.command == "selftest" else 0
    try:
        report = COMMANDS[args.command](args)
    except IdealCyclesError as exc:
        partial = exc.args[1] if len(exc.args) > 1 and isinstance(exc.args[1], dict) else {}
        report = {"command": args.command, **partial, "error": type(exc).__name__,
                  "message": str(exc.args[0]) if exc.args else "", "exit_code": exc.exit_code}
        emit(report, args.format)
        return exc.exit_code
    emit(report, args.format)
    return 0


if __name__ == "__main__":
    sys.exit(main())
