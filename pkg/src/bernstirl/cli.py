from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Callable
from dataclasses import dataclass

from bernstirl import bernoulli, expansions, identities, stirling
from bernstirl.bench import BENCH_CAPS, KERNEL_LABELS, run_bench
from bernstirl.exact_core import Rational, parse_rational
from bernstirl.report import OutputRecord, write_records

logger = logging.getLogger(__name__)

SEQUENCES = (
    "bernoulli",
    "bernoulli2nd",
    "gen_bernoulli",
    "stirling1",
    "stirling2",
    "zeta_neg",
    "eta_neg",
)


class UsageError(ValueError):
    """Bad flag combination detected after argparse has run."""


@dataclass(frozen=True)
class IndexRange:
    lo: int
    hi: int
    single: bool = False
    """True when given as one index ("n" or "n=4") rather than "a..b"."""


def parse_range(text: str) -> IndexRange:
    """"a..b" -> a..b; "n" or "n=4" -> the single index n."""
    raw = text.strip()
    if raw.startswith("n="):
        raw = raw[2:]
    single = ".." not in raw
    try:
        if single:
            lo = hi = int(raw)
        else:
            lo_s, hi_s = raw.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"invalid range: {text!r}") from exc
    if lo < 0 or hi < lo:
        raise argparse.ArgumentTypeError(f"range must satisfy 0 <= a <= b: {text!r}")
    return IndexRange(lo, hi, single)


def _rational_arg(text: str) -> Rational:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv"], default="json")
    common.add_argument("--out", default=None, help="Write here instead of stdout.")
    common.add_argument(
        "--log-level",
        choices=["DEBUG", "INFO", "WARNING", "ERROR"],
        default="WARNING",
    )

    parser = argparse.ArgumentParser(
        prog="bernstirl",
        description="Exact Bernoulli, Stirling and series-coefficient tables.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    tab = sub.add_parser(
        "tab",
        parents=[common],
        help="Tabulate a sequence. RANGE is a..b or one index (one row for stirling).",
    )
    tab.add_argument("sequence", choices=SEQUENCES)
    tab.add_argument("range", type=parse_range)
    tab.add_argument("--route", default=None, help="Route for bernoulli/bernoulli2nd.")
    tab.add_argument("--r", type=_rational_arg, default=None, help="Order of B_n^(r).")

    expand = sub.add_parser(
        "expand",
        parents=[common],
        help="Series coefficients c_n next to the oracle. RANGE is a..b or n_max.",
    )
    expand.add_argument("id", choices=expansions.EXPANSION_IDS)
    expand.add_argument("range", type=parse_range)
    expand.add_argument("--variant", default=None)
    expand.add_argument("--r", type=_rational_arg, default=None)

    verify = sub.add_parser(
        "verify",
        parents=[common],
        help="Identity audit, Bernoulli route agreement and display adjudications.",
    )
    verify.add_argument("--max-n", type=int, default=identities.DEFAULT_MAX_N)
    verify.add_argument(
        "--r",
        type=_rational_arg,
        action="append",
        default=None,
        help="Repeatable; defaults to -1, -1/2, 1/2, 2.",
    )

    bench = sub.add_parser(
        "bench",
        parents=[common],
        help=f"Time a kernel; caps {BENCH_CAPS}.",
    )
    bench.add_argument("kernel", choices=sorted(BENCH_CAPS))
    bench.add_argument("size", type=int)
    bench.add_argument("--seed", type=int, default=0)

    return parser


def _tab_rows(args: argparse.Namespace) -> list[OutputRecord]:
    seq = args.sequence
    lo, hi = args.range.lo, args.range.hi
    route = args.route
    if seq == "bernoulli":
        route = route or "baseline"
        if route not in bernoulli.ROUTE_IDS:
            raise UsageError(f"route must be one of {list(bernoulli.ROUTE_IDS)}")
    elif seq == "bernoulli2nd":
        route = route or "fps_baseline"
        if route not in bernoulli.SECOND_KIND_ROUTES:
            raise UsageError(
                f"route must be one of {list(bernoulli.SECOND_KIND_ROUTES)}"
            )
    elif route is not None:
        raise UsageError(f"--route does not apply to {seq}")
    if seq == "gen_bernoulli" and args.r is None:
        raise UsageError("gen_bernoulli requires --r")
    if seq != "gen_bernoulli" and args.r is not None:
        raise UsageError(f"--r does not apply to {seq}")
    if seq in ("zeta_neg", "eta_neg") and lo < 1:
        raise UsageError(f"{seq} is indexed from k = 1")

    out = []
    if seq in ("stirling1", "stirling2"):
        fn = stirling.stirling1 if seq == "stirling1" else stirling.stirling2
        for n in range(lo, hi + 1):
            for k in range(n + 1):
                out.append(
                    OutputRecord(
                        "sequence",
                        {"sequence": seq, "n": n, "k": k},
                        {"value": Rational(fn(n, k))},
                        stirling.LABELS[seq],
                    )
                )
        return out

    for n in range(lo, hi + 1):
        inputs: dict = {"sequence": seq, "n": n}
        if seq == "bernoulli":
            if route != "baseline" and (n < 2 or n % 2):
                continue
            value = bernoulli.bernoulli_route(n, route)
            inputs["route"] = route
            provenance = bernoulli.ROUTE_LABELS[route]
        elif seq == "bernoulli2nd":
            value = bernoulli.bernoulli2nd(n, route)
            inputs["route"] = route
            provenance = bernoulli.SECOND_KIND_LABELS[route]
        else:
            if seq == "gen_bernoulli":
                value = bernoulli.generalized_bernoulli(n, args.r)
                inputs["r"] = args.r
            elif seq == "zeta_neg":
                value = bernoulli.zeta_neg(n)
            else:
                value = bernoulli.eta_neg(n)
            provenance = bernoulli.SEQUENCE_LABELS[seq]
        out.append(OutputRecord("sequence", inputs, {"value": value}, provenance))
    return out


def cmd_tab(args: argparse.Namespace) -> tuple[list[OutputRecord], int]:
    return _tab_rows(args), 0


def cmd_expand(args: argparse.Namespace) -> tuple[list[OutputRecord], int]:
    eid = args.id
    variant = args.variant or expansions.VARIANTS[eid][0]
    if variant not in expansions.VARIANTS[eid]:
        raise UsageError(
            f"variant must be one of {list(expansions.VARIANTS[eid])} for {eid}"
        )
    needs_r = eid in expansions.POWER_IDS
    if needs_r and args.r is None:
        raise UsageError(f"{eid} requires --r")
    if not needs_r and args.r is not None:
        raise UsageError(f"--r does not apply to {eid}")

    lo, hi = args.range.lo, args.range.hi
    if args.range.single:
        lo = 0
    out = []
    failed = 0
    for n in range(lo, hi + 1):
        value = expansions.coeff(eid, variant, n, args.r)
        oracle = expansions.oracle_coeff(eid, n, args.r, order=hi)
        ok = value == oracle
        failed += not ok
        inputs: dict = {"id": eid, "variant": variant, "n": n}
        if needs_r:
            inputs["r"] = args.r
        out.append(
            OutputRecord(
                "coefficient",
                inputs,
                {"coefficient": value, "oracle": oracle, "pass": ok},
                expansions.provenance(eid, variant),
            )
        )
    if failed:
        logger.warning("%s/%s: %d coefficient(s) disagree", eid, variant, failed)
    return out, 1 if failed else 0


def cmd_verify(args: argparse.Namespace) -> tuple[list[OutputRecord], int]:
    if args.max_n < 1:
        raise UsageError("--max-n must be >= 1")
    r_set = tuple(args.r) if args.r else identities.DEFAULT_R_SET

    report = identities.audit(args.max_n, r_set)
    checks = bernoulli.route_checks(args.max_n) + bernoulli.second_kind_checks(
        args.max_n
    )
    adjudications = identities.adjudications()
    verdict = identities.VerifyReport(report, tuple(checks), tuple(adjudications))

    out = []
    for e in report.entries:
        values: dict = {"lhs": e.lhs, "rhs": e.rhs, "pass": e.passed}
        if e.note:
            values["note"] = e.note
        out.append(
            OutputRecord(
                "identity",
                {"identity": e.identity_id, **dict(e.params)},
                values,
                e.label,
            )
        )
    for c in checks:
        out.append(
            OutputRecord(
                "route",
                {"route": c.route, "n": c.index},
                {"value": c.value, "expected": c.expected, "pass": c.passed},
                c.label,
            )
        )
    for a in adjudications:
        out.append(
            OutputRecord(
                "adjudication",
                {"defect": a.defect, "n": a.index},
                {
                    "printed": a.printed,
                    "corrected": a.corrected,
                    "reference": a.reference,
                    "pass": a.passed,
                },
                a.label,
            )
        )

    failed = [r for r in out if not r.values["pass"]]
    for r in failed:
        logger.warning("verify failure: %s %s", r.provenance, dict(r.inputs))
    logger.info(
        "verify max_n=%d: %d records, %d failed", args.max_n, len(out), len(failed)
    )
    return out, 0 if verdict.ok else 1


def cmd_bench(args: argparse.Namespace) -> tuple[list[OutputRecord], int]:
    res = run_bench(args.kernel, args.size, seed=args.seed)
    rec = OutputRecord(
        "benchmark",
        {"kernel": res.kernel, "size": res.size},
        {"seconds": res.seconds, "operations": res.operations},
        KERNEL_LABELS[res.kernel],
    )
    return [rec], 0


Command = Callable[[argparse.Namespace], tuple[list[OutputRecord], int]]

COMMANDS: dict[str, Command] = {
    "tab": cmd_tab,
    "expand": cmd_expand,
    "verify": cmd_verify,
    "bench": cmd_bench,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    logging.basicConfig(
        level=getattr(logging, args.log_level),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )

    try:
        records, code = COMMANDS[args.cmd](args)
    except ValueError as exc:
        # flag combinations, identity domains and bench caps
        parser.error(str(exc))

    if args.out:
        newline = "" if args.format == "csv" else None
        with open(args.out, "w", encoding="utf-8", newline=newline) as fh:
            write_records(records, fh, args.format)
    else:
        write_records(records, sys.stdout, args.format)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
