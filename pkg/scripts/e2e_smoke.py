from __future__ import annotations

import sys
from fractions import Fraction

from bernstirl.bernoulli import bernoulli_baseline, route_checks, second_kind_checks
from bernstirl.expansions import POWER_IDS, VARIANTS, coeff, oracle_coeff
from bernstirl.identities import adjudications, audit


def _assert(cond: bool, msg: str) -> None:
    if not cond:
        raise AssertionError(msg)


def main() -> int:
    # Small enough for CI; the full grids live behind pytest -m slow.
    max_n = 8
    r_set = (Fraction(-1), Fraction(-1, 2), Fraction(1, 2), Fraction(2))

    print("E2E smoke parameters:")
    print(f"  max_n={max_n}, r_set={[str(r) for r in r_set]}\n")

    # ---------- Bernoulli routes ----------
    checks = route_checks(max_n) + second_kind_checks(max_n)
    bad = [c for c in checks if not c.passed]
    print(f"Routes: {len(checks)} checks, {len(bad)} failed")
    print(f"  B_{2 * max_n} = {bernoulli_baseline(2 * max_n)}")
    _assert(not bad, f"route disagreement: {[(c.route, c.index) for c in bad]}")

    # ---------- Identity audit ----------
    report = audit(max_n, r_set)
    print(f"Identities: {report.summary}")
    _assert(
        report.ok,
        f"identity failures: {[(e.identity_id, e.params) for e in report.failures]}",
    )

    # ---------- Display adjudications ----------
    for a in adjudications():
        print(
            f"  {a.defect:<24} printed={a.printed}  corrected={a.corrected}  "
            f"reference={a.reference}"
        )
        _assert(a.passed, f"adjudication {a.defect} did not resolve")

    # ---------- Expansions vs oracle ----------
    n_checked = 0
    for eid, variants in VARIANTS.items():
        rs = r_set if eid in POWER_IDS else (None,)
        for variant in variants:
            for r in rs:
                for n in range(max_n + 1):
                    got = coeff(eid, variant, n, r)
                    want = oracle_coeff(eid, n, r, order=max_n)
                    _assert(
                        got == want, f"{eid}/{variant} r={r} n={n}: {got} != {want}"
                    )
                    n_checked += 1
    print(f"\nExpansions: {n_checked} coefficients match the oracle")

    print("\nE2E smoke passed.")
    return 0


if __name__ == "__main__":
    try:
        raise SystemExit(main())
    except Exception as e:
        print(f"\nE2E smoke FAILED: {e}", file=sys.stderr)
        raise
