from fractions import Fraction

import pytest

from bernstirl.identities import (
    CONN_HALF_NOTE,
    DEFAULT_R_SET,
    IDENTITY_IDS,
    REGISTRY,
    AuditGrid,
    DomainError,
    IdentityInstance,
    _conn_general,
    adjudications,
    audit,
    check,
    instances,
)


@pytest.mark.parametrize(
    "identity_id, params",
    [
        ("helms_odd_zero", {"k": 1}),
        ("bell_zeta_odd_zero", {"k": 1}),
        ("s2_sum_odd_zero", {"n": 2}),
        ("hockey_stick", {"n": 3, "m": 5}),
        ("diag_s1", {"n": 2, "r": 3}),
        ("diag_s2", {"n": 3, "r": 2}),
        ("conn_general", {"n": 4, "r": Fraction(1, 2)}),
        ("conn_log", {"n": 4, "r": Fraction(-1, 2)}),
        ("bell_scaling", {"n": 4, "k": 2, "a": 2, "b": 3}),
    ],
)
def test_check_examples(identity_id, params):
    entry = check(IdentityInstance.of(identity_id, **params))
    assert entry.passed
    assert entry.lhs == entry.rhs


def test_hockey_stick_out_of_range_is_zero_on_both_sides():
    entry = check(IdentityInstance.of("hockey_stick", n=3, m=5))
    assert entry.lhs == entry.rhs == 0
    # C(0,2) + ... + C(4,2) = C(5,3)
    assert check(IdentityInstance.of("hockey_stick", n=4, m=2)).lhs == 10


@pytest.mark.parametrize(
    "identity_id, params",
    [
        ("helms_odd_zero", {"k": 0}),
        ("s2_sum_odd_zero", {"n": 0}),
        ("diag_s1", {"n": -1, "r": 0}),
        ("bell_ones", {"n": 2, "k": 3}),
        ("falling_rising", {"n": 2, "lam": 1, "form": 2}),
        ("hockey_stick", {"n": 3}),
        ("conn_half", {"n": 1, "r": 2}),
    ],
)
def test_domain_errors(identity_id, params):
    with pytest.raises(DomainError):
        check(IdentityInstance.of(identity_id, **params))


def test_unknown_identity():
    with pytest.raises(ValueError):
        check(IdentityInstance.of("pascal", n=1))


def test_parameter_names_are_checked_against_the_evaluator():
    with pytest.raises(DomainError, match=r"missing \['m'\]"):
        check(IdentityInstance.of("hockey_stick", n=3))
    with pytest.raises(DomainError, match=r"unexpected \['x'\]"):
        check(IdentityInstance.of("bell_ones", n=2, k=1, x=1))


def test_type_errors_inside_an_evaluator_propagate():
    with pytest.raises(TypeError) as exc:
        check(IdentityInstance.of("hockey_stick", n="3", m=1))
    assert not isinstance(exc.value, DomainError)


def test_every_identity_has_a_label():
    assert all(REGISTRY[i].label for i in IDENTITY_IDS)
    entry = check(IdentityInstance.of("diag_s2", n=2, r=1))
    assert entry.label == "diag-2nd-stirl-eq"


def test_grid_validation():
    with pytest.raises(ValueError):
        AuditGrid(0)
    grid = AuditGrid(2, (2, Fraction(1, 2), 2))
    assert grid.r_set == (Fraction(1, 2), Fraction(2))


def test_small_audit_passes():
    report = audit(3, [1])
    assert report.ok
    assert report.summary["failed"] == 0
    assert report.summary["total"] == len(report.entries)
    assert {e.identity_id for e in report.entries} == set(IDENTITY_IDS)


def test_empty_r_set_drops_r_grids():
    report = audit(1, [])
    seen = {e.identity_id for e in report.entries}
    assert not seen & {"conn_general", "conn_log", "falling_rising"}
    assert report.ok


def test_default_audit_passes():
    report = audit(10, DEFAULT_R_SET)
    assert report.ok, report.failures[:5]


@pytest.mark.slow
def test_extended_audit_passes():
    assert audit(12, [-2, -1, Fraction(-1, 2), Fraction(1, 3), 1, 2, 5]).ok


def test_audit_is_deterministic_and_sorted():
    a = audit(4)
    b = audit(4)
    assert a == b
    keys = [IdentityInstance(e.identity_id, e.params).sort_key() for e in a.entries]
    assert keys == sorted(keys)
    assert instances(AuditGrid(4)) == instances(AuditGrid(4))


def test_conn_half_carries_note():
    entry = check(IdentityInstance.of("conn_half", n=0))
    assert entry.passed
    assert entry.note == CONN_HALF_NOTE
    assert entry.lhs == 1


def test_adjudications():
    records = {a.defect: a for a in adjudications()}
    assert set(records) == {
        "closed_zeta_bell_sign",
        "closed_s2_factorial",
        "conn_half_sign",
    }
    assert all(a.passed for a in records.values())
    half = records["conn_half_sign"]
    assert (half.printed, half.corrected, half.reference) == (-1, 1, 1)
    assert records["closed_zeta_bell_sign"].reference == Fraction(1, 6)


@pytest.mark.parametrize("r", [Fraction(-1), Fraction(1, 2), Fraction(2)])
def test_swapped_sign_connection_fails(r):
    # rising factorial of r on both sides: the right side at -r
    mismatches = [
        n for n in range(5) if _conn_general(n, r)[0] != _conn_general(n, -r)[1]
    ]
    assert mismatches
