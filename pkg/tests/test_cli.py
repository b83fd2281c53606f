import argparse
import csv
import io
import json
from fractions import Fraction

import pytest

from bernstirl import bernoulli, identities
from bernstirl.cli import IndexRange, main, parse_range
from bernstirl.report import ORACLE


def _run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def _records(capsys, argv):
    code, out = _run(capsys, argv)
    return code, json.loads(out)["records"]


def _values(records, key="value"):
    return [Fraction(str(r["values"][key])) for r in records]


def test_parse_range():
    assert parse_range("0..6") == IndexRange(0, 6)
    assert parse_range("4..4") == IndexRange(4, 4, single=False)
    assert parse_range("n=4") == IndexRange(4, 4, single=True)
    assert parse_range("7") == IndexRange(7, 7, single=True)
    for bad in ("3..1", "-1", "a..b", "1..x"):
        with pytest.raises(argparse.ArgumentTypeError):
            parse_range(bad)


def test_tab_bernoulli(capsys):
    code, recs = _records(capsys, ["tab", "bernoulli", "0..6"])
    assert code == 0
    assert _values(recs)[:3] == [1, Fraction(-1, 2), Fraction(1, 6)]
    assert recs[1]["values"]["value"] == "-1/2"
    assert recs[0]["provenance"] == "Bernoulli-Gen-Eq"


def test_tab_bernoulli_route_skips_odd(capsys):
    code, recs = _records(capsys, ["tab", "bernoulli", "0..6", "--route", "det_tan"])
    assert code == 0
    assert [r["inputs"]["n"] for r in recs] == [2, 4, 6]
    assert _values(recs) == [Fraction(1, 6), Fraction(-1, 30), Fraction(1, 42)]


def test_tab_stirling_row(capsys):
    code, recs = _records(capsys, ["tab", "stirling2", "n=4"])
    assert code == 0
    assert _values(recs) == [0, 1, 7, 6, 1]
    assert [r["inputs"]["k"] for r in recs] == [0, 1, 2, 3, 4]


def test_tab_zeta(capsys):
    _, recs = _records(capsys, ["tab", "zeta_neg", "1..2"])
    assert [r["values"]["value"] for r in recs] == ["-1/12", "1/120"]


def test_tab_generalized_bernoulli(capsys):
    _, recs = _records(capsys, ["tab", "gen_bernoulli", "0..2", "--r=1"])
    assert _values(recs) == [1, Fraction(-1, 2), Fraction(1, 6)]
    assert recs[0]["inputs"]["r"] == "1"


def test_expand_single_index_means_prefix(capsys):
    code, recs = _records(capsys, ["expand", "sqrt_log1p_over_x", "2"])
    assert code == 0
    assert _values(recs, "coefficient") == [1, Fraction(-1, 4), Fraction(13, 96)]
    assert all(r["values"]["pass"] is True for r in recs)
    assert recs[0]["provenance"] == "Sqrt-log-Eq"


def test_expand_explicit_range_is_exact(capsys):
    code, recs = _records(capsys, ["expand", "log_cosh", "4..4"])
    assert code == 0
    assert [r["inputs"]["n"] for r in recs] == [4]
    assert _values(recs, "coefficient") == [Fraction(-1, 12)]
    _, recs = _records(capsys, ["expand", "log_cosh", "4"])
    assert [r["inputs"]["n"] for r in recs] == [0, 1, 2, 3, 4]


def test_provenance_is_source_label(capsys):
    argv = ["tab", "bernoulli", "2..2", "--route", "closed_zeta_bell"]
    _, (rec,) = _records(capsys, argv)
    assert rec["provenance"] == "Equal=0-Stirl-Bern"
    assert rec["inputs"]["route"] == "closed_zeta_bell"
    _, recs = _records(capsys, ["expand", "log_cosh", "2"])
    assert {r["provenance"] for r in recs} == {"log-cosh-ser"}
    assert recs[0]["inputs"]["id"] == "log_cosh"
    _, recs = _records(capsys, ["tab", "stirling1", "n=2"])
    assert {r["provenance"] for r in recs} == {"Stirl-No-First-GF"}


def test_verify_provenance_uses_known_labels(capsys):
    known = {
        ORACLE,
        *bernoulli.ROUTE_LABELS.values(),
        *bernoulli.SECOND_KIND_LABELS.values(),
        *(i.label for i in identities.REGISTRY.values()),
    }
    _, recs = _records(capsys, ["verify", "--max-n", "2"])
    assert {r["provenance"] for r in recs} <= known
    helms = [r for r in recs if r["inputs"].get("identity") == "helms_odd_zero"]
    assert helms and {r["provenance"] for r in helms} == {"Helms-variant=0"}
    defects = [r for r in recs if r["kind"] == "adjudication"]
    assert {r["provenance"] for r in defects} == {
        "Equal=0-Stirl-Bern",
        "Equal-Stirl-Bern2nd",
        "Conn-Stirl-1st-2nd",
    }


def test_expand_log_cosh(capsys):
    code, recs = _records(capsys, ["expand", "log_cosh", "0..3"])
    assert code == 0
    assert _values(recs, "coefficient") == [0, 0, Fraction(1, 2), 0]
    assert _values(recs, "oracle") == _values(recs, "coefficient")


def test_expand_power_with_variant(capsys):
    argv = ["expand", "expm1_over_x_pow_r", "0..4", "--r=-1", "--variant", "mixed"]
    code, recs = _records(capsys, argv)
    assert code == 0
    # (x/(e^x - 1)) has c_n = B_n / n!
    assert _values(recs, "coefficient") == [
        1,
        Fraction(-1, 2),
        Fraction(1, 12),
        0,
        Fraction(-1, 720),
    ]
    assert recs[0]["inputs"]["r"] == "-1"


def test_verify_small(capsys):
    code, recs = _records(capsys, ["verify", "--max-n", "1"])
    assert code == 0
    kinds = {r["kind"] for r in recs}
    assert kinds == {"identity", "route", "adjudication"}
    assert all(r["values"]["pass"] for r in recs)


def test_verify_default(capsys):
    code, recs = _records(capsys, ["verify"])
    assert code == 0
    notes = [r for r in recs if r["values"].get("note")]
    assert notes and all(r["inputs"]["identity"] == "conn_half" for r in notes)


def test_verify_reports_corrupted_route(capsys, monkeypatch):
    monkeypatch.setitem(bernoulli.ROUTES, "det_tan", lambda k: Fraction(0))
    code, recs = _records(capsys, ["verify", "--max-n", "2"])
    assert code == 1
    failed = [r for r in recs if not r["values"]["pass"]]
    assert failed
    assert {r["inputs"]["route"] for r in failed} == {"det_tan"}


def test_bench(capsys):
    code, recs = _records(capsys, ["bench", "hessenberg", "20", "--seed", "3"])
    assert code == 0
    (rec,) = recs
    assert rec["kind"] == "benchmark"
    assert rec["values"]["operations"] == 20 * 21
    assert rec["values"]["seconds"] >= 0
    assert rec["provenance"] == "Cahill-Narayan-Fibonacci-2004-Thm"
    _, (rec,) = _records(capsys, ["bench", "fps", "8"])
    assert rec["provenance"] == ORACLE


@pytest.mark.parametrize(
    "argv",
    [
        ["bench", "bell", "41"],
        ["bench", "fps", "0"],
        ["tab", "stirling2", "0..3", "--route", "det_tan"],
        ["tab", "gen_bernoulli", "0..3"],
        ["tab", "bernoulli", "0..3", "--r=2"],
        ["tab", "bernoulli", "0..3", "--route", "nope"],
        ["tab", "zeta_neg", "0..3"],
        ["expand", "log1p_over_x_pow_r", "0..3"],
        ["expand", "log_cosh", "0..3", "--r=2"],
        ["expand", "log_cosh", "0..3", "--variant", "eta"],
        ["tab", "bernoulli", "3..1"],
        ["verify", "--max-n", "0"],
        ["verify", "--r", "1/0"],
    ],
)
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_csv_matches_json(capsys):
    _, recs = _records(capsys, ["tab", "bernoulli", "0..4"])
    code, out = _run(capsys, ["tab", "bernoulli", "0..4", "--format", "csv"])
    assert code == 0
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [row["values.value"] for row in rows] == [
        str(r["values"]["value"]) for r in recs
    ]
    assert rows[0]["provenance"] == "Bernoulli-Gen-Eq"


def test_csv_booleans(capsys):
    _, out = _run(capsys, ["expand", "log_cosh", "0..2", "--format", "csv"])
    rows = list(csv.DictReader(io.StringIO(out)))
    assert {row["values.pass"] for row in rows} == {"true"}


def test_out_file(tmp_path, capsys):
    target = tmp_path / "zeta.json"
    code, out = _run(capsys, ["tab", "zeta_neg", "1..3", "--out", str(target)])
    assert code == 0
    assert out == ""
    recs = json.loads(target.read_text(encoding="utf-8"))["records"]
    assert len(recs) == 3
