import pytest

from lpbsa.casestudy import bundled_script_text, load_bundled_script, replay
from lpbsa.script import DecisionScript, ReplayDesyncError


def _without_last(text, n):
    lines = text.rstrip("\n").split("\n")
    return "\n".join(lines[:-n]) + "\n"


def test_parse_dump_round_trip():
    text = bundled_script_text()
    assert DecisionScript.parse(text).dumps() == text


def test_unknown_kind_reports_line():
    with pytest.raises(ReplayDesyncError) as err:
        DecisionScript.parse("INDIV B1 1 2\nBOGUS x\n")
    assert err.value.line == 2


def test_wrong_arity():
    with pytest.raises(ReplayDesyncError):
        DecisionScript.parse("PAIR B1\n")


def test_truncated_script_desyncs():
    script = DecisionScript.parse(_without_last(bundled_script_text(), 12))
    with pytest.raises(ReplayDesyncError):
        replay(script)


def test_extra_record_desyncs():
    script = DecisionScript.parse(bundled_script_text() + "ACCEPT C9\n")
    with pytest.raises(ReplayDesyncError, match="unconsumed"):
        replay(script)


def test_wrong_parent_desyncs():
    text = bundled_script_text().replace("PAIR B13 K1", "PAIR B4 K1", 1)
    with pytest.raises(ReplayDesyncError) as err:
        replay(DecisionScript.parse(text))
    assert "PAIR B13" in str(err.value)


def test_ineligible_mutation_bit_desyncs():
    # bit 0 is the leading one and cannot flip 0 -> 1
    text = bundled_script_text().replace("MUTBIT C1 X1 1", "MUTBIT C1 X1 0", 1)
    with pytest.raises(ReplayDesyncError):
        replay(DecisionScript.parse(text))


def test_unknown_subpopulation_member_desyncs():
    text = bundled_script_text().replace("SUBPOP B3 B8", "SUBPOP B3 B99", 1)
    with pytest.raises(ReplayDesyncError):
        replay(DecisionScript.parse(text))


def test_skipped_mutation_marker():
    text = bundled_script_text().replace("MUTBIT C7 X1 8", "MUTBIT C7 X1 -", 1)
    _, history, _ = replay(DecisionScript.parse(text))
    c7 = history[0].mutated[6]
    assert c7.genome[0] == 7008
    assert history[0].mutation_bits[6] == (None, 1)


def test_load_from_file(tmp_path):
    path = tmp_path / "s.script"
    path.write_text(bundled_script_text(), encoding="utf-8")
    assert DecisionScript.load(path).dumps() == load_bundled_script().dumps()
