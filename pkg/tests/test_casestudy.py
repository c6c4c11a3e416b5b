from lpbsa.casestudy import format_trace, replay


def _section(text, title):
    lines = text.split("\n")
    start = lines.index(title)
    end = next((i for i in range(start + 1, len(lines)) if lines[i].startswith("== ")), len(lines))
    return lines[start:end]


def test_trace_final_line():
    _, history, averages = replay()
    text = format_trace(history, averages)
    assert text.rstrip("\n").split("\n")[-1] == "28889053 52649382 55693299"


def test_trace_lists_rejections():
    text = format_trace(*replay()[1:])
    assert "rejected: C7" in _section(text, "== Iteration 1: acceptance (T = 100) ==")
    assert "rejected: C3 C4 C7" in _section(text, "== Iteration 2: acceptance (T = 100) ==")


def test_trace_section_order():
    text = format_trace(*replay()[1:])
    order = ["subpopulation", "partition", "selected parents", "crossover", "mutation",
             "acceptance", "accepted individuals", "summary"]
    positions = [text.index(f"== Iteration 1: {name}") for name in order]
    assert positions == sorted(positions)
    assert text.index("== Initial population ==") < positions[0]


def test_trace_shows_thresholds():
    text = format_trace(*replay()[1:])
    assert "Good threshold: 36307681" in text
    assert "Bad threshold: 23632317" in text
    assert "Good threshold: 46110125" in text
    assert "Bad threshold: 21977818" in text


def test_trace_is_deterministic():
    assert format_trace(*replay()[1:]) == format_trace(*replay()[1:])
