import math
import random
from fractions import Fraction

import pytest

from braidmono.arrangement import (
    Conic,
    CurveFormatError,
    GeometryError,
    Line,
    QNum,
    fiber,
    fiber_layout,
    ignored_events,
    lefschetz_table,
    meeting_counts,
    parse_curve,
    singular_events,
    trace_components,
)
from braidmono.engine import braid_monodromy, format_table, parse_table, parse_table_blocks
from braidmono.fixtures import data_text

SMALL = "conic 0 0 1 -1 0 0 p\nline 1/3 1/5 a\nline -1/2 2 b\n"


def _random_qnum(rng: random.Random) -> QNum:
    return QNum(Fraction(rng.randint(-40, 40), rng.randint(1, 9)), Fraction(rng.randint(-9, 9), rng.randint(1, 5)), rng.choice((1, 2, 3, 5, 6, 7)))


def test_qnum_order_matches_floats():
    rng = random.Random(11)
    for _ in range(2000):
        p, q = _random_qnum(rng), _random_qnum(rng)
        fp, fq = float(p), float(q)
        if abs(fp - fq) > 1e-9:
            assert (p < q) == (fp < fq)
            assert p.cmp(q) == (1 if fp > fq else -1)
        lo, hi = p.bounds(12)
        assert lo - Fraction(1, 10**9) <= Fraction(fp) <= hi + Fraction(1, 10**9)
        assert hi - lo <= Fraction(1, 10**11)


def test_qnum_arithmetic_is_exact():
    r2 = QNum.sqrt_of(Fraction(8))
    assert (r2.a, r2.b, r2.d) == (0, 2, 2)
    assert r2 * r2 == QNum(Fraction(8))
    x = QNum(Fraction(1), Fraction(1), 5)
    assert (x - 1) * (x - 1) == QNum(Fraction(5))
    assert (x / x) == QNum(Fraction(1))
    assert QNum(Fraction(3), Fraction(0), 7).d == 1
    with pytest.raises(GeometryError):
        QNum.sqrt_of(Fraction(-1))


def test_parse_curve_formats():
    curve = parse_curve("# two components\nline 1/2 -3 a\nconic 1 0 2 0 0 -1\nwindow -4 4\n")
    assert curve.components[0] == Line(Fraction(1, 2), Fraction(-3), "a")
    assert isinstance(curve.components[1], Conic)
    assert curve.label(1) == "c2"
    assert curve.degree == 3
    assert curve.window == (Fraction(-4), Fraction(4))


@pytest.mark.parametrize(
    "text",
    ["line 1\n", "ellipse 1 2 3\n", "line a b\n", "window 3 1\nline 1 0\n", "line 1 0\nline 1 0\n"],
)
def test_parse_curve_rejects(text):
    with pytest.raises(CurveFormatError):
        parse_curve(text)


def test_degenerate_conic_rejected():
    # y^2 - x^2 is a pair of lines
    with pytest.raises(CurveFormatError):
        parse_curve("conic -1 0 1 0 0 0\n")


def test_parabola_has_one_branch_row():
    table = lefschetz_table(parse_curve("conic 0 0 1 -1 0 0 p\n"))
    assert [(r.sing_type, r.lpair) for r in table.rows] == [("a1", (1, 2))]
    assert lefschetz_table(parse_curve("conic 0 0 1 -1 0 0 p\n"), "left").rows[0].sing_type == "a2"


def test_two_lines_give_one_crossing():
    table = lefschetz_table(parse_curve("line 1 0\nline -1 0\n"))
    assert format_table(table).splitlines()[1] == "j=1 type=c lpair=(1,2) delta=D<1,2>^1"


def test_fiber_counts_non_real_points():
    curve = parse_curve(SMALL)
    reals, hidden = fiber(curve, Fraction(-5))
    assert [float(y) for y in reals] == [-22 / 15, 4.5] and hidden == 2
    assert fiber_layout(curve, Fraction(-5)) == [("a", False), ("p", True), ("b", False)]
    reals, hidden = fiber(curve, Fraction(3))
    assert hidden == 0
    assert [float(y) for y in reals] == pytest.approx([-math.sqrt(3), 0.5, 1.2, math.sqrt(3)])


def test_small_arrangement_both_base_points():
    curve = parse_curve(SMALL)
    right, left = lefschetz_table(curve), lefschetz_table(curve, "left")
    assert [r.sing_type for r in right.rows] == ["c"] * 5 + ["a1"]
    assert [r.j for r in left.rows] == [6, 5, 4, 3, 2, 1]
    assert left.rows[0].sing_type == "a2"
    assert parse_table(format_table(right)) == right
    assert len(braid_monodromy(right)) == 6


def test_rows_option_truncates():
    table = lefschetz_table(parse_curve(SMALL), rows=3)
    assert [r.j for r in table.rows] == [1, 2, 3]


def test_events_outside_window_are_ignored():
    curve = parse_curve(SMALL + "window 1 20\n")
    events = singular_events(curve)
    assert len(events) == 4
    outside, off_axis = ignored_events(curve)
    assert [str(e.x) for e in outside] == ["0", "39/10-3/10*sqrt(165)"]
    assert off_axis == []


def test_shared_abscissa_is_a_geometry_error():
    with pytest.raises(GeometryError, match="share x"):
        singular_events(parse_curve("line 1 0\nline -1 0\nconic 0 0 1 -1 0 -1\n"))


def test_event_on_window_edge_is_a_geometry_error():
    with pytest.raises(GeometryError):
        singular_events(parse_curve("line 1 0\nline -1 0\nwindow 0 3\n"))


@pytest.mark.parametrize("name", ["s1_curve_a.txt", "s1_curve_b.txt"])
def test_s1_realizations_keep_meetings_within_bezout(name):
    curve = parse_curve(data_text(name))
    table = lefschetz_table(curve)
    layout = fiber_layout(curve, curve.window[1])
    reals = [n for n, pair in layout if not pair]
    pairs = [n for n, pair in layout if pair]
    meetings, _, _ = trace_components(table, reals, pairs)
    counts = meeting_counts(meetings)
    for (a, b), c in counts.items():
        bound = (1 if a.startswith("l") else 2) * (1 if b.startswith("l") else 2)
        assert c <= bound, (a, b, c)


def test_s2_table_needs_four_line_conic_meetings():
    """Component names read off both ends of the S2 table meet consistently in
    the middle, and then line l6 (and l7) meets conic h5 four times."""
    right, left = parse_table_blocks(data_text("s2_table.txt"))
    m1, reals1, pairs1 = trace_components(right, "h1 l2 l3 h4 h5 h1 h4 h5 l6 l7".split())
    m2, reals2, pairs2 = trace_components(left, "l6 l7 h5 h4 h1 h5 h4 l2 l3 h1".split())
    assert (reals1, pairs1) == (reals2, pairs2) == (["l6", "l2", "l3", "l7"], ["h1", "h4", "h5"])
    counts = meeting_counts(m1 + m2)
    assert counts[("h5", "l6")] == 4
    assert counts[("h5", "l7")] == 4
    assert sorted(m.j for m in m1 + m2 if {"h5", "l6"} <= set(m.names)) == [2, 7, 18, 26]
    assert sorted(m.j for m in m1 + m2 if {"h5", "l7"} <= set(m.names)) == [3, 11, 21, 27]


def test_trace_rejects_branch_between_different_names():
    table = parse_table("n=2 model=K1\nj=1 type=a1 lpair=(1,2) delta=D12R<1>")
    with pytest.raises(GeometryError):
        trace_components(table, ["a", "b"])
