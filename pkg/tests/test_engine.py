from importlib import resources

import pytest

from braidmono.braid import BraidWord, compose, equal, power, sigma
from braidmono.engine import (
    EngineError,
    TableFormatError,
    braid_monodromy,
    check_factors,
    epsilon_rule,
    format_factor,
    format_table,
    model_sequence,
    parse_expected,
    parse_rho,
    parse_table,
    run_file,
)
from braidmono.moves import Model

SMALL = "n=4 model=K1\nj=1 type=c lpair=(1,2) delta=D<1,2>^1\nj=2 type=a1 lpair=(2,3) delta=D12R<2>\n"


def _data(name: str) -> str:
    return resources.files("braidmono").joinpath("data", name).read_text()


@pytest.mark.parametrize("t, e", [("a1", 1), ("a2", 1), ("b", 4), ("c", 2), ("cusp", 3)])
def test_epsilon_rule(t, e):
    assert epsilon_rule(t) == e


def test_epsilon_rule_unknown():
    with pytest.raises(EngineError):
        epsilon_rule("d")


@pytest.mark.parametrize("name", ["s1_table.txt", "s2_table.txt"])
def test_table_text_round_trip(name):
    for block in _data(name).split("\n---\n"):
        table = parse_table(block)
        again = parse_table(format_table(table))
        assert again == table
        assert format_table(again) == format_table(table)


def test_models_thread_through_rows():
    table = parse_table(SMALL)
    assert model_sequence(table) == [Model(4, 0), Model(4, 0), Model(4, 1)]


def test_small_table_factors():
    factors = braid_monodromy(parse_table(SMALL))
    assert [(f.origin_j, f.epsilon) for f in factors] == [(1, 2), (2, 1)]
    assert equal(factors[0].word(), power(sigma(1, 4), 2))
    assert format_factor(factors[0]) == "j=1 epsilon=2 word=s1^2 pretty=Z2[1,2]"


def test_header_only_table_has_no_factors():
    table = parse_table("n=4 model=K1")
    assert table.rows == ()
    assert braid_monodromy(table) == []


def test_threading_error():
    with pytest.raises(EngineError, match="expected K2"):
        parse_table("n=4 model=K2\nj=1 type=a1 lpair=(2,3) delta=D12R<2>")


def test_move_must_fit_type():
    with pytest.raises(EngineError, match="does not fit"):
        parse_table("n=4 model=K1\nj=1 type=b lpair=(2,3) delta=D<1,2>^2")


@pytest.mark.parametrize(
    "text",
    [
        "",
        "# only a comment\n",
        "j=1 type=c lpair=(1,2) delta=D<1,2>^1",
        "model=K1",
        "n=4 model=K1\nj=1 type=c lpair=(1,2)",
        "n=4 model=K1\nj=1 type=c lpair=1,2 delta=D<1,2>^1",
        "n=4 model=K1\nj=1 type=c lpair=(1,2) delta=I2R<2>",
    ],
)
def test_bad_table_text(text):
    with pytest.raises(TableFormatError):
        parse_table(text)


def test_parse_rho():
    assert equal(parse_rho("D<2,3>^1 D<9,10>^-1", 10), compose(sigma(2, 10), power(sigma(9, 10), -1)))
    assert equal(parse_rho("", 4), BraidWord.identity(4))
    with pytest.raises(TableFormatError):
        parse_rho("junk", 4)


def test_mirror_needs_two_blocks():
    with pytest.raises(EngineError):
        run_file("n=4 model=K1 assemble=mirror\nj=1 type=c lpair=(1,2) delta=D<1,2>^1")


def test_several_blocks_need_directive():
    with pytest.raises(EngineError):
        run_file("n=4 model=K1\n---\nn=4 model=K1")


def test_check_flags_wrong_exponent_and_missing_rows():
    factors = braid_monodromy(parse_table(SMALL))
    _, labels, entries = parse_expected("n=4\nj=1 Z-2[1,2]\nj=7 Z2[1,2]")
    verdicts = check_factors(factors, labels, entries)
    assert [v.ok for v in verdicts] == [False, False, False]
    assert verdicts[1].note == "no such factor"
    assert verdicts[2].note == "factor missing from expected list"


def test_check_accepts_paths_raised_to_epsilon():
    factors = braid_monodromy(parse_table(SMALL))
    _, labels, entries = parse_expected("n=4\nj=1 z[1,2]\nj=2 " + format_factor(factors[1]).split("pretty=")[1])
    assert all(v.ok for v in check_factors(factors, labels, entries))


def test_expected_header_required():
    with pytest.raises(TableFormatError):
        parse_expected("j=1 Z2[1,2]")
    with pytest.raises(TableFormatError):
        parse_expected("n=3 labels=1,2\nj=1 Z2[1,2]")
