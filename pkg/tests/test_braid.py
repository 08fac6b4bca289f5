import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidmono.braid import (
    Band,
    BraidError,
    BraidWord,
    FreeWord,
    artin_action,
    band_halftwist,
    block_halftwist,
    compose,
    conjugate,
    equal,
    exponent_sum,
    format_word,
    free_word_from_text,
    invert,
    parse_word,
    permutation,
    power,
    sigma,
)


def words(max_n=6, max_len=20):
    return st.integers(2, max_n).flatmap(
        lambda n: st.lists(st.tuples(st.integers(1, n - 1), st.sampled_from((1, -1))), max_size=max_len).map(
            lambda ls: BraidWord(n, tuple(ls))
        )
    )


def test_bad_words_rejected():
    with pytest.raises(BraidError):
        BraidWord(3, ((3, 1),))
    with pytest.raises(BraidError):
        BraidWord(3, ((1, 2),))
    with pytest.raises(BraidError):
        BraidWord(0)
    with pytest.raises(BraidError):
        compose(sigma(1, 3), sigma(1, 4))


def test_artin_action_of_generator():
    act = artin_action(sigma(1, 3))
    assert act.images[0] == free_word_from_text("x1 x2 x1^-1")
    assert act.images[1] == free_word_from_text("x1")
    assert act.images[2] == free_word_from_text("x3")
    assert artin_action(BraidWord.identity(4)).is_identity()


def test_free_word_reduces():
    assert len(FreeWord([1, 2, -2, -1, 3])) == 1
    w = free_word_from_text("x1 x2^2 x3^-1")
    assert (w * w.inverse()) == FreeWord()


def test_permutation_of_generator():
    assert permutation(sigma(2, 4)) == (0, 2, 1, 3)
    assert permutation(power(sigma(1, 3), 2)) == (0, 1, 2)


def test_block_halftwist_is_garside_on_block():
    d = block_halftwist(2, 5, 6)
    assert exponent_sum(d) == 6
    # conjugating sigma_i by the block halftwist flips it inside the block
    assert equal(conjugate(sigma(2, 6), d), sigma(4, 6))
    assert equal(power(block_halftwist(1, 2, 3), 1), sigma(1, 3))


def test_full_twist_is_central():
    n = 5
    full = power(block_halftwist(1, n, n), 2)
    for i in range(1, n):
        assert equal(compose(full, sigma(i, n)), compose(sigma(i, n), full))


def test_band_of_adjacent_chord():
    assert equal(band_halftwist(Band(2, 3, strand_count=4)), sigma(2, 4))
    b = Band(1, 3, strand_count=4)
    assert exponent_sum(band_halftwist(b, 2)) == 2
    assert b.endpoints() == (1, 3)
    moved = b.moved(sigma(3, 4))
    assert moved.endpoints() == (1, 4)


def test_band_endpoint_validation():
    with pytest.raises(BraidError):
        Band(3, 3, strand_count=4)


def test_word_text_round_trip():
    w = parse_word("s1 s2^-2 s1 s1", 4)
    assert format_word(w) == "s1 s2^-2 s1^2"
    assert parse_word(format_word(w), 4) == w
    assert format_word(BraidWord.identity(3)) == "1"
    with pytest.raises(BraidError):
        parse_word("t1", 3)


@settings(max_examples=60, deadline=None)
@given(words())
def test_inverse_cancels(w):
    assert equal(compose(w, invert(w)), BraidWord.identity(w.strand_count))
    assert exponent_sum(invert(w)) == -exponent_sum(w)


@settings(max_examples=60, deadline=None)
@given(words(), st.data())
def test_conjugation_keeps_exponent_sum(w, data):
    n = w.strand_count
    by = data.draw(st.lists(st.tuples(st.integers(1, n - 1), st.sampled_from((1, -1))), max_size=10))
    by = BraidWord(n, tuple(by))
    assert exponent_sum(conjugate(w, by)) == exponent_sum(w)


def test_equal_is_not_trivially_true():
    rng = random.Random(3)
    for _ in range(50):
        n = rng.randint(3, 7)
        i = rng.randint(1, n - 1)
        assert not equal(sigma(i, n), sigma(i, n, 2))
