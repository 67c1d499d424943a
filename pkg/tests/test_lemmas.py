import pytest
from hypothesis import given
from hypothesis import strategies as st

from bisplit_dbe.lemmas import (
    LEMMA2_SOLUTIONS,
    LemmaDomain,
    ceil_div,
    discriminant_factor,
    lemma1_check,
    lemma2_holds,
    lemma2_solution_set,
    trinomial,
    trinomial_implication_check,
)


@pytest.mark.parametrize("x,y", [(1, 1), (2, 2), (5, 3)])
def test_lemma1_examples(x, y):
    assert lemma1_check(x, y)


def test_lemma1_on_grid():
    assert all(lemma1_check(x, y) for x, y in LemmaDomain(60, 60).points())


@pytest.mark.parametrize("x,y,expected", [(2, 2, True), (3, 3, True), (4, 3, False)])
def test_lemma2_examples(x, y, expected):
    assert lemma2_holds(x, y) is expected


def test_lemma2_solution_sets():
    assert lemma2_solution_set(LemmaDomain(100, 100)) == LEMMA2_SOLUTIONS == {(1, 2), (2, 2), (3, 3)}
    assert lemma2_solution_set(LemmaDomain(1, 1)) == set()
    assert lemma2_solution_set(LemmaDomain(3, 3)) == {(1, 2), (2, 2), (3, 3)}


def test_trinomial():
    assert trinomial(3, 3) == -18
    assert not lemma2_holds(5, 2)
    assert trinomial_implication_check(LemmaDomain(100, 100))
    assert [y for y in range(1, 10) if discriminant_factor(y) >= 0] == [1, 2, 3, 4]


def test_domain_validation():
    with pytest.raises(ValueError):
        LemmaDomain(0, 5)
    with pytest.raises(ValueError):
        lemma2_holds(0, 3)


@given(st.integers(0, 10**6), st.integers(1, 10**4))
def test_ceil_div(a, b):
    q = ceil_div(a, b)
    assert q * b >= a > (q - 1) * b or (a == 0 and q == 0)


@given(st.integers(1, 400), st.integers(5, 400))
def test_lemma2_never_holds_for_large_y(x, y):
    assert not lemma2_holds(x, y)
