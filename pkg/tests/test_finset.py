"""Carrier-level basics: finite sets, functions, monoids, distributions."""

from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from openarrows.finset import (
    BOOL_AND,
    RAT_ALGEBRA,
    STAR,
    UNIT,
    WITNESSES,
    CompositionError,
    Dist,
    DomainError,
    FinFun,
    FinSet,
    all_funs,
    dist_bind,
    dist_expectation,
    dist_product,
    dist_pure,
    fun_compose,
    product,
    witnesses_empty,
)

B = FinSet((0, 1))
T = FinSet(("a", "b", "c"))


def test_finset_keeps_order_and_rejects_duplicates():
    assert FinSet((2, 0, 1)).elements == (2, 0, 1)
    with pytest.raises(DomainError):
        FinSet((0, 0))


def test_finfun_is_total_and_extensional():
    f = FinFun.of(B, B, lambda x: 1 - x)
    g = FinFun.of(B, B, {0: 1, 1: 0})
    assert f == g
    assert f(0) == 1 and f(1) == 0
    with pytest.raises(DomainError):
        f(2)


def test_fun_compose_checks_endpoints():
    f = FinFun.of(B, T, lambda x: "ab"[x])
    g = FinFun.of(T, B, lambda c: int(c == "b"))
    assert fun_compose(f, g)(0) == 0
    with pytest.raises(CompositionError):
        fun_compose(g, g)


def test_all_funs_counts_and_product_is_row_major():
    assert len(all_funs(B, T)) == 9
    assert product(B, B).elements == ((0, 0), (0, 1), (1, 0), (1, 1))
    assert UNIT.elements == (STAR,)


def test_monoid_basics():
    assert BOOL_AND.op(True, False) is False
    assert WITNESSES.op(("a",), ("a", "b")) == ("a", "a", "b")
    assert witnesses_empty(WITNESSES.unit)


# ---------- distribution monad laws ----------

_POOL = ("x", "y", "z")


@st.composite
def dists(draw) -> Dist:
    support = draw(
        st.lists(st.sampled_from(_POOL), min_size=1, max_size=3, unique=True)
    )
    # denominators stay <= 4 so every weight is a small exact rational
    raw = [draw(st.integers(min_value=0, max_value=4)) for _ in support]
    if sum(raw) == 0:
        raw[0] = 1
    total = sum(raw)
    return Dist([(x, Fraction(n, total)) for x, n in zip(support, raw)])


def _k1(x: str) -> Dist:
    return dist_pure(x.upper())


def _k2(x: str) -> Dist:
    if x == "X":
        return Dist([("u", Fraction(1, 2)), ("v", Fraction(1, 2))])
    return dist_pure(x.lower())


@given(st.sampled_from(_POOL))
def test_dist_left_identity(x: str):
    assert dist_bind(dist_pure(x), _k1) == _k1(x)


@given(dists())
def test_dist_right_identity(d: Dist):
    assert dist_bind(d, dist_pure) == d


@given(dists())
def test_dist_associativity(d: Dist):
    lhs = dist_bind(dist_bind(d, _k1), _k2)
    rhs = dist_bind(d, lambda x: dist_bind(_k1(x), _k2))
    assert lhs == rhs


@given(dists())
def test_dist_weights_stay_exact(d: Dist):
    assert sum(w for _, w in d.weights) == 1
    assert all(isinstance(w, Fraction) and w > 0 for _, w in d.weights)


def test_dist_normalizes_support():
    d = Dist([("x", Fraction(1, 2)), ("x", Fraction(1, 2)), ("y", Fraction(0))])
    assert d == dist_pure("x")
    with pytest.raises(DomainError):
        Dist([("x", Fraction(1, 2))])


def test_dist_product_and_expectation():
    d = Dist([(0, Fraction(1, 4)), (1, Fraction(3, 4))])
    assert dist_product(dist_pure("l"), d).weight(("l", 1)) == Fraction(3, 4)
    assert dist_expectation(RAT_ALGEBRA, d.map(Fraction)) == Fraction(3, 4)
