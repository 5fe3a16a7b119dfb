"""Contexts as bimodules and monoid-valued equilibrium predicates."""

from __future__ import annotations

import pytest

from openarrows.base import PAIR, PAIR_I, PairObj, bit_set
from openarrows.bimodule import (
    CtxPair,
    ctx_of_arrow,
    eq_apply,
    eq_from_context,
    eq_tabulate,
    with_bimodule,
    with_eq,
)
from openarrows.finset import BOOL_AND, WITNESSES, DomainError, FinFun, FinSet
from openarrows.lens import (
    LENS_PROJECTIONS,
    cont_lens,
    lens_arrow,
    lens_comp,
    lens_point,
    point_lens,
)

B = bit_set(2)
X = PairObj(B, B)
I = PAIR_I
LENS = lens_arrow([I, X])
CTX = ctx_of_arrow(LENS, LENS_PROJECTIONS)


def _cont(table) -> FinFun:
    return FinFun.of(B, B, table)


def test_contexts_enumerate_point_continuation_pairs():
    ctxs = CTX.hom_cached(X, X)
    # 2 points x 4 continuation tables (B x unit -> B)
    assert len(ctxs) == 2 * 4
    c = ctxs[0]
    assert c.state.src == I and c.cont.dst == I


def test_left_action_prepends_the_continuation():
    c = CtxPair(X, X, point_lens(X, 0), cont_lens(X, _cont({0: 1, 1: 0})))
    s = LENS.hom_cached(X, X)[7]
    out = CTX.bimodule.lact(s, c)
    assert out.state == c.state
    assert out.cont == lens_comp(s, c.cont)


def test_right_action_extends_the_state():
    c = CtxPair(X, X, point_lens(X, 0), cont_lens(X, _cont({0: 1, 1: 0})))
    a = LENS.hom_cached(X, X)[7]
    out = CTX.bimodule.ract(c, a)
    assert out.cont == c.cont
    assert out.state == lens_comp(c.state, a)


def test_costrength_splits_state_and_pads_continuation():
    xx = PAIR.tensor(X, X)
    k = FinFun.of(xx.fwd, xx.bwd, lambda p: p)
    b = CtxPair(xx, xx, point_lens(xx, (1, 0)), cont_lens(xx, k))
    c = CTX.cst(b, X, X, X)
    assert lens_point(c.state) == 1
    # the spectator point 0 is fed to the padded continuation, so the
    # identity table on pairs collapses to the identity on the first factor
    assert c.cont == cont_lens(X, FinFun.of(B, B, lambda y: y))


def test_eq_bimodule_tabulates_over_contexts():
    eq = eq_from_context(CTX, BOOL_AND)
    h = eq_tabulate(CTX, X, X, lambda c: lens_point(c.state) == 0)
    some = CTX.hom_cached(X, X)[3]
    assert eq_apply(CTX, h, some) == (lens_point(some.state) == 0)
    unit = eq.monoid.e(X, X)
    assert eq.monoid.m(unit, h) == h


def test_eq_bimodule_rejects_noncommutative_monoids():
    from openarrows.finset import Monoid

    skew = Monoid("first", lambda a, b: a, None, commutative=False)
    with pytest.raises(DomainError):
        eq_from_context(CTX, skew)


def test_witness_monoid_needs_a_value_pool():
    with pytest.raises(DomainError):
        eq_from_context(CTX, WITNESSES)
    eq = eq_from_context(CTX, WITNESSES, value_pool=[(), (("w",),)])
    assert eq.monoid.commutative


def test_with_eq_pairs_lenses_with_predicates():
    weq = with_eq(lens_arrow([I]), ctx_of_arrow(lens_arrow([I]), LENS_PROJECTIONS),
                  BOOL_AND)
    ms = weq.hom_cached(I, I)
    assert len(ms) == 2  # one lens, two Boolean tables over the one context
    m = ms[0]
    assert weq.comp(m, weq.identity(I)).inner == m.inner


def test_with_bimodule_needs_monoid_and_strength():
    with pytest.raises(DomainError):
        with_bimodule(LENS, CTX.bimodule)
