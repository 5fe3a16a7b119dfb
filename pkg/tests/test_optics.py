"""Optics: sliding-canonical forms agree with lenses on the cartesian base."""

from __future__ import annotations

import time

from openarrows.base import PAIR_I, PairObj, bit_set
from openarrows.finset import FinFun, FinSet, product
from openarrows.lens import Lens, all_lenses, lens_comp
from openarrows.optic import (
    embed_lens,
    optic_arrow,
    optic_canonicalize,
    optic_comp,
    optic_equiv,
    set_hom_arrow,
    twisted_grading,
)

B = bit_set(2)
I = PAIR_I
X = PairObj(B, B)
Y = PairObj(B, B)
OBJS = [I, PairObj(B, FinSet(("*",))), PairObj(FinSet(("*",)), B), X]
INNER = set_hom_arrow(sorted({o.fwd for o in OBJS} | {o.bwd for o in OBJS},
                             key=lambda s: repr(s.elements)))
ARROW = optic_arrow(OBJS)


def test_canonicalize_inverts_embedding_on_all_bit_lenses():
    start = time.monotonic()
    count = 0
    for src in OBJS:
        for dst in OBJS:
            for lens in all_lenses(src, dst):
                assert optic_canonicalize(embed_lens(lens)) == lens
                count += 1
    assert count > 100
    assert time.monotonic() - start < 30.0


def test_canonicalization_commutes_with_composition():
    start = time.monotonic()
    for mid in (I, X):
        for l1 in all_lenses(X, mid):
            for l2 in all_lenses(mid, Y):
                direct = lens_comp(l1, l2)
                via = optic_canonicalize(
                    ARROW.comp(embed_lens(l1), embed_lens(l2))
                )
                assert via == direct
    assert time.monotonic() - start < 30.0


def test_sliding_relates_different_residuals():
    lens = all_lenses(X, Y)[5]
    o1 = embed_lens(lens)
    o2 = embed_lens(lens_comp(lens, Lens(
        Y, Y,
        FinFun.of(B, B, lambda v: v),
        FinFun.of(product(B, B), B, lambda p: p[1]),
    )))
    assert optic_equiv(ARROW, o1, o1) is True
    # two distinct canonical forms are genuinely inequivalent
    other = embed_lens(all_lenses(X, Y)[6])
    assert optic_equiv(ARROW, o1, other) is False


def test_composite_residuals_multiply_until_the_cap():
    lens = all_lenses(X, X)[3]
    o = embed_lens(lens)
    oo = optic_comp(INNER, o, o)
    # both residuals have size 2, so the composite remembers 4 states
    assert len(oo.residual) == 4
    ooo = optic_comp(INNER, oo, oo, cap=8)
    # above the cap the cartesian composite re-canonicalizes through a lens
    assert len(ooo.residual) <= 8
    assert optic_canonicalize(ooo) == lens_comp(lens_comp(lens, lens),
                                                lens_comp(lens, lens))


def test_twisted_grading_tracks_residuals():
    g = twisted_grading(INNER, OBJS)
    assert g.grades  # at least the unit residual is registered
