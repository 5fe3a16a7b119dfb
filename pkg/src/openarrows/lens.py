"""The concrete lens arrow on the pair base.

A lens from (X, S) to (Y, R) is a forward play map X -> Y together with a
backward coplay map X x R -> S.  Composition threads the coplay back
through the forward pass; strength pads a spectator pair object on the
right.  Backward maps are stored uncurried as tables on the product
carrier so that equality stays a table comparison.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .arrow import ArrowInstance
from .base import PAIR, PAIR_I, BaseMap, PairObj
from .finset import (
    STAR,
    CompositionError,
    DomainError,
    FinFun,
    FinSet,
    all_funs,
    fun_compose,
    product,
)


@dataclass(frozen=True)
class Lens:
    src: PairObj
    dst: PairObj
    fwd: FinFun  # src.fwd -> dst.fwd
    bwd: FinFun  # src.fwd x dst.bwd -> src.bwd

    def __post_init__(self):
        if self.fwd.dom != self.src.fwd or self.fwd.cod != self.dst.fwd:
            raise CompositionError("lens forward map has wrong endpoints")
        if (
            self.bwd.dom != product(self.src.fwd, self.dst.bwd)
            or self.bwd.cod != self.src.bwd
        ):
            raise CompositionError("lens backward map has wrong endpoints")

    def play(self, x):
        return self.fwd(x)

    def coplay(self, x, r):
        return self.bwd((x, r))


def lens_key(lens: Lens):
    return (
        lens.src.fwd.elements,
        lens.src.bwd.elements,
        lens.dst.fwd.elements,
        lens.dst.bwd.elements,
        lens.fwd.table,
        lens.bwd.table,
    )


def lens_pure(m: BaseMap) -> Lens:
    """Embed a base map as a lens whose coplay ignores the state."""
    bwd = FinFun.of(
        product(m.src.fwd, m.dst.bwd), m.src.bwd, lambda xr: m.bwd(xr[1])
    )
    return Lens(m.src, m.dst, m.fwd, bwd)


def identity_lens(x: PairObj) -> Lens:
    return lens_pure(PAIR.id(x))


def lens_comp(l1: Lens, l2: Lens) -> Lens:
    if l1.dst != l2.src:
        raise CompositionError(
            f"cannot compose lens {l1.src}->{l1.dst} with {l2.src}->{l2.dst}"
        )
    fwd = fun_compose(l1.fwd, l2.fwd)
    bwd = FinFun.of(
        product(l1.src.fwd, l2.dst.bwd),
        l1.src.bwd,
        lambda xq: l1.coplay(xq[0], l2.coplay(l1.fwd(xq[0]), xq[1])),
    )
    return Lens(l1.src, l2.dst, fwd, bwd)


def lens_strength(lens: Lens, z: PairObj) -> Lens:
    src = PAIR.tensor(lens.src, z)
    dst = PAIR.tensor(lens.dst, z)
    fwd = FinFun.of(src.fwd, dst.fwd, lambda xz: (lens.fwd(xz[0]), xz[1]))
    bwd = FinFun.of(
        product(src.fwd, dst.bwd),
        src.bwd,
        lambda p: (lens.coplay(p[0][0], p[1][0]), p[1][1]),
    )
    return Lens(src, dst, fwd, bwd)


def all_lenses(x: PairObj, y: PairObj) -> list[Lens]:
    return [
        Lens(x, y, f, g)
        for f in all_funs(x.fwd, y.fwd)
        for g in all_funs(product(x.fwd, y.bwd), x.bwd)
    ]


def lens_arrow(objects: list[PairObj]) -> ArrowInstance:
    return ArrowInstance(
        name="lens",
        base=PAIR,
        objects=list(objects),
        hom=all_lenses,
        pure=lens_pure,
        comp=lens_comp,
        st=lens_strength,
        equal=lambda a, b: a == b,
        key=lens_key,
        commutative=True,
    )


# -- global points and continuations ----------------------------------------
#
# X = Lens(I, (X, S)) up to iso: a lens out of the unit picks a point of X
# and has trivial coplay.  Dually Lens((Y, R), I) = Y -> R: a continuation.

def point_lens(x_obj: PairObj, x) -> Lens:
    if x not in x_obj.fwd:
        raise DomainError(f"{x!r} not in {x_obj.fwd}")
    fwd = FinFun.of(PAIR_I.fwd, x_obj.fwd, lambda _: x)
    bwd = FinFun.of(
        product(PAIR_I.fwd, x_obj.bwd), PAIR_I.bwd, lambda _: STAR
    )
    return Lens(PAIR_I, x_obj, fwd, bwd)


def lens_point(lens: Lens):
    if lens.src != PAIR_I:
        raise DomainError("not a point: source is not the unit pair object")
    return lens.fwd(STAR)


def cont_lens(y_obj: PairObj, k: FinFun) -> Lens:
    if k.dom != y_obj.fwd or k.cod != y_obj.bwd:
        raise DomainError("continuation table has wrong endpoints")
    fwd = FinFun.of(y_obj.fwd, PAIR_I.fwd, lambda _: STAR)
    bwd = FinFun.of(
        product(y_obj.fwd, PAIR_I.bwd), y_obj.bwd, lambda p: k(p[0])
    )
    return Lens(y_obj, PAIR_I, fwd, bwd)


def lens_cont(lens: Lens) -> FinFun:
    if lens.dst != PAIR_I:
        raise DomainError("not a continuation: target is not the unit pair object")
    return FinFun.of(lens.src.fwd, lens.src.bwd, lambda y: lens.coplay(y, STAR))


# -- projection at points ----------------------------------------------------

def lens_proj_points(j: Lens, x_obj: PairObj, x2_obj: PairObj) -> tuple[Lens, Lens]:
    """Split a global point of a tensor into points of the two factors."""
    if j.src != PAIR_I:
        raise DomainError("projection at points needs a morphism out of the unit")
    if j.dst != PAIR.tensor(x_obj, x2_obj):
        raise DomainError("target does not decompose as the stated tensor")
    x, x2 = j.fwd(STAR)
    return point_lens(x_obj, x), point_lens(x2_obj, x2)


@dataclass(frozen=True)
class PointProjections:
    """The pair of splitting maps an arrow may carry on its global points."""

    p0: object  # (j, X, X') -> morphism I -> X
    p1: object  # (j, X, X') -> morphism I -> X'


LENS_PROJECTIONS = PointProjections(
    p0=lambda j, x_obj, x2_obj: lens_proj_points(j, x_obj, x2_obj)[0],
    p1=lambda j, x_obj, x2_obj: lens_proj_points(j, x_obj, x2_obj)[1],
)


def curry_coplay(lens: Lens) -> dict:
    """State-indexed view of the backward map (for the comonadic reading)."""
    out = {}
    for x in lens.src.fwd:
        out[x] = FinFun.of(
            lens.dst.bwd, lens.src.bwd, lambda r, x=x: lens.coplay(x, r)
        )
    return out


def lens_tensor_pure(m1: BaseMap, m2: BaseMap) -> Lens:
    """pure of a tensor of base maps (used by embedding tests)."""
    return lens_pure(PAIR.tensor_mor(m1, m2))


def enumerate_points(x_obj: PairObj) -> list[Lens]:
    return [point_lens(x_obj, x) for x in x_obj.fwd]


def enumerate_conts(y_obj: PairObj) -> list[Lens]:
    return [cont_lens(y_obj, k) for k in all_funs(y_obj.fwd, y_obj.bwd)]
