"""Grading: indexed families of morphisms and the colimit that hides them.

A graded arrow keeps per-index hom-families whose composition multiplies
the indices; summing the grading out (``hide``) yields a plain arrow
whose morphisms are families identified up to index bijection.  The
family construction, the parameterisation operator and their bimodule
variants all live here.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Callable

from .arrow import ArrowInstance, left_strength
from .base import BaseMap, PairObj
from .finset import (
    CompositionError,
    FinFun,
    FinSet,
    all_bijections,
    product,
)

#: fam_equal refuses index sets larger than this: composition grows indices
#: multiplicatively and the bijection search must stay tractable.
DEFAULT_INDEX_BOUND = 8


class SizeError(ValueError):
    """An index or residual set exceeded the configured bound."""


@dataclass(frozen=True)
class FamElement:
    """An index set together with one morphism per index."""

    src: Any
    dst: Any
    index: FinSet
    members: tuple  # aligned with index.elements

    def member(self, j):
        return self.members[self.index.index(j)]


def fam_of(src, dst, index: FinSet, fn) -> FamElement:
    return FamElement(src, dst, index, tuple(fn(j) for j in index))


def fam_singleton(src, dst, morphism) -> FamElement:
    return FamElement(src, dst, FinSet((0,)), (morphism,))


def fam_equal(
    a_inst: ArrowInstance,
    e1: FamElement,
    e2: FamElement,
    bound: int = DEFAULT_INDEX_BOUND,
) -> bool:
    """Equality of families up to a bijective relabelling of the index set.

    With a canonical member key this reduces to multiset equality of the
    member keys; otherwise every bijection is tried.
    """
    if e1.src != e2.src or e1.dst != e2.dst:
        raise CompositionError("fam_equal: endpoint mismatch")
    if len(e1.index) > bound or len(e2.index) > bound:
        raise SizeError(
            f"index sets of sizes {len(e1.index)}, {len(e2.index)} exceed "
            f"the bound {bound}"
        )
    if len(e1.index) != len(e2.index):
        return False
    if a_inst.key is not None:
        return sorted(map(a_inst.key, e1.members)) == sorted(
            map(a_inst.key, e2.members)
        )
    for phi in all_bijections(e1.index, e2.index):
        if all(
            a_inst.equal(e1.member(j), e2.member(phi(j))) for j in e1.index
        ):
            return True
    return False


# -- graded arrows -----------------------------------------------------------

@dataclass
class GradedArrow:
    """A grade-indexed hom-family whose composition multiplies grades."""

    name: str
    base: Any
    objects: list
    grades: list
    grade_unit: Any
    grade_tensor: Callable[[Any, Any], Any]
    grade_isos: Callable[[Any, Any], list]
    hom: Callable[[Any, Any, Any], list]  # (grade, X, Y) -> elements
    unit: Callable[[Any], Any]  # base morphism -> element at grade_unit
    gcomp: Callable[[Any, Any], Any]
    st: Callable[[Any, Any], Any]
    regrade: Callable[[Any, Any], Any]  # (grade iso q -> p, elem at p) -> at q
    equal: Callable[[Any, Any], bool | None]
    grade_of: Callable[[Any], Any]
    src: Callable[[Any], Any]
    dst: Callable[[Any], Any]
    key: Callable[[Any], Any] | None = None
    commutative: bool = False
    # canonical structural grade isos, in the direction regrade consumes
    # (an iso q -> p relabels an element at p down to q):
    #   "lunit": p -> 1 (x) p      "runit": p -> p (x) 1
    #   "assoc": p (x) (q (x) r) -> (p (x) q) (x) r
    #   "sym":   q (x) p -> p (x) q
    grade_structural: Callable[[str, tuple], Any] | None = None


@dataclass(frozen=True)
class ParamFamily:
    """A morphism family indexed by a parameter set (one grade's worth)."""

    src: Any
    dst: Any
    grade: FinSet
    members: tuple

    def member(self, j):
        return self.members[self.grade.index(j)]


def default_grades(max_size: int = 2) -> list[FinSet]:
    """Canonical small index sets: {0}, {0,1}, ..."""
    return [FinSet(tuple(range(n))) for n in range(1, max_size + 1)]


GRADE_UNIT = FinSet((0,))


def grade_by_param(
    a_inst: ArrowInstance,
    grades: list[FinSet] | None = None,
    member_pool: Callable[[Any, Any], list] | None = None,
) -> GradedArrow:
    """Tables grade -> A(X, Y), graded by finite sets under product.

    ``member_pool`` bounds which morphisms families draw from during
    enumeration (law checking needs a finite, small pool); operations are
    defined for arbitrary members regardless.
    """
    grades = grades if grades is not None else default_grades()
    pool = member_pool or a_inst.hom_cached

    def hom(p, x, y):
        ms = pool(x, y)
        return [
            ParamFamily(x, y, p, members)
            for members in itertools.product(ms, repeat=len(p))
        ]

    def unit(base_mor):
        a = a_inst.pure(base_mor)
        return ParamFamily(a_inst.src(a), a_inst.dst(a), GRADE_UNIT, (a,))

    def gcomp(e1, e2):
        if e1.dst != e2.src:
            raise CompositionError("graded composition: endpoint mismatch")
        p, q = e1.grade, e2.grade
        pq = product(p, q)
        return ParamFamily(
            e1.src,
            e2.dst,
            pq,
            tuple(a_inst.comp(e1.member(j), e2.member(k)) for j, k in pq),
        )

    def st(e, z):
        zt = a_inst.base.tensor
        return ParamFamily(
            zt(e.src, z),
            zt(e.dst, z),
            e.grade,
            tuple(a_inst.st(m, z) for m in e.members),
        )

    def regrade(phi: FinFun, e: ParamFamily):
        # contravariant relabelling: an index map q -> p pulls a p-family
        # back to a q-family
        if phi.cod != e.grade:
            raise CompositionError("regrade: index map does not target the grade")
        return ParamFamily(
            e.src, e.dst, phi.dom, tuple(e.member(phi(j)) for j in phi.dom)
        )

    def equal(e1, e2):
        if (e1.src, e1.dst, e1.grade) != (e2.src, e2.dst, e2.grade):
            return False
        results = [a_inst.equal(m1, m2) for m1, m2 in zip(e1.members, e2.members)]
        if any(r is False for r in results):
            return False
        return None if any(r is None for r in results) else True

    key = None
    if a_inst.key is not None:
        key = lambda e: (  # noqa: E731
            e.grade.elements,
            tuple(a_inst.key(m) for m in e.members),
        )

    def grade_structural(kind: str, args: tuple) -> FinFun:
        if kind == "lunit":
            (p,) = args
            return FinFun.of(p, product(GRADE_UNIT, p), lambda j: (0, j))
        if kind == "runit":
            (p,) = args
            return FinFun.of(p, product(p, GRADE_UNIT), lambda j: (j, 0))
        if kind == "assoc":
            p, q, r = args
            return FinFun.of(
                product(p, product(q, r)),
                product(product(p, q), r),
                lambda t: ((t[0], t[1][0]), t[1][1]),
            )
        if kind == "sym":
            p, q = args
            return FinFun.of(
                product(q, p), product(p, q), lambda t: (t[1], t[0])
            )
        raise ValueError(f"unknown structural grade iso {kind!r}")

    return GradedArrow(
        name=f"param({a_inst.name})",
        base=a_inst.base,
        objects=list(a_inst.objects),
        grades=list(grades),
        grade_unit=GRADE_UNIT,
        grade_tensor=product,
        grade_isos=all_bijections,
        hom=hom,
        unit=unit,
        gcomp=gcomp,
        st=st,
        regrade=regrade,
        equal=equal,
        grade_of=lambda e: e.grade,
        src=lambda e: e.src,
        dst=lambda e: e.dst,
        key=key,
        commutative=a_inst.commutative,
        grade_structural=grade_structural,
    )


def hide(
    graded: GradedArrow, bound: int = DEFAULT_INDEX_BOUND
) -> ArrowInstance:
    """Sum out the grading: morphisms are graded elements up to grade iso."""

    def hom(x, y):
        out = []
        for p in graded.grades:
            out.extend(graded.hom(p, x, y))
        return out

    def comp(e1, e2):
        out = graded.gcomp(e1, e2)
        if len(graded.grade_of(out)) > bound:
            raise SizeError(
                f"composite index of size {len(graded.grade_of(out))} exceeds "
                f"the bound {bound}"
            )
        return out

    def equal(e1, e2):
        p, q = graded.grade_of(e1), graded.grade_of(e2)
        if (graded.src(e1), graded.dst(e1)) != (graded.src(e2), graded.dst(e2)):
            return False
        if len(p) > bound or len(q) > bound:
            raise SizeError("index sets exceed the fam-equality bound")
        if len(p) != len(q):
            return False
        if graded.key is not None:
            # bijection search collapses to multiset equality of member keys
            return sorted(graded.key(e1)[1]) == sorted(graded.key(e2)[1])
        unknown = False
        for phi in graded.grade_isos(q, p):
            r = graded.equal(graded.regrade(phi, e1), e2)
            if r is True:
                return True
            if r is None:
                unknown = True
        return None if unknown else False

    return ArrowInstance(
        name=f"hide({graded.name})",
        base=graded.base,
        objects=list(graded.objects),
        hom=hom,
        pure=lambda m: graded.unit(m),
        comp=comp,
        st=graded.st,
        equal=equal,
        src=graded.src,
        dst=graded.dst,
        key=None,  # equality is up to regrading; no canonical key
        commutative=graded.commutative,
    )


def fam(
    a_inst: ArrowInstance,
    grades: list[FinSet] | None = None,
    member_pool: Callable[[Any, Any], list] | None = None,
    bound: int = DEFAULT_INDEX_BOUND,
) -> ArrowInstance:
    """Strategy families over an arrow: hide applied to the parameterisation."""
    arrow = hide(grade_by_param(a_inst, grades, member_pool), bound)
    arrow.name = f"fam({a_inst.name})"
    return arrow


def fam_from_graded_element(e: ParamFamily) -> FamElement:
    return FamElement(e.src, e.dst, e.grade, e.members)


# -- the parameterisation operator ------------------------------------------

@dataclass(frozen=True)
class ParaMor:
    """A parameter object plus a morphism consuming it on the left."""

    src: Any  # the declared source X (the inner morphism runs from J (x) X)
    dst: Any
    param: Any  # a base object J
    inner: Any  # A(J (x) X, Y)


def para(
    a_inst: ArrowInstance,
    param_objs: list,
    member_pool: Callable[[Any, Any], list] | None = None,
) -> ArrowInstance:
    """Morphisms with a hidden parameter object tensored onto the source."""
    base = a_inst.base
    pool = member_pool or a_inst.hom_cached

    def hom(x, y):
        return [
            ParaMor(x, y, j, inner)
            for j in param_objs
            for inner in pool(base.tensor(j, x), y)
        ]

    def pure(m):
        x = base.src(m)
        lifted = a_inst.comp(
            a_inst.pure(base.lunit(x)), a_inst.pure(m)
        )
        return ParaMor(x, base.dst(m), base.unit, lifted)

    def comp(p1, p2):
        if p1.dst != p2.src:
            raise CompositionError("para composition: endpoint mismatch")
        j, k, x = p1.param, p2.param, p1.src
        # K (x) (J (x) X) --st'_K(inner1)--> K (x) Y --inner2--> Z
        body = a_inst.comp(left_strength(a_inst, p1.inner, k), p2.inner)
        jk = base.tensor(j, k)
        reshape = base.compose(
            base.tensor_mor(base.sym(j, k), base.id(x)),
            base.assoc(k, j, x),
        )  # (J (x) K) (x) X -> K (x) (J (x) X)
        return ParaMor(
            x, p2.dst, jk, a_inst.comp(a_inst.pure(reshape), body)
        )

    def st(p, z):
        xz = base.tensor(p.src, z)
        reshape = base.inv(base.assoc(p.param, p.src, z))
        # J (x) (X (x) Z) -> (J (x) X) (x) Z
        inner = a_inst.comp(a_inst.pure(reshape), a_inst.st(p.inner, z))
        return ParaMor(xz, base.tensor(p.dst, z), p.param, inner)

    def _block_keys(p):
        # One key per parameter index: restrict the inner morphism to that
        # index by precomposing with the insertion map.  Sound only when the
        # parameter has no contravariant content, so a morphism is exactly
        # the disjoint union of its index blocks and a parameter bijection
        # just permutes them.
        out = []
        jx = base.tensor(p.param, p.src)
        for jv in p.param.fwd:
            ins = BaseMap(
                p.src,
                jx,
                FinFun.of(p.src.fwd, jx.fwd, lambda v, jv=jv: (jv, v)),
                FinFun.of(jx.bwd, p.src.bwd, lambda t: t[1]),
            )
            out.append(a_inst.key(a_inst.comp(a_inst.pure(ins), p.inner)))
        return sorted(out, key=repr)

    def _blockable(p):
        return (
            a_inst.key is not None
            and isinstance(p.param, PairObj)
            and len(p.param.bwd) == 1
        )

    def equal(p1, p2):
        if (p1.src, p1.dst) != (p2.src, p2.dst):
            return False
        if _blockable(p1) and _blockable(p2):
            return _block_keys(p1) == _block_keys(p2)
        unknown = False
        for phi in base.isos(p1.param, p2.param):
            shifted = a_inst.comp(
                a_inst.pure(base.tensor_mor(base.inv(phi), base.id(p1.src))),
                p1.inner,
            )  # reindex p1's inner along phi^-1 to p2's parameter
            r = a_inst.equal(shifted, p2.inner)
            if r is True:
                return True
            if r is None:
                unknown = True
        return None if unknown else False

    return ArrowInstance(
        name=f"para({a_inst.name})",
        base=base,
        objects=list(a_inst.objects),
        hom=hom,
        pure=pure,
        comp=comp,
        st=st,
        equal=equal,
        src=lambda p: p.src,
        dst=lambda p: p.dst,
        key=None,
        commutative=a_inst.commutative,
    )


# -- structural combinators on graded arrows ---------------------------------

def graded_dimap(graded: GradedArrow, f, e, g):
    """pure(f) ; e ; pure(g), with the grade renormalized back to e's."""
    out = graded.gcomp(graded.gcomp(graded.unit(f), e), graded.unit(g))
    # grade is (1 (x) p) (x) 1: peel the units off
    p = graded.grade_of(e)
    lp = graded.grade_tensor(graded.grade_unit, p)
    out = graded.regrade(graded.grade_structural("runit", (lp,)), out)
    return graded.regrade(graded.grade_structural("lunit", (p,)), out)


def graded_left_strength(graded: GradedArrow, e, z):
    base = graded.base
    x, y = graded.src(e), graded.dst(e)
    # the spectator sits on the covariant side only; conjugate by symmetry
    zx = base.sym(z, x)
    yz = base.sym(y, z)
    return graded_dimap(graded, zx, graded.st(e, z), yz)


def graded_tensor(graded: GradedArrow, a, b):
    """Side-by-side composition; the grades tensor."""
    if not graded.commutative:
        raise ValueError(
            f"graded arrow {graded.name!r} is not commutative; tensor refused"
        )
    first = graded.st(a, graded.src(b))
    second = graded_left_strength(graded, b, graded.dst(a))
    return graded.gcomp(first, second)


# -- graded bimodules and the graded product ---------------------------------

@dataclass
class GradedBimodule:
    """A grade-indexed hom-family with graded actions of a graded arrow."""

    name: str
    arrow: GradedArrow
    hom: Callable[[Any, Any, Any], list]
    glact: Callable[[Any, Any], Any]  # A_p(X,Y) x B_q(Y,Z) -> B_pq(X,Z)
    gract: Callable[[Any, Any], Any]  # B_p(X,Y) x A_q(Y,Z) -> B_pq(X,Z)
    regrade: Callable[[Any, Any], Any]
    equal: Callable[[Any, Any], bool | None]
    grade_of: Callable[[Any], Any]
    src: Callable[[Any], Any]
    dst: Callable[[Any], Any]
    st: Callable[[Any, Any], Any] | None = None
    # per-grade pointwise monoid
    e: Callable[[Any, Any, Any], Any] | None = None  # (grade, X, Y) -> elem
    m: Callable[[Any, Any], Any] | None = None
    commutative: bool = False


@dataclass(frozen=True)
class GradedPairMor:
    """A graded-product morphism: arrow part and bimodule part at one grade."""

    arrow_part: Any
    bim_part: Any


def graded_product(graded: GradedArrow, gbim: GradedBimodule) -> GradedArrow:
    """Pair a graded arrow with a graded monoid bimodule, gradewise."""
    if gbim.e is None or gbim.m is None:
        raise CompositionError(
            f"graded bimodule {gbim.name!r} has no per-grade monoid"
        )
    if gbim.st is None:
        raise CompositionError(f"graded bimodule {gbim.name!r} has no strength")

    def hom(p, x, y):
        return [
            GradedPairMor(a, b)
            for a in graded.hom(p, x, y)
            for b in gbim.hom(p, x, y)
        ]

    def unit(base_mor):
        a = graded.unit(base_mor)
        return GradedPairMor(
            a, gbim.e(graded.grade_unit, graded.src(a), graded.dst(a))
        )

    def gcomp(m1, m2):
        return GradedPairMor(
            graded.gcomp(m1.arrow_part, m2.arrow_part),
            gbim.m(
                gbim.glact(m1.arrow_part, m2.bim_part),
                gbim.gract(m1.bim_part, m2.arrow_part),
            ),
        )

    def st(m, z):
        return GradedPairMor(graded.st(m.arrow_part, z), gbim.st(m.bim_part, z))

    def regrade(phi, m):
        return GradedPairMor(
            graded.regrade(phi, m.arrow_part), gbim.regrade(phi, m.bim_part)
        )

    def equal(m1, m2):
        ra = graded.equal(m1.arrow_part, m2.arrow_part)
        rb = gbim.equal(m1.bim_part, m2.bim_part)
        if ra is False or rb is False:
            return False
        return None if (ra is None or rb is None) else True

    return GradedArrow(
        name=f"{graded.name}*{gbim.name}",
        base=graded.base,
        objects=list(graded.objects),
        grades=list(graded.grades),
        grade_unit=graded.grade_unit,
        grade_tensor=graded.grade_tensor,
        grade_isos=graded.grade_isos,
        hom=hom,
        unit=unit,
        gcomp=gcomp,
        st=st,
        regrade=regrade,
        equal=equal,
        grade_of=lambda m: graded.grade_of(m.arrow_part),
        src=lambda m: graded.src(m.arrow_part),
        dst=lambda m: graded.dst(m.arrow_part),
        key=None,
        commutative=graded.commutative and gbim.commutative,
        grade_structural=graded.grade_structural,
    )
