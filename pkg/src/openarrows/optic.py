"""Optics over a base arrow, their canonical forms, and optic contexts.

An optic between pair objects routes the forward pass through a hidden
residual carrier that the backward pass may consult.  Optics are taken up
to "sliding" a base map across the residual; over the cartesian base the
quotient is decided by canonicalizing to a lens, and in general equality
is three-valued.  The grade-indexed view (one component per base
morphism between residual carriers) exposes the same data as a graded
arrow, and the optic-shaped context re-injects spectator carriers into
the residual rather than splitting points.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Any, Callable

from .arrow import ArrowInstance, left_strength
from .base import PAIR, PAIR_I, BaseMap, PairObj, SET
from .bimodule import Bimodule, ContextStruct, CtxPair
from .finset import (
    STAR,
    CompositionError,
    DomainError,
    FinFun,
    FinSet,
    all_funs,
    product,
)
from .grading import GradedArrow, SizeError
from .lens import Lens, all_lenses, cont_lens, lens_key, point_lens

DEFAULT_RESIDUAL_CAP = 8


class UnsupportedBaseError(DomainError):
    """An operation needing the cartesian base got something else."""


@dataclass(frozen=True)
class Optic:
    """A residual carrier with a left part into it and a right part out of it."""

    src: PairObj
    dst: PairObj
    residual: Any  # an object of the inner arrow's base
    left: Any  # A(X, P (x) Y)
    right: Any  # A(P (x) R, S)


def set_hom_arrow(objects: list[FinSet]) -> ArrowInstance:
    """The identity arrow on finite sets: the inner arrow of cartesian optics."""
    from .arrow import hom_arrow

    return hom_arrow(SET, objects)


def optic_pure(a_inst: ArrowInstance, m: BaseMap) -> Optic:
    """Embed a pair-base map with the unit carrier as residual."""
    c = a_inst.base
    unit = c.unit
    left = a_inst.pure(c.compose(m.fwd, c.inv(c.lunit(m.dst.fwd))))
    right = a_inst.pure(c.compose(c.lunit(m.dst.bwd), m.bwd))
    return Optic(m.src, m.dst, unit, left, right)


def optic_comp(
    a_inst: ArrowInstance,
    o1: Optic,
    o2: Optic,
    cap: int = DEFAULT_RESIDUAL_CAP,
) -> Optic:
    """Compose optics; the residuals multiply.

    Above the residual cap the composite canonicalizes through a lens
    when the base is cartesian, and is refused otherwise.
    """
    if o1.dst != o2.src:
        raise CompositionError(
            f"cannot compose optic {o1.src}->{o1.dst} with {o2.src}->{o2.dst}"
        )
    c = a_inst.base
    p, q = o1.residual, o2.residual
    pq = c.tensor(p, q)
    if len(pq) > cap:
        if isinstance(o1.left, FinFun):
            return embed_lens(
                lens_comp_via(optic_canonicalize(o1), optic_canonicalize(o2))
            )
        raise SizeError(
            f"composite residual of size {len(pq)} exceeds the cap {cap}"
        )
    y, z = o1.dst.fwd, o2.dst.fwd
    w, r = o2.dst.bwd, o1.dst.bwd
    # X -> P (x) Y -> P (x) (Q (x) Z) -> (P (x) Q) (x) Z
    left = a_inst.comp(
        a_inst.comp(o1.left, left_strength(a_inst, o2.left, p)),
        a_inst.pure(c.inv(c.assoc(p, q, z))),
    )
    # (P (x) Q) (x) W -> P (x) (Q (x) W) -> P (x) R -> S
    right = a_inst.comp(
        a_inst.comp(
            a_inst.pure(c.assoc(p, q, w)),
            left_strength(a_inst, o2.right, p),
        ),
        o1.right,
    )
    return Optic(o1.src, o2.dst, pq, left, right)


def optic_strength(a_inst: ArrowInstance, o: Optic, z: PairObj) -> Optic:
    """Pad a spectator pair object; the residual is untouched."""
    c = a_inst.base
    p = o.residual
    x, y = o.src.fwd, o.dst.fwd
    r, s = o.dst.bwd, o.src.bwd
    src = PAIR.tensor(o.src, z)
    dst = PAIR.tensor(o.dst, z)
    # X (x) Z0 -> (P (x) Y) (x) Z0 -> P (x) (Y (x) Z0)
    left = a_inst.comp(
        a_inst.st(o.left, z.fwd), a_inst.pure(c.assoc(p, y, z.fwd))
    )
    # P (x) (R (x) Z1) -> (P (x) R) (x) Z1 -> S (x) Z1
    right = a_inst.comp(
        a_inst.pure(c.inv(c.assoc(p, r, z.bwd))),
        a_inst.st(o.right, z.bwd),
    )
    return Optic(src, dst, p, left, right)


# -- the cartesian canonical form --------------------------------------------

def _require_cartesian(o: Optic) -> None:
    if not (isinstance(o.left, FinFun) and isinstance(o.right, FinFun)):
        raise UnsupportedBaseError(
            "canonicalization needs the identity arrow on finite sets"
        )


def embed_lens(lens: Lens) -> Optic:
    """A lens as an optic: the residual remembers the whole input."""
    x = lens.src.fwd
    left = FinFun.of(
        x, product(x, lens.dst.fwd), lambda v: (v, lens.fwd(v))
    )
    return Optic(lens.src, lens.dst, x, left, lens.bwd)


def optic_canonicalize(o: Optic) -> Lens:
    """The unique lens in an optic's sliding class (cartesian base only)."""
    _require_cartesian(o)
    fwd = FinFun.of(o.src.fwd, o.dst.fwd, lambda x: o.left(x)[1])
    bwd = FinFun.of(
        product(o.src.fwd, o.dst.bwd),
        o.src.bwd,
        lambda xr: o.right((o.left(xr[0])[0], xr[1])),
    )
    return Lens(o.src, o.dst, fwd, bwd)


def lens_comp_via(l1: Lens, l2: Lens) -> Lens:
    from .lens import lens_comp

    return lens_comp(l1, l2)


def optic_equiv(a_inst: ArrowInstance, o1: Optic, o2: Optic) -> bool | None:
    """Sliding-equivalence of optics: True, False, or None for unknown.

    Cartesian base: decide by canonical form.  Otherwise search for a
    single sliding witness between the representatives; its absence does
    not prove inequality, so the answer degrades to None.
    """
    if (o1.src, o1.dst) != (o2.src, o2.dst):
        return False
    if isinstance(o1.left, FinFun) and isinstance(o2.left, FinFun):
        return optic_canonicalize(o1) == optic_canonicalize(o2)
    c = a_inst.base
    if o1.residual == o2.residual:
        if (
            a_inst.equal(o1.left, o2.left) is True
            and a_inst.equal(o1.right, o2.right) is True
        ):
            return True
    for oa, ob in ((o1, o2), (o2, o1)):
        # f : P_a -> P_b slides oa onto ob when
        # ob.left = oa.left ; (f (x) id) and oa.right = (f (x) id) ; ob.right
        y, r = oa.dst.fwd, oa.dst.bwd
        for f in c.morphisms(oa.residual, ob.residual):
            shifted_left = a_inst.comp(
                oa.left, a_inst.pure(c.tensor_mor(f, c.id(y)))
            )
            shifted_right = a_inst.comp(
                a_inst.pure(c.tensor_mor(f, c.id(r))), ob.right
            )
            if (
                a_inst.equal(shifted_left, ob.left) is True
                and a_inst.equal(shifted_right, oa.right) is True
            ):
                return True
    return None


def optic_arrow(
    objects: list[PairObj],
    a_inst: ArrowInstance | None = None,
    cap: int = DEFAULT_RESIDUAL_CAP,
) -> ArrowInstance:
    """The optic arrow over an inner arrow; defaults to the cartesian base.

    Over the cartesian base every sliding class contains an embedded
    lens, so the hom enumeration lists exactly those.
    """
    if a_inst is None:
        carriers = sorted(
            {o.fwd for o in objects} | {o.bwd for o in objects},
            key=lambda s: (len(s), repr(s.elements)),
        )
        a_inst = set_hom_arrow(list(carriers))

    def hom(x, y):
        return [embed_lens(lens) for lens in all_lenses(x, y)]

    return ArrowInstance(
        name=f"optic({a_inst.name})",
        base=PAIR,
        objects=list(objects),
        hom=hom,
        pure=lambda m: optic_pure(a_inst, m),
        comp=lambda o1, o2: optic_comp(a_inst, o1, o2, cap),
        st=lambda o, z: optic_strength(a_inst, o, z),
        equal=lambda o1, o2: optic_equiv(a_inst, o1, o2),
        key=lambda o: lens_key(optic_canonicalize(o)),
        commutative=True,
    )


# -- the grade-indexed view ---------------------------------------------------
#
# A coend over residuals unrolls to a colimit indexed by base morphisms
# f : P' -> P between residual carriers: a component at grade f keeps its
# left part at P' and its right part at P.  Reindexing along commuting
# squares of bijections is the grade-isomorphism relation.

@dataclass(frozen=True)
class TwGrade:
    f: FinFun  # P' -> P

    @property
    def left_res(self):
        return self.f.dom

    @property
    def right_res(self):
        return self.f.cod

    def __len__(self):
        # size proxy used by index bounds
        return max(len(self.f.dom), len(self.f.cod))


@dataclass(frozen=True)
class TwIso:
    """A commuting square of bijections between two grades."""

    u: FinFun  # between the left residuals
    v: FinFun  # between the right residuals


@dataclass(frozen=True)
class TwElement:
    src: PairObj
    dst: PairObj
    grade: TwGrade
    left: Any  # A(X, P' (x) Y)
    right: Any  # A(P (x) R, S)


def _tw_isos(c, q: TwGrade, p: TwGrade) -> list[TwIso]:
    out = []
    for u in c.isos(q.left_res, p.left_res):
        lhs = c.compose(u, p.f)
        for v in c.isos(q.right_res, p.right_res):
            if lhs == c.compose(q.f, v):
                out.append(TwIso(u, v))
    return out


def twisted_grading(
    a_inst: ArrowInstance,
    objects: list[PairObj],
    grades: list[TwGrade] | None = None,
    member_pool: Callable[[Any, Any], list] | None = None,
) -> GradedArrow:
    """Optic components as a graded arrow over residual-carrier morphisms."""
    c = a_inst.base
    unit_grade = TwGrade(c.id(c.unit))
    if grades is None:
        bit = FinSet((0, 1))
        grades = [unit_grade] + [TwGrade(f) for f in all_funs(bit, bit)]
    pool = member_pool or a_inst.hom_cached

    def hom(g: TwGrade, x: PairObj, y: PairObj):
        return [
            TwElement(x, y, g, left, right)
            for left in pool(x.fwd, c.tensor(g.left_res, y.fwd))
            for right in pool(c.tensor(g.right_res, y.bwd), x.bwd)
        ]

    def unit(m: BaseMap):
        o = optic_pure(a_inst, m)
        return TwElement(m.src, m.dst, unit_grade, o.left, o.right)

    def gcomp(e1: TwElement, e2: TwElement):
        if e1.dst != e2.src:
            raise CompositionError("graded optic composition: endpoint mismatch")
        g = TwGrade(c.tensor_mor(e1.grade.f, e2.grade.f))
        p1, q1 = e1.grade.left_res, e2.grade.left_res
        p2, q2 = e1.grade.right_res, e2.grade.right_res
        z, w = e2.dst.fwd, e2.dst.bwd
        left = a_inst.comp(
            a_inst.comp(e1.left, left_strength(a_inst, e2.left, p1)),
            a_inst.pure(c.inv(c.assoc(p1, q1, z))),
        )
        right = a_inst.comp(
            a_inst.comp(
                a_inst.pure(c.assoc(p2, q2, w)),
                left_strength(a_inst, e2.right, p2),
            ),
            e1.right,
        )
        return TwElement(e1.src, e2.dst, g, left, right)

    def st(e: TwElement, z: PairObj):
        p, q = e.grade.left_res, e.grade.right_res
        y, r = e.dst.fwd, e.dst.bwd
        left = a_inst.comp(
            a_inst.st(e.left, z.fwd), a_inst.pure(c.assoc(p, y, z.fwd))
        )
        right = a_inst.comp(
            a_inst.pure(c.inv(c.assoc(q, r, z.bwd))),
            a_inst.st(e.right, z.bwd),
        )
        return TwElement(
            PAIR.tensor(e.src, z), PAIR.tensor(e.dst, z), e.grade, left, right
        )

    def regrade(phi: TwIso, e: TwElement):
        # pull a component at grade p back along an iso square from grade q
        y, r = e.dst.fwd, e.dst.bwd
        left = a_inst.comp(
            e.left, a_inst.pure(c.tensor_mor(c.inv(phi.u), c.id(y)))
        )
        right = a_inst.comp(
            a_inst.pure(c.tensor_mor(phi.v, c.id(r))), e.right
        )
        q = TwGrade(c.compose(c.compose(phi.u, e.grade.f), c.inv(phi.v)))
        return TwElement(e.src, e.dst, q, left, right)

    def equal(e1, e2):
        if (e1.src, e1.dst, e1.grade) != (e2.src, e2.dst, e2.grade):
            return False
        ra = a_inst.equal(e1.left, e2.left)
        rb = a_inst.equal(e1.right, e2.right)
        if ra is False or rb is False:
            return False
        return None if (ra is None or rb is None) else True

    def grade_structural(kind: str, args: tuple) -> TwIso:
        from .finset import assoc_iso, lunit_iso, runit_iso, sym_iso

        def both(mk):
            return TwIso(
                mk(*[g.left_res for g in args]),
                mk(*[g.right_res for g in args]),
            )

        if kind == "lunit":
            return both(lambda p: lunit_iso(p).inverse())
        if kind == "runit":
            return both(lambda p: runit_iso(p).inverse())
        if kind == "assoc":
            return both(lambda p, q, r: assoc_iso(p, q, r).inverse())
        if kind == "sym":
            return both(lambda p, q: sym_iso(q, p))
        raise ValueError(f"unknown structural grade iso {kind!r}")

    return GradedArrow(
        name=f"twisted({a_inst.name})",
        base=PAIR,
        objects=list(objects),
        grades=list(grades),
        grade_unit=unit_grade,
        grade_tensor=lambda g1, g2: TwGrade(c.tensor_mor(g1.f, g2.f)),
        grade_isos=lambda q, p: _tw_isos(c, q, p),
        hom=hom,
        unit=unit,
        gcomp=gcomp,
        st=st,
        regrade=regrade,
        equal=equal,
        grade_of=lambda e: e.grade,
        src=lambda e: e.src,
        dst=lambda e: e.dst,
        key=None,
        commutative=a_inst.commutative,
        grade_structural=grade_structural,
    )


def tw_source_end(a_inst: ArrowInstance, e: TwElement) -> Optic:
    """The optic a graded component represents, read at the left residual."""
    c = a_inst.base
    r = e.dst.bwd
    right = a_inst.comp(
        a_inst.pure(c.tensor_mor(e.grade.f, c.id(r))), e.right
    )
    return Optic(e.src, e.dst, e.grade.left_res, e.left, right)


def tw_target_end(a_inst: ArrowInstance, e: TwElement) -> Optic:
    """The same optic, read at the right residual."""
    c = a_inst.base
    y = e.dst.fwd
    left = a_inst.comp(
        e.left, a_inst.pure(c.tensor_mor(e.grade.f, c.id(y)))
    )
    return Optic(e.src, e.dst, e.grade.right_res, left, e.right)


# -- optic-shaped contexts ----------------------------------------------------
#
# A context for morphisms X -> Y of a commutative arrow G on the pair base:
# a residual pair object bridging a state into it and a continuation out
# of it.  No point-splitting is needed; the costrength re-injects the
# spectator into the residual.

@dataclass(frozen=True)
class OpticCtx:
    src: PairObj
    dst: PairObj
    residual: PairObj
    state: Any  # G(I, Theta (x) Y)
    cont: Any  # G(Theta (x) X, I)


def optic_context(
    g_inst: ArrowInstance,
    residual_pool: list[PairObj],
    canonical_key: Callable[[OpticCtx], Any] | None = None,
) -> ContextStruct:
    """Contexts of an arrow on the pair base, in residual-bridged form.

    ``canonical_key`` (when the sliding quotient is decidable, e.g. for the
    lens arrow) makes equality exact; otherwise equality is three-valued
    via a sliding-witness search on the pair base.
    """
    base = g_inst.base
    unit = base.unit

    def hom(x, y):
        return [
            OpticCtx(x, y, theta, s, k)
            for theta in residual_pool
            for s in g_inst.hom_cached(unit, base.tensor(theta, y))
            for k in g_inst.hom_cached(base.tensor(theta, x), unit)
        ]

    def lact(a, c):
        if g_inst.dst(a) != c.src:
            raise CompositionError("optic context left action: endpoint mismatch")
        cont = g_inst.comp(left_strength(g_inst, a, c.residual), c.cont)
        return OpticCtx(g_inst.src(a), c.dst, c.residual, c.state, cont)

    def ract(c, a):
        if g_inst.src(a) != c.dst:
            raise CompositionError("optic context right action: endpoint mismatch")
        state = g_inst.comp(c.state, left_strength(g_inst, a, c.residual))
        return OpticCtx(c.src, g_inst.dst(a), c.residual, state, cont=c.cont)

    def cst(c, x_obj, y_obj, z_obj):
        # Ctx(X (x) Z, Y (x) Z) -> Ctx(X, Y): absorb Z into the residual.
        theta = c.residual
        enlarged = base.tensor(theta, z_obj)
        # Theta (x) (Y (x) Z) -> Theta (x) (Z (x) Y) -> (Theta (x) Z) (x) Y
        state_iso = base.compose(
            base.tensor_mor(base.id(theta), base.sym(y_obj, z_obj)),
            base.inv(base.assoc(theta, z_obj, y_obj)),
        )
        # (Theta (x) Z) (x) X -> Theta (x) (Z (x) X) -> Theta (x) (X (x) Z)
        cont_iso = base.compose(
            base.assoc(theta, z_obj, x_obj),
            base.tensor_mor(base.id(theta), base.sym(z_obj, x_obj)),
        )
        return OpticCtx(
            x_obj,
            y_obj,
            enlarged,
            g_inst.comp(c.state, g_inst.pure(state_iso)),
            g_inst.comp(g_inst.pure(cont_iso), c.cont),
        )

    def equal(c1, c2):
        if (c1.src, c1.dst) != (c2.src, c2.dst):
            return False
        if canonical_key is not None:
            return canonical_key(c1) == canonical_key(c2)
        if c1.residual == c2.residual:
            if (
                g_inst.equal(c1.state, c2.state) is True
                and g_inst.equal(c1.cont, c2.cont) is True
            ):
                return True
        for ca, cb in ((c1, c2), (c2, c1)):
            for f in base.morphisms(ca.residual, cb.residual):
                pad_y = g_inst.pure(base.tensor_mor(f, base.id(ca.dst)))
                pad_x = g_inst.pure(base.tensor_mor(f, base.id(ca.src)))
                if (
                    g_inst.equal(g_inst.comp(ca.state, pad_y), cb.state) is True
                    and g_inst.equal(g_inst.comp(pad_x, cb.cont), ca.cont) is True
                ):
                    return True
        return None

    key = canonical_key

    bim = Bimodule(
        name=f"opticctx({g_inst.name})",
        arrow=g_inst,
        hom=hom,
        lact=lact,
        ract=ract,
        equal=equal,
        key=key,
        commutative=True,
    )
    return ContextStruct(bimodule=bim, cst=cst)


# -- the lens specialization --------------------------------------------------

def lens_optic_ctx_canonical(c: OpticCtx) -> CtxPair:
    """Collapse a residual-bridged lens context to a (point, continuation) pair.

    The state lens out of the unit picks a point (theta, y); fixing theta
    in the continuation and projecting its coplay recovers the bare
    continuation, which is exactly the sliding-invariant content.
    """
    theta, y = c.state.fwd(STAR)
    cont_fun = FinFun.of(
        c.src.fwd,
        c.src.bwd,
        lambda x: c.cont.coplay((theta, x), STAR)[1],
    )
    return CtxPair(
        c.src, c.dst, point_lens(c.dst, y), cont_lens(c.src, cont_fun)
    )


def lens_optic_context(
    g_inst: ArrowInstance, residual_pool: list[PairObj]
) -> ContextStruct:
    """The optic context of the lens arrow, with decidable equality."""
    from .bimodule import ctx_of_arrow
    from .lens import LENS_PROJECTIONS

    plain = ctx_of_arrow(g_inst, LENS_PROJECTIONS)

    def canonical_key(c: OpticCtx):
        pair = lens_optic_ctx_canonical(c)
        return plain.key(pair)

    return optic_context(g_inst, residual_pool, canonical_key)
