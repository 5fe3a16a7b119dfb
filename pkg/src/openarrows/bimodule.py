"""Bimodules over arrows, contexts, and the equilibrium product arrow.

A bimodule attaches left and right arrow actions to a hom-family; a
context is additionally equipped with a costrength that strips a tensor
factor.  Functions from contexts into a commutative monoid form the
equilibrium bimodule, and bundling an arrow with such a bimodule yields
the arrow whose morphisms are play/coplay data together with an
equilibrium predicate.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from typing import Any, Callable

from .arrow import ArrowInstance, dimap, left_strength
from .finset import CompositionError, DomainError, Monoid
from .lens import PointProjections


@dataclass
class MonoidOnProfunctor:
    """Pointwise monoid structure on a hom-family."""

    e: Callable[[Any, Any], Any]  # (X, Y) -> unit element of B(X, Y)
    m: Callable[[Any, Any], Any]  # (b, b') -> b''
    commutative: bool = True


@dataclass
class Bimodule:
    """A hom-family with compatible left and right actions of an arrow."""

    name: str
    arrow: ArrowInstance
    hom: Callable[[Any, Any], list]
    lact: Callable[[Any, Any], Any]  # A(X,Y) x B(Y,Z) -> B(X,Z)
    ract: Callable[[Any, Any], Any]  # B(X,Y) x A(Y,Z) -> B(X,Z)
    equal: Callable[[Any, Any], bool | None]
    src: Callable[[Any], Any] = operator.attrgetter("src")
    dst: Callable[[Any], Any] = operator.attrgetter("dst")
    key: Callable[[Any], Any] | None = None
    st: Callable[[Any, Any], Any] | None = None
    monoid: MonoidOnProfunctor | None = None
    commutative: bool = False
    _hom_cache: dict = field(default_factory=dict, repr=False)
    _index_cache: dict = field(default_factory=dict, repr=False)

    def hom_cached(self, x, y) -> list:
        k = (x, y)
        if k not in self._hom_cache:
            self._hom_cache[k] = list(self.hom(x, y))
        return self._hom_cache[k]

    def index(self, x, y) -> dict:
        """Canonical-key -> position map for the enumeration of B(X, Y)."""
        k = (x, y)
        if k not in self._index_cache:
            if self.key is None:
                raise DomainError(f"bimodule {self.name!r} has no canonical key")
            self._index_cache[k] = {
                self.key(b): i for i, b in enumerate(self.hom_cached(x, y))
            }
        return self._index_cache[k]

    def dimap(self, f, b, g):
        """Reindex along base maps using the actions and the arrow's pure."""
        a = self.arrow
        return self.ract(self.lact(a.pure(f), b), a.pure(g))


@dataclass
class ContextStruct:
    """A commutative bimodule with a costrength: the home of game contexts."""

    bimodule: Bimodule
    # cst(b, X, Y, Z): B(X (x) Z, Y (x) Z) -> B(X, Y); factors passed
    # explicitly because tensors are not syntactically split.
    cst: Callable[[Any, Any, Any, Any], Any]

    def cst_left(self, b, x_obj, y_obj, z_obj):
        """Strip a factor on the left by conjugating with the symmetry."""
        base = self.bimodule.arrow.base
        moved = self.bimodule.dimap(
            base.sym(x_obj, z_obj), b, base.sym(z_obj, y_obj)
        )
        return self.cst(moved, x_obj, y_obj, z_obj)

    # convenience passthroughs
    @property
    def arrow(self):
        return self.bimodule.arrow

    def hom_cached(self, x, y):
        return self.bimodule.hom_cached(x, y)

    def key(self, b):
        return self.bimodule.key(b)

    def index(self, x, y):
        return self.bimodule.index(x, y)


# -- the canonical context of an arrow with projection at points -------------

@dataclass(frozen=True)
class CtxPair:
    """A context: a global point of the target and a continuation off the source.

    An element of Ctx(X, Y): ``state`` lives in A(I, Y), ``cont`` in A(X, I).
    """

    src: Any
    dst: Any
    state: Any
    cont: Any


def ctx_of_arrow(a_inst: ArrowInstance, proj: PointProjections) -> ContextStruct:
    """Contexts as (point, continuation) pairs, for arrows that can split points."""
    if proj is None:
        raise DomainError(
            f"arrow {a_inst.name!r} has no projection at points; cannot build contexts"
        )
    base = a_inst.base
    unit = base.unit

    def hom(x, y):
        return [
            CtxPair(x, y, j, k)
            for j in a_inst.hom_cached(unit, y)
            for k in a_inst.hom_cached(x, unit)
        ]

    def lact(s, c):
        # A(X,Y) x Ctx(Y,Z) -> Ctx(X,Z): prepend s to the continuation.
        if a_inst.dst(s) != c.src:
            raise CompositionError("context left action: endpoint mismatch")
        return CtxPair(a_inst.src(s), c.dst, c.state, a_inst.comp(s, c.cont))

    def ract(c, a):
        # Ctx(X,Y) x A(Y,Z) -> Ctx(X,Z): extend the state by a.
        if a_inst.src(a) != c.dst:
            raise CompositionError("context right action: endpoint mismatch")
        return CtxPair(c.src, a_inst.dst(a), a_inst.comp(c.state, a), c.cont)

    def cst(c, x_obj, y_obj, z_obj):
        # Ctx(X (x) Z, Y (x) Z) -> Ctx(X, Y): split the state's point, pad the
        # spectator half onto the continuation.
        p0 = proj.p0(c.state, y_obj, z_obj)
        p1 = proj.p1(c.state, y_obj, z_obj)
        # pad the spectator point on the left of X, deleting the unit factor:
        # A(I, Z) -> A(X (x) I, X (x) Z) -> A(X, X (x) Z)
        padded = dimap(
            a_inst,
            base.inv(base.runit(x_obj)),
            left_strength(a_inst, p1, x_obj),
            base.id(base.tensor(x_obj, z_obj)),
        )
        return CtxPair(x_obj, y_obj, p0, a_inst.comp(padded, c.cont))

    key = None
    if a_inst.key is not None:
        key = lambda c: (a_inst.key(c.state), a_inst.key(c.cont))  # noqa: E731

    bim = Bimodule(
        name=f"ctx({a_inst.name})",
        arrow=a_inst,
        hom=hom,
        lact=lact,
        ract=ract,
        equal=lambda c1, c2: c1 == c2,
        key=key,
        commutative=True,
    )
    return ContextStruct(bimodule=bim, cst=cst)


# -- the equilibrium bimodule ------------------------------------------------

@dataclass(frozen=True)
class EqFun:
    """A monoid-valued function on contexts, tabulated over their enumeration.

    An element of Eq(X, Y); ``values[i]`` is the value at the i-th element
    of Ctx(Y, X) in enumeration order.
    """

    src: Any
    dst: Any
    values: tuple


def eq_tabulate(ctx: ContextStruct, x_obj, y_obj, fn: Callable) -> EqFun:
    return EqFun(
        x_obj, y_obj, tuple(fn(c) for c in ctx.hom_cached(y_obj, x_obj))
    )


def eq_apply(ctx: ContextStruct, h: EqFun, c: CtxPair):
    pos = ctx.index(h.dst, h.src)[ctx.key(c)]
    return h.values[pos]


def eq_from_context(
    ctx: ContextStruct, m_monoid: Monoid, value_pool: list | None = None
) -> Bimodule:
    """Functions from contexts into a commutative monoid, as a bimodule.

    ``value_pool`` bounds the enumeration of predicate tables for law
    checking; it defaults to the monoid's carrier and must be supplied for
    infinite monoids such as the witness multisets.
    """
    if not m_monoid.commutative:
        raise DomainError(
            f"monoid {m_monoid.name!r} is not commutative; "
            "the equilibrium bimodule would not be commutative"
        )
    if value_pool is None:
        if m_monoid.carrier is None:
            raise DomainError(
                f"monoid {m_monoid.name!r} is infinite; supply a value pool"
            )
        value_pool = list(m_monoid.carrier.elements)
    a_inst = ctx.arrow

    def hom(x, y):
        import itertools

        ctxs = ctx.hom_cached(y, x)
        return [
            EqFun(x, y, values)
            for values in itertools.product(value_pool, repeat=len(ctxs))
        ]

    def lact(a, h):
        # A(X,Y) x Eq(Y,Z) -> Eq(X,Z): judge extended-by-a contexts.
        x, z = a_inst.src(a), h.dst
        return eq_tabulate(
            ctx, x, z, lambda b: eq_apply(ctx, h, ctx.bimodule.ract(b, a))
        )

    def ract(h, a):
        # Eq(X,Y) x A(Y,Z) -> Eq(X,Z): judge contexts with a prepended.
        x, z = h.src, a_inst.dst(a)
        return eq_tabulate(
            ctx, x, z, lambda b: eq_apply(ctx, h, ctx.bimodule.lact(a, b))
        )

    def st(h, z_obj):
        base = a_inst.base
        x, y = h.src, h.dst
        xz, yz = base.tensor(x, z_obj), base.tensor(y, z_obj)
        return eq_tabulate(
            ctx, xz, yz, lambda b: eq_apply(ctx, h, ctx.cst(b, y, x, z_obj))
        )

    monoid = MonoidOnProfunctor(
        e=lambda x, y: eq_tabulate(ctx, x, y, lambda _: m_monoid.unit),
        m=lambda h1, h2: EqFun(
            h1.src,
            h1.dst,
            tuple(m_monoid.op(v1, v2) for v1, v2 in zip(h1.values, h2.values)),
        ),
        commutative=m_monoid.commutative,
    )

    return Bimodule(
        name=f"eq({a_inst.name}, {m_monoid.name})",
        arrow=a_inst,
        hom=hom,
        lact=lact,
        ract=ract,
        equal=lambda h1, h2: h1 == h2,
        key=lambda h: (h.values,),
        st=st,
        monoid=monoid,
        commutative=True,
    )


# -- bundling an arrow with a monoid bimodule --------------------------------

@dataclass(frozen=True)
class WithBMor:
    """A morphism of the product arrow: arrow part plus bimodule part."""

    inner: Any
    extra: Any

    @property
    def src(self):
        return self.inner.src

    @property
    def dst(self):
        return self.inner.dst


def with_bimodule(a_inst: ArrowInstance, bim: Bimodule) -> ArrowInstance:
    """The product arrow of an arrow and a strong monoid bimodule over it."""
    if bim.monoid is None:
        raise DomainError(f"bimodule {bim.name!r} has no monoid structure")
    if bim.st is None:
        raise DomainError(f"bimodule {bim.name!r} has no strength")
    mon = bim.monoid

    def hom(x, y):
        return [
            WithBMor(a, b)
            for a in a_inst.hom_cached(x, y)
            for b in bim.hom_cached(x, y)
        ]

    def pure(m):
        a = a_inst.pure(m)
        return WithBMor(a, mon.e(a_inst.src(a), a_inst.dst(a)))

    def comp(m1, m2):
        return WithBMor(
            a_inst.comp(m1.inner, m2.inner),
            mon.m(bim.lact(m1.inner, m2.extra), bim.ract(m1.extra, m2.inner)),
        )

    def st(m, z):
        return WithBMor(a_inst.st(m.inner, z), bim.st(m.extra, z))

    def equal(m1, m2):
        ea = a_inst.equal(m1.inner, m2.inner)
        eb = bim.equal(m1.extra, m2.extra)
        if ea is None or eb is None:
            return None if (ea is not False and eb is not False) else False
        return ea and eb

    key = None
    if a_inst.key is not None and bim.key is not None:
        key = lambda m: (a_inst.key(m.inner), bim.key(m.extra))  # noqa: E731

    return ArrowInstance(
        name=f"{a_inst.name}*{bim.name}",
        base=a_inst.base,
        objects=list(a_inst.objects),
        hom=hom,
        pure=pure,
        comp=comp,
        st=st,
        equal=equal,
        key=key,
        commutative=a_inst.commutative and bim.commutative and mon.commutative,
    )


def with_eq(
    a_inst: ArrowInstance,
    ctx: ContextStruct,
    m_monoid: Monoid,
    value_pool: list | None = None,
) -> ArrowInstance:
    """Attach monoid-valued equilibrium predicates to an arrow."""
    arrow = with_bimodule(a_inst, eq_from_context(ctx, m_monoid, value_pool))
    arrow.name = f"witheq({a_inst.name}, {m_monoid.name})"
    return arrow
