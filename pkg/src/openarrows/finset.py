"""Finite sets, extensional functions, monoids and exact finite distributions.

Everything downstream (lenses, arrows, games) is interpreted over this
substrate.  Carriers are explicitly enumerated and functions are stored as
tables, so equality of any two values is decidable by comparing tables.
All probability is exact rational arithmetic; there are no tolerances
anywhere in the package.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Iterator, Mapping

Rat = Fraction

STAR = "*"


class DomainError(ValueError):
    """An element or function was used outside its declared carrier."""


class CompositionError(ValueError):
    """Endpoint mismatch when composing functions or morphisms."""


@dataclass(frozen=True)
class FinSet:
    """An explicitly enumerated finite set with a stable element order."""

    elements: tuple

    def __init__(self, elements: Iterable):
        elems = tuple(elements)
        if len(set(elems)) != len(elems):
            raise DomainError(f"duplicate elements in carrier: {elems!r}")
        object.__setattr__(self, "elements", elems)
        object.__setattr__(self, "_index", {x: i for i, x in enumerate(elems)})

    def __contains__(self, x) -> bool:
        return x in self._index

    def __iter__(self) -> Iterator:
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def index(self, x) -> int:
        try:
            return self._index[x]
        except KeyError:
            raise DomainError(f"{x!r} is not an element of {self}") from None

    def __repr__(self) -> str:
        return "{" + ", ".join(map(str, self.elements)) + "}"


UNIT = FinSet((STAR,))


def product(a: FinSet, b: FinSet) -> FinSet:
    """Cartesian product; elements are 2-tuples in row-major order."""
    return FinSet(tuple(itertools.product(a.elements, b.elements)))


@dataclass(frozen=True)
class FinFun:
    """A total function between finite sets, stored positionally.

    ``table[i]`` is the image of ``dom.elements[i]``.  Equality is
    extensional: same dom, cod and table.
    """

    dom: FinSet
    cod: FinSet
    table: tuple

    def __post_init__(self):
        if len(self.table) != len(self.dom):
            raise DomainError("table length does not match domain size")
        for y in self.table:
            if y not in self.cod:
                raise DomainError(f"image {y!r} not in codomain {self.cod}")

    @staticmethod
    def of(dom: FinSet, cod: FinSet, fn: Callable | Mapping) -> "FinFun":
        """Tabulate a callable or mapping immediately."""
        get = fn.__getitem__ if isinstance(fn, Mapping) else fn
        return FinFun(dom, cod, tuple(get(x) for x in dom))

    @staticmethod
    def identity(a: FinSet) -> "FinFun":
        return FinFun(a, a, a.elements)

    @staticmethod
    def const(dom: FinSet, cod: FinSet, y) -> "FinFun":
        if y not in cod:
            raise DomainError(f"{y!r} not in {cod}")
        return FinFun(dom, cod, (y,) * len(dom))

    def __call__(self, x):
        return self.table[self.dom.index(x)]

    # morphism-protocol aliases used by the arrow machinery
    @property
    def src(self) -> FinSet:
        return self.dom

    @property
    def dst(self) -> FinSet:
        return self.cod

    def then(self, g: "FinFun") -> "FinFun":
        return fun_compose(self, g)

    def is_bijection(self) -> bool:
        return len(set(self.table)) == len(self.cod) == len(self.dom)

    def inverse(self) -> "FinFun":
        if not self.is_bijection():
            raise DomainError(f"{self} is not a bijection")
        back = {y: x for x, y in zip(self.dom.elements, self.table)}
        return FinFun.of(self.cod, self.dom, back)


def fun_compose(f: FinFun, g: FinFun) -> FinFun:
    """Diagrammatic composition: first f, then g."""
    if f.cod != g.dom:
        raise CompositionError(
            f"cannot compose {f.dom}->{f.cod} with {g.dom}->{g.cod}"
        )
    gi = g.dom.index
    return FinFun(f.dom, g.cod, tuple(g.table[gi(y)] for y in f.table))


def all_funs(a: FinSet, b: FinSet) -> list[FinFun]:
    """All |b|^|a| functions from a to b, in a deterministic order."""
    return [
        FinFun(a, b, images)
        for images in itertools.product(b.elements, repeat=len(a))
    ]


def all_bijections(a: FinSet, b: FinSet) -> list[FinFun]:
    if len(a) != len(b):
        return []
    return [
        FinFun(a, b, perm) for perm in itertools.permutations(b.elements)
    ]


def tensor_fun(f: FinFun, g: FinFun) -> FinFun:
    """f x g on product carriers."""
    dom = product(f.dom, g.dom)
    cod = product(f.cod, g.cod)
    return FinFun.of(dom, cod, lambda xy: (f(xy[0]), g(xy[1])))


# -- canonical structural bijections ----------------------------------------

def sym_iso(a: FinSet, b: FinSet) -> FinFun:
    """(x, y) |-> (y, x)."""
    return FinFun.of(product(a, b), product(b, a), lambda p: (p[1], p[0]))


def assoc_iso(a: FinSet, b: FinSet, c: FinSet) -> FinFun:
    """((x, y), z) |-> (x, (y, z))."""
    return FinFun.of(
        product(product(a, b), c),
        product(a, product(b, c)),
        lambda p: (p[0][0], (p[0][1], p[1])),
    )


def runit_iso(a: FinSet) -> FinFun:
    """(x, *) |-> x."""
    return FinFun.of(product(a, UNIT), a, lambda p: p[0])


def lunit_iso(a: FinSet) -> FinFun:
    """(*, x) |-> x."""
    return FinFun.of(product(UNIT, a), a, lambda p: p[1])


def structural_iso(kind: str, *sets: FinSet) -> FinFun:
    """Dispatch on {assoc, unitor, lunitor, symmetry} by name."""
    builders = {
        "assoc": assoc_iso,
        "symmetry": sym_iso,
        "unitor": runit_iso,
        "lunitor": lunit_iso,
    }
    if kind not in builders:
        raise DomainError(f"unknown structural iso kind {kind!r}")
    try:
        return builders[kind](*sets)
    except TypeError:
        raise DomainError(
            f"malformed shape for {kind!r}: expected "
            f"{'3' if kind == 'assoc' else '2' if kind == 'symmetry' else '1'}"
            f" carriers, got {len(sets)}"
        ) from None


# -- monoids ----------------------------------------------------------------

@dataclass(frozen=True)
class Monoid:
    """A monoid, possibly over an infinite designated carrier.

    ``carrier`` is a FinSet when the monoid is finite and None otherwise
    (exhaustive law checks only apply in the finite case).
    """

    name: str
    op: Callable[[Any, Any], Any]
    unit: Any
    commutative: bool = True
    carrier: FinSet | None = None

    def fold(self, values: Iterable) -> Any:
        acc = self.unit
        for v in values:
            acc = self.op(acc, v)
        return acc


BOOL_AND = Monoid("bool-and", lambda a, b: a and b, True, carrier=FinSet((True, False)))

TRIVIAL = Monoid("trivial", lambda a, b: STAR, STAR, carrier=UNIT)


def _multiset_union(a: tuple, b: tuple) -> tuple:
    return tuple(sorted(a + b, key=repr))


#: Deviation witnesses: finite multisets (sorted tuples) under union.
WITNESSES = Monoid("witness-multiset", _multiset_union, ())


def witnesses_empty(w: tuple) -> bool:
    """The monoid homomorphism WITNESSES -> BOOL_AND."""
    return w == ()


# -- exact finite distributions ---------------------------------------------

@dataclass(frozen=True)
class Dist:
    """A finite distribution with exact rational weights summing to 1.

    Zero-weight points are dropped; the support is kept sorted by repr so
    equal distributions compare equal.
    """

    weights: tuple  # tuple of (element, Fraction) pairs

    def __init__(self, weights):
        items = [(x, Fraction(w)) for x, w in (
            weights.items() if isinstance(weights, Mapping) else weights
        )]
        merged: dict = {}
        for x, w in items:
            if w < 0:
                raise DomainError(f"negative weight {w} at {x!r}")
            merged[x] = merged.get(x, Fraction(0)) + w
        total = sum(merged.values(), Fraction(0))
        if total != 1:
            raise DomainError(f"weights sum to {total}, expected 1")
        cleaned = tuple(sorted(
            ((x, w) for x, w in merged.items() if w != 0), key=lambda p: repr(p[0])
        ))
        object.__setattr__(self, "weights", cleaned)

    @property
    def support(self) -> tuple:
        return tuple(x for x, _ in self.weights)

    def weight(self, x) -> Fraction:
        for y, w in self.weights:
            if y == x:
                return w
        return Fraction(0)

    def map(self, f: Callable) -> "Dist":
        return Dist([(f(x), w) for x, w in self.weights])

    def __repr__(self) -> str:
        return "Dist(" + ", ".join(f"{x}: {w}" for x, w in self.weights) + ")"


def dist_pure(x) -> Dist:
    return Dist([(x, Fraction(1))])


def dist_bind(d: Dist, k: Callable[[Any], Dist]) -> Dist:
    out: list = []
    for x, w in d.weights:
        dx = k(x)
        if not isinstance(dx, Dist):
            raise DomainError(f"continuation returned non-distribution at {x!r}")
        out.extend((y, w * v) for y, v in dx.weights)
    return Dist(out)


def dist_product(d1: Dist, d2: Dist) -> Dist:
    return dist_bind(d1, lambda x: d2.map(lambda y: (x, y)))


@dataclass(frozen=True)
class ConvexAlgebra:
    """An evaluation of finite distributions into a value domain."""

    name: str
    contains: Callable[[Any], bool]
    eval: Callable[[Dist], Any] = field(default=None)  # type: ignore[assignment]

    def expectation(self, d: Dist):
        for x, _ in d.weights:
            if not self.contains(x):
                raise DomainError(f"support element {x!r} outside {self.name}")
        return self.eval(d)


def _rat_expect(d: Dist) -> Fraction:
    return sum((w * Fraction(x) for x, w in d.weights), Fraction(0))


#: Exact rationals with expectation as the evaluation.
RAT_ALGEBRA = ConvexAlgebra(
    "rationals",
    lambda x: isinstance(x, (int, Fraction)),
    _rat_expect,
)


def dist_expectation(alg: ConvexAlgebra, d: Dist):
    return alg.expectation(d)


def all_dists(support: FinSet, denominator: int) -> list[Dist]:
    """All distributions on the carrier with weights of the given denominator."""
    n = len(support)
    out = []
    for cuts in itertools.combinations_with_replacement(range(n), denominator):
        counts = [0] * n
        for c in cuts:
            counts[c] += 1
        out.append(Dist([
            (x, Fraction(c, denominator)) for x, c in zip(support.elements, counts)
        ]))
    return out
