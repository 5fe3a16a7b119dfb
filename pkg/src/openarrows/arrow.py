"""The arrow interface: hom families with pure, composition and strength.

An ``ArrowInstance`` is a first-class value: a bundle of operations over an
explicit finite universe of objects, so that downstream combinators
(equilibrium bundling, strategy indexing, optics) can consume and produce
instances at runtime and the law harness can check them exhaustively.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass, field
from typing import Any, Callable

from .finset import CompositionError


class CommutativityError(ValueError):
    """Parallel tensor requested on an arrow not flagged commutative."""


@dataclass
class ArrowInstance:
    """A strong hom-family with identity lift, composition and strength.

    ``hom(X, Y)`` enumerates the registered morphisms between two objects;
    for big carriers it may enumerate a registered generating pool rather
    than the full set (law reports state which).  ``equal`` may return
    None for "unknown" when the instance's equality is only
    semi-decidable (optics over non-cartesian bases).
    """

    name: str
    base: Any
    objects: list
    hom: Callable[[Any, Any], list]
    pure: Callable[[Any], Any]
    comp: Callable[[Any, Any], Any]
    st: Callable[[Any, Any], Any]
    equal: Callable[[Any, Any], bool | None]
    src: Callable[[Any], Any] = operator.attrgetter("src")
    dst: Callable[[Any], Any] = operator.attrgetter("dst")
    key: Callable[[Any], Any] | None = None
    commutative: bool = False
    _hom_cache: dict = field(default_factory=dict, repr=False)

    def hom_cached(self, x, y) -> list:
        k = (x, y)
        if k not in self._hom_cache:
            self._hom_cache[k] = list(self.hom(x, y))
        return self._hom_cache[k]

    def identity(self, x):
        return self.pure(self.base.id(x))


def dimap(a_inst: ArrowInstance, f, a, g):
    """Reindex a morphism along base maps on both sides: pure(f) ; a ; pure(g)."""
    return a_inst.comp(a_inst.comp(a_inst.pure(f), a), a_inst.pure(g))


def left_strength(a_inst: ArrowInstance, a, z):
    """Pad a tensor factor on the left, via the symmetry of the base."""
    base = a_inst.base
    x, y = a_inst.src(a), a_inst.dst(a)
    return dimap(
        a_inst,
        base.sym(z, x),
        a_inst.st(a, z),
        base.sym(y, z),
    )


def arrow_tensor(a_inst: ArrowInstance, a, b):
    """Run two morphisms side by side.

    Only defined for commutative instances; on a non-commutative instance
    the two candidate composites can disagree, so we refuse.
    """
    if not a_inst.commutative:
        raise CommutativityError(
            f"arrow {a_inst.name!r} is not commutative; parallel tensor refused"
        )
    xb, yb = a_inst.src(b), a_inst.dst(b)
    ya = a_inst.dst(a)
    first = a_inst.st(a, xb)  # X (x) X' -> Y (x) X'
    second = left_strength(a_inst, b, ya)  # Y (x) X' -> Y (x) Y'
    return a_inst.comp(first, second)


def arrow_tensor_flipped(a_inst: ArrowInstance, a, b):
    """The other composite of the commutativity square (for law checks)."""
    xa = a_inst.src(a)
    yb = a_inst.dst(b)
    first = left_strength(a_inst, b, xa)  # X (x) X' -> X (x) Y'
    second = a_inst.st(a, yb)  # X (x) Y' -> Y (x) Y'
    return a_inst.comp(first, second)


def hom_arrow(base, objects: list, name: str | None = None) -> ArrowInstance:
    """The identity arrow of a base: morphisms compose and tensor as given."""
    return ArrowInstance(
        name=name or f"hom({base.name})",
        base=base,
        objects=list(objects),
        hom=base.morphisms,
        pure=lambda m: m,
        comp=base.compose,
        st=lambda m, z: base.tensor_mor(m, base.id(z)),
        equal=operator.eq,
        src=base.src,
        dst=base.dst,
        key=base.mor_key,
        commutative=True,
    )


@dataclass
class InducedCategory:
    """The symmetric monoidal category view of a commutative arrow."""

    arrow: ArrowInstance

    def id(self, x):
        return self.arrow.identity(x)

    def compose(self, a, b):
        return self.arrow.comp(a, b)

    def tensor(self, a, b):
        return arrow_tensor(self.arrow, a, b)

    def embed(self, base_mor):
        """The strict monoidal embedding of the base into the arrow."""
        return self.arrow.pure(base_mor)


def induced_category(a_inst: ArrowInstance) -> InducedCategory:
    if not a_inst.commutative:
        raise CommutativityError(
            f"arrow {a_inst.name!r} is not commutative; no monoidal category"
        )
    return InducedCategory(a_inst)


def check_endpoints(a_inst: ArrowInstance, a, b) -> None:
    if a_inst.dst(a) != a_inst.src(b):
        raise CompositionError(
            f"{a_inst.name}: cannot compose {a_inst.src(a)}->{a_inst.dst(a)} "
            f"with {a_inst.src(b)}->{a_inst.dst(b)}"
        )
