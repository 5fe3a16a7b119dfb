"""Open games: strategy-indexed lenses with context-judged equilibria.

A game bundles a finite strategy set, a lens per strategy, and a
monoid-valued equilibrium judgement per strategy, evaluated lazily at
contexts (a start point plus a payoff continuation).  Sequential and
parallel composition follow the action formulas of the equilibrium
bimodule; a brute-force normal-form oracle provides an independent
check.  Best-response and probabilistic variants carry relations and
distribution-indexed predicates in place of plain judgements.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable

from .arrow import ArrowInstance, arrow_tensor
from .base import PAIR, PAIR_I, BaseMap, PairObj
from .bimodule import (
    Bimodule,
    ContextStruct,
    CtxPair,
    MonoidOnProfunctor,
    WithBMor,
    with_bimodule,
)
from .finset import (
    BOOL_AND,
    STAR,
    UNIT,
    WITNESSES,
    CompositionError,
    Dist,
    DomainError,
    FinFun,
    FinSet,
    Monoid,
    Rat,
    all_funs,
    dist_bind,
    dist_pure,
    product,
)
from .grading import (
    FamElement,
    GradedBimodule,
    GradedPairMor,
    ParamFamily,
    fam_equal,
    grade_by_param,
    graded_product,
    graded_tensor,
)
from .lens import (
    LENS_PROJECTIONS,
    Lens,
    cont_lens,
    lens_arrow,
    lens_comp,
    point_lens,
)
from .bimodule import ctx_of_arrow

_LENS = lens_arrow([])
GAME_CTX: ContextStruct = ctx_of_arrow(_LENS, LENS_PROJECTIONS)


# -- lazily evaluated equilibrium judgements ---------------------------------

@dataclass(frozen=True)
class LazyEq:
    """A monoid-valued function on contexts, kept as a closure.

    Games compose pointwise in the context argument, so tabulating at
    composition time (as the exhaustively checkable bimodule does) would
    enumerate huge intermediate context spaces for nothing.
    """

    src: PairObj
    dst: PairObj
    fn: Callable[[CtxPair], Any]

    def at(self, c: CtxPair):
        return self.fn(c)


def lazy_eq_bimodule(m_monoid: Monoid) -> Bimodule:
    ctx = GAME_CTX

    def no_hom(x, y):
        raise DomainError("lazy equilibrium judgements are not enumerable")

    def lact(a, h):
        return LazyEq(
            _LENS.src(a), h.dst, lambda c: h.fn(ctx.bimodule.ract(c, a))
        )

    def ract(h, a):
        return LazyEq(
            h.src, _LENS.dst(a), lambda c: h.fn(ctx.bimodule.lact(a, c))
        )

    def st(h, z_obj):
        return LazyEq(
            PAIR.tensor(h.src, z_obj),
            PAIR.tensor(h.dst, z_obj),
            lambda c: h.fn(ctx.cst(c, h.dst, h.src, z_obj)),
        )

    def equal(h1, h2):
        if (h1.src, h1.dst) != (h2.src, h2.dst):
            return False
        return all(
            h1.fn(c) == h2.fn(c)
            for c in ctx.hom_cached(h1.dst, h1.src)
        )

    monoid = MonoidOnProfunctor(
        e=lambda x, y: LazyEq(x, y, lambda _: m_monoid.unit),
        m=lambda h1, h2: LazyEq(
            h1.src, h1.dst, lambda c: m_monoid.op(h1.fn(c), h2.fn(c))
        ),
        commutative=m_monoid.commutative,
    )
    return Bimodule(
        name=f"lazyeq({m_monoid.name})",
        arrow=_LENS,
        hom=no_hom,
        lact=lact,
        ract=ract,
        equal=equal,
        st=st,
        monoid=monoid,
        commutative=True,
    )


def game_arrow(m_monoid: Monoid) -> ArrowInstance:
    """Lens plus lazy equilibrium judgement, as a commutative arrow."""
    arrow = with_bimodule(_LENS, lazy_eq_bimodule(m_monoid))
    arrow.name = f"game({m_monoid.name})"
    return arrow


# -- contexts as the user sees them ------------------------------------------

@dataclass(frozen=True)
class GameContext:
    """Where a game starts and how its output is paid off."""

    src: PairObj
    dst: PairObj
    state: Any  # element of src.fwd
    cont: FinFun  # dst.fwd -> dst.bwd

    def to_ctx_pair(self) -> CtxPair:
        return CtxPair(
            self.dst,
            self.src,
            point_lens(self.src, self.state),
            cont_lens(self.dst, self.cont),
        )


def closed_context() -> GameContext:
    return GameContext(
        PAIR_I, PAIR_I, STAR, FinFun.of(UNIT, UNIT, lambda _: STAR)
    )


def trivial_context(g) -> GameContext:
    """The unique context of a closed game (all four carriers singletons)."""
    for carrier in (g.src.fwd, g.dst.fwd, g.dst.bwd):
        if len(carrier) != 1:
            raise DomainError(
                f"game {g.src}->{g.dst} is not closed; supply a context"
            )
    return GameContext(
        g.src,
        g.dst,
        g.src.fwd.elements[0],
        FinFun.of(g.dst.fwd, g.dst.bwd, lambda _: g.dst.bwd.elements[0]),
    )


# -- open games ---------------------------------------------------------------

@dataclass
class OpenGame:
    """A strategy-indexed family of lens-plus-judgement morphisms."""

    monoid: Monoid
    index: FinSet
    members: tuple  # WithBMor(Lens, LazyEq), aligned with index
    arrow: ArrowInstance = field(repr=False)

    @property
    def src(self) -> PairObj:
        return self.members[0].src

    @property
    def dst(self) -> PairObj:
        return self.members[0].dst

    def member(self, j) -> WithBMor:
        return self.members[self.index.index(j)]

    def play(self, j) -> Lens:
        return self.member(j).inner

    def eq_at(self, j, ctx: GameContext | CtxPair):
        c = ctx.to_ctx_pair() if isinstance(ctx, GameContext) else ctx
        if (c.dst, c.src) != (self.src, self.dst):
            raise DomainError(
                f"context for {c.dst}->{c.src} cannot judge a game "
                f"{self.src}->{self.dst}"
            )
        return self.member(j).extra.at(c)

    def fam_element(self) -> FamElement:
        return FamElement(self.src, self.dst, self.index, self.members)


def _mk_game(monoid: Monoid, index: FinSet, members, arrow=None) -> OpenGame:
    return OpenGame(
        monoid=monoid,
        index=index,
        members=tuple(members),
        arrow=arrow if arrow is not None else game_arrow(monoid),
    )


def game_equal(g1: OpenGame, g2: OpenGame) -> bool:
    """Equality up to a bijective strategy relabelling."""
    if g1.monoid.name != g2.monoid.name:
        return False
    return bool(
        fam_equal(g1.arrow, g1.fam_element(), g2.fam_element())
    )


def decision(
    x_set: FinSet,
    y_set: FinSet,
    util: FinSet,
    m_monoid: Monoid = BOOL_AND,
    fail_value: Callable[[list], Any] | None = None,
) -> OpenGame:
    """The atomic choice of a move per observation, judged by weak argmax.

    The utility carrier holds comparable payoff values (rationals).  A
    strategy is in equilibrium at (x, k) when no move beats its own:
    k(j(x)) >= k(y) for every y.  With a non-Boolean monoid the
    judgement emits the unit on success and ``fail_value(deviations)``
    otherwise (deviations = the strictly better moves).
    """
    if len(y_set) == 0:
        raise DomainError("decision needs a non-empty move set")
    if fail_value is None:
        if m_monoid.name == BOOL_AND.name:
            fail_value = lambda devs: False  # noqa: E731
        elif m_monoid.name == WITNESSES.name:
            fail_value = lambda devs: tuple(sorted(devs, key=repr))  # noqa: E731
        else:
            raise DomainError(
                f"no failure value convention for monoid {m_monoid.name!r}"
            )
    src = PairObj(x_set, UNIT)
    dst = PairObj(y_set, util)
    index = FinSet(tuple(all_funs(x_set, y_set)))
    arrow = game_arrow(m_monoid)

    def member(j: FinFun) -> WithBMor:
        bwd = FinFun.of(product(x_set, util), UNIT, lambda _: STAR)
        lens = Lens(src, dst, j, bwd)

        def judge(c: CtxPair):
            x = c.state.fwd(STAR)
            k = lambda y: Fraction(c.cont.coplay(y, STAR))  # noqa: E731
            mine = k(j(x))
            devs = [y for y in y_set if k(y) > mine]
            return m_monoid.unit if not devs else fail_value(devs)

        return WithBMor(lens, LazyEq(src, dst, judge))

    return _mk_game(m_monoid, index, (member(j) for j in index), arrow)


def lift_pure(m: BaseMap, m_monoid: Monoid = BOOL_AND) -> OpenGame:
    """A base map as a game: one strategy, always in equilibrium."""
    arrow = game_arrow(m_monoid)
    return _mk_game(m_monoid, FinSet((STAR,)), (arrow.pure(m),), arrow)


def lift_covariant(
    f: FinFun, bwd_carrier: FinSet = UNIT, m_monoid: Monoid = BOOL_AND
) -> OpenGame:
    m = BaseMap(
        PairObj(f.dom, bwd_carrier),
        PairObj(f.cod, bwd_carrier),
        f,
        FinFun.identity(bwd_carrier),
    )
    return lift_pure(m, m_monoid)


def lift_contravariant(
    g: FinFun, fwd_carrier: FinSet = UNIT, m_monoid: Monoid = BOOL_AND
) -> OpenGame:
    m = BaseMap(
        PairObj(fwd_carrier, g.cod),
        PairObj(fwd_carrier, g.dom),
        FinFun.identity(fwd_carrier),
        g,
    )
    return lift_pure(m, m_monoid)


def payoff_block(u: FinFun, m_monoid: Monoid = BOOL_AND) -> OpenGame:
    """Close a game: consume the final move, pay off along the backward pass."""
    src = PairObj(u.dom, u.cod)
    lens = Lens(
        src,
        PAIR_I,
        FinFun.of(u.dom, UNIT, lambda _: STAR),
        FinFun.of(product(u.dom, UNIT), u.cod, lambda p: u(p[0])),
    )
    arrow = game_arrow(m_monoid)
    eq = LazyEq(src, PAIR_I, lambda _: m_monoid.unit)
    return _mk_game(m_monoid, FinSet((STAR,)), (WithBMor(lens, eq),), arrow)


def seq(g1: OpenGame, g2: OpenGame) -> OpenGame:
    if g1.dst != g2.src:
        raise CompositionError(
            f"cannot sequence a game into {g1.dst} with one out of {g2.src}"
        )
    _check_same_monoid(g1, g2)
    index = product(g1.index, g2.index)
    members = (
        g1.arrow.comp(g1.member(j), g2.member(k)) for j, k in index
    )
    return _mk_game(g1.monoid, index, members, g1.arrow)


def par(g1: OpenGame, g2: OpenGame) -> OpenGame:
    _check_same_monoid(g1, g2)
    index = product(g1.index, g2.index)
    members = (
        arrow_tensor(g1.arrow, g1.member(j), g2.member(k)) for j, k in index
    )
    return _mk_game(g1.monoid, index, members, g1.arrow)


def _check_same_monoid(g1: OpenGame, g2: OpenGame) -> None:
    if g1.monoid.name != g2.monoid.name:
        raise DomainError(
            f"cannot compose games over monoids "
            f"{g1.monoid.name!r} and {g2.monoid.name!r}"
        )


def equilibria(g: OpenGame, ctx: GameContext) -> dict:
    """Each strategy's judgement at the context, in index order."""
    c = ctx.to_ctx_pair()
    return {j: g.eq_at(j, c) for j in g.index}


def equilibrium_set(g: OpenGame, ctx: GameContext) -> list:
    if g.monoid.name != BOOL_AND.name:
        raise DomainError("equilibrium sets need Boolean judgements")
    return [j for j, v in equilibria(g, ctx).items() if v]


def map_monoid(g: OpenGame, target: Monoid, h: Callable[[Any], Any]) -> OpenGame:
    """Transport judgements along a monoid homomorphism."""
    arrow = game_arrow(target)
    members = tuple(
        WithBMor(
            m.inner,
            LazyEq(m.extra.src, m.extra.dst, lambda c, f=m.extra.fn: h(f(c))),
        )
        for m in g.members
    )
    return _mk_game(target, g.index, members, arrow)


# -- the brute-force oracle ---------------------------------------------------

@dataclass(frozen=True)
class NormalFormGame:
    players: tuple
    strategies: tuple  # FinSet per player
    payoff: Callable[[tuple, int], Rat]  # (profile, player index) -> utility

    def profiles(self):
        return itertools.product(*(s.elements for s in self.strategies))


@dataclass(frozen=True)
class Deviation:
    player: int
    profile: tuple
    better: Any
    old_payoff: Rat
    new_payoff: Rat


def nash_oracle(g: NormalFormGame) -> tuple[list, dict]:
    """All pure profiles with no strictly improving unilateral deviation.

    Also returns, per rejected profile, the witnessing deviations.
    """
    equilibria_, report = [], {}
    for prof in g.profiles():
        devs = []
        for i, s in enumerate(g.strategies):
            here = g.payoff(prof, i)
            for alt in s:
                if alt == prof[i]:
                    continue
                moved = prof[:i] + (alt,) + prof[i + 1 :]
                there = g.payoff(moved, i)
                if there > here:
                    devs.append(Deviation(i, prof, alt, here, there))
        if devs:
            report[prof] = devs
        else:
            equilibria_.append(prof)
    return equilibria_, report


def decisions_to_normal_form(
    decisions: list[OpenGame], utils: list[FinFun]
) -> NormalFormGame:
    """Simultaneous one-shot decisions plus per-player payoff tables.

    Each decision must observe the unit (a simultaneous game); ``utils``
    maps the joint move tuple to each player's utility.
    """
    for d in decisions:
        if d.src.fwd != UNIT:
            raise DomainError("oracle conversion needs unit-observation decisions")
    strategies = tuple(d.dst.fwd for d in decisions)

    def payoff(profile, i):
        return Fraction(utils[i](profile))

    return NormalFormGame(
        tuple(range(len(decisions))), strategies, payoff
    )


# -- best-response games ------------------------------------------------------

@dataclass(frozen=True)
class BestRespElement:
    """A context-indexed relation between strategy profiles."""

    src: PairObj
    dst: PairObj
    grade: FinSet  # the profile index J
    rel: Callable[[CtxPair], Callable[[Any, Any], bool]]


def best_resp_bimodule(
    graded_lens,
    element_pool: Callable[[Any, Any, Any], list] | None = None,
    context_pool: Callable[[Any, Any], list] | None = None,
) -> GradedBimodule:
    """Strategy-pair relations in context, acted on by lens families.

    The left action extends the context with the prefix profile's lens
    and relates the suffix components; the second prefix component is
    discarded.  The right action mirrors this.
    """
    ctx = GAME_CTX
    ctxs = context_pool or (lambda x, y: ctx.hom_cached(y, x))

    def hom(grade, x, y):
        if element_pool is None:
            raise DomainError("best-response relations are not enumerable")
        return element_pool(grade, x, y)

    def glact(a: ParamFamily, b: BestRespElement):
        if a.dst != b.src:
            raise CompositionError("best-response left action: endpoint mismatch")
        grade = product(a.grade, b.grade)

        def rel(c):
            def holds(p1, p2):
                (j1, k1), (j2, k2) = p1, p2
                extended = ctx.bimodule.ract(c, a.member(j1))
                return b.rel(extended)(k1, k2)

            return holds

        return BestRespElement(a.src, b.dst, grade, rel)

    def gract(b: BestRespElement, a: ParamFamily):
        if b.dst != a.src:
            raise CompositionError("best-response right action: endpoint mismatch")
        grade = product(b.grade, a.grade)

        def rel(c):
            def holds(p1, p2):
                (j1, k1), (j2, k2) = p1, p2
                extended = ctx.bimodule.lact(a.member(k1), c)
                return b.rel(extended)(j1, j2)

            return holds

        return BestRespElement(b.src, a.dst, grade, rel)

    def st(b: BestRespElement, z_obj: PairObj):
        xz, yz = PAIR.tensor(b.src, z_obj), PAIR.tensor(b.dst, z_obj)
        return BestRespElement(
            xz, yz, b.grade, lambda c: b.rel(ctx.cst(c, b.dst, b.src, z_obj))
        )

    def regrade(phi: FinFun, b: BestRespElement):
        return BestRespElement(
            b.src,
            b.dst,
            phi.dom,
            lambda c: lambda p1, p2: b.rel(c)(phi(p1), phi(p2)),
        )

    def equal(b1, b2):
        if (b1.src, b1.dst, b1.grade) != (b2.src, b2.dst, b2.grade):
            return False
        for c in ctxs(b1.src, b1.dst):
            r1, r2 = b1.rel(c), b2.rel(c)
            for p1 in b1.grade:
                for p2 in b1.grade:
                    if r1(p1, p2) != r2(p1, p2):
                        return False
        return True

    return GradedBimodule(
        name="bestresp",
        arrow=graded_lens,
        hom=hom,
        glact=glact,
        gract=gract,
        regrade=regrade,
        equal=equal,
        grade_of=lambda b: b.grade,
        src=lambda b: b.src,
        dst=lambda b: b.dst,
        st=st,
        e=lambda grade, x, y: BestRespElement(
            x, y, grade, lambda c: lambda p1, p2: True
        ),
        m=lambda b1, b2: BestRespElement(
            b1.src,
            b1.dst,
            b1.grade,
            lambda c: lambda p1, p2: b1.rel(c)(p1, p2) and b2.rel(c)(p1, p2),
        ),
        commutative=True,
    )


def decision_relation(d: OpenGame) -> BestRespElement:
    """The canonical relation of a decision: the second profile is a better move.

    A profile is a fixed point (related above every other) exactly when
    it is a weak-argmax equilibrium.
    """

    def rel(c: CtxPair):
        x = c.state.fwd(STAR)
        k = lambda y: Fraction(c.cont.coplay(y, STAR))  # noqa: E731

        def holds(j1, j2):
            return k(d.play(j2).fwd(x)) >= k(d.play(j1).fwd(x))

        return holds

    return BestRespElement(d.src, d.dst, d.index, rel)


def best_response_fixed_points(b: BestRespElement, c: CtxPair) -> list:
    holds = b.rel(c)
    return [j for j in b.grade if all(holds(i, j) for i in b.grade)]


# -- probabilistic games ------------------------------------------------------

def dist_marginal(d: Dist, which: int) -> Dist:
    return d.map(lambda p: p[which])


def mix_values(d: Dist):
    """Convex combination of payoff values, componentwise on tuples.

    Rationals average to their exact expectation; unit markers and equal
    non-numeric values pass through.
    """
    support = [x for x, _ in d.weights]
    first = support[0]
    if all(x == first for x in support):
        return first
    if all(isinstance(x, (int, Fraction)) for x in support):
        return sum((w * Fraction(x) for x, w in d.weights), Fraction(0))
    if all(isinstance(x, tuple) and len(x) == len(first) for x in support):
        return tuple(
            mix_values(d.map(lambda t, i=i: t[i])) for i in range(len(first))
        )
    raise DomainError(f"values {support!r} admit no convex combination")


@dataclass(frozen=True)
class ProbCtx:
    """A context whose continuation may pay off in exact expectations."""

    src: PairObj
    dst: PairObj
    state: Any  # element of src.fwd
    cont: Callable[[Any], Any]  # dst.fwd -> payoff values (shape of dst.bwd)


def game_ctx_to_prob(c: CtxPair) -> ProbCtx:
    return ProbCtx(
        c.dst, c.src, c.state.fwd(STAR), lambda y: c.cont.coplay(y, STAR)
    )


def prob_ctx_ract(c: ProbCtx, lens: Lens) -> ProbCtx:
    if lens.src != c.src:
        raise CompositionError("probabilistic context: state extension mismatch")
    return ProbCtx(lens.dst, c.dst, lens.fwd(c.state), c.cont)


def prob_ctx_lact(lens: Lens, c: ProbCtx) -> ProbCtx:
    if lens.dst != c.dst:
        raise CompositionError("probabilistic context: continuation mismatch")
    return ProbCtx(
        c.src,
        lens.src,
        c.state,
        lambda y: _coplay_values(lens, y, c.cont(lens.fwd(y))),
    )


def _coplay_values(lens: Lens, y, r):
    # a backward pass over possibly off-carrier payoff values: only lenses
    # whose coplay is independent of the request, or whose request carrier
    # contains the value, are supported
    if r in lens.dst.bwd:
        return lens.coplay(y, r)
    probe = {lens.coplay(y, q) for q in lens.dst.bwd}
    if len(probe) == 1:
        return probe.pop()
    raise DomainError(
        "backward value off the carrier for a state-dependent coplay"
    )


def prob_ctx_mix(d: Dist) -> ProbCtx:
    """Convex combination of contexts sharing a state."""
    ctxs = [c for c, _ in d.weights]
    first = ctxs[0]
    if any((c.src, c.dst, c.state) != (first.src, first.dst, first.state)
           for c in ctxs):
        raise DomainError("cannot mix contexts with different states")
    return ProbCtx(
        first.src,
        first.dst,
        first.state,
        lambda y: mix_values(d.map(lambda c: c.cont(y))),
    )


def prob_ctx_cst(c: ProbCtx, x_obj: PairObj, y_obj: PairObj, z_obj: PairObj):
    # split the joint start point; the spectator half fixes the second
    # continuation coordinate, whose payoff share is discarded
    x, z = c.state

    def cont(y):
        v = c.cont((y, z))
        return v[0]

    return ProbCtx(x_obj, y_obj, x, cont)


@dataclass(frozen=True)
class ProbElement:
    """A distribution-indexed equilibrium predicate in context.

    The predicate is judged at a *distribution over contexts*: upstream
    mixed strategies push the start point around, so the judgement must
    see the resulting context mixture rather than any single context.
    """

    src: PairObj
    dst: PairObj
    grade: FinSet  # the profile index J
    pred: Callable[[Dist, Dist], bool]  # (context distribution, D(J)) -> bool


def prob_bimodule(
    graded_lens,
    element_pool: Callable[[Any, Any, Any], list] | None = None,
    context_pool: Callable[[Any, Any], list] | None = None,
    dist_pool: Callable[[FinSet], list] | None = None,
) -> GradedBimodule:
    """Distribution-judged predicates acted on by lens families.

    The left action pushes the context distribution forward through the
    prefix marginal (each charged prefix strategy extends the state, with
    the product weight); the right action pays each context's continuation
    off in expectation over the suffix marginal via the convex algebra.
    """

    def hom(grade, x, y):
        if element_pool is None:
            raise DomainError("probabilistic predicates are not enumerable")
        return element_pool(grade, x, y)

    def glact(a: ParamFamily, b: ProbElement):
        if a.dst != b.src:
            raise CompositionError("probabilistic left action: endpoint mismatch")
        grade = product(a.grade, b.grade)

        def pred(cd: Dist, d: Dist) -> bool:
            prefix = dist_marginal(d, 0)
            suffix = dist_marginal(d, 1)
            pushed = dist_bind(
                cd,
                lambda c: prefix.map(
                    lambda j1: prob_ctx_ract(c, a.member(j1))
                ),
            )
            return b.pred(pushed, suffix)

        return ProbElement(a.src, b.dst, grade, pred)

    def gract(b: ProbElement, a: ParamFamily):
        if b.dst != a.src:
            raise CompositionError("probabilistic right action: endpoint mismatch")
        grade = product(b.grade, a.grade)

        def pred(cd: Dist, d: Dist) -> bool:
            suffix = dist_marginal(d, 1)
            mixed = cd.map(
                lambda c: prob_ctx_mix(
                    suffix.map(lambda j2: prob_ctx_lact(a.member(j2), c))
                )
            )
            return b.pred(mixed, dist_marginal(d, 0))

        return ProbElement(b.src, a.dst, grade, pred)

    def st(b: ProbElement, z_obj: PairObj):
        xz, yz = PAIR.tensor(b.src, z_obj), PAIR.tensor(b.dst, z_obj)
        return ProbElement(
            xz,
            yz,
            b.grade,
            lambda cd, d: b.pred(
                cd.map(lambda c: prob_ctx_cst(c, b.src, b.dst, z_obj)), d
            ),
        )

    def regrade(phi: FinFun, b: ProbElement):
        return ProbElement(
            b.src,
            b.dst,
            phi.dom,
            lambda c, d: b.pred(c, d.map(phi)),
        )

    def equal(b1, b2):
        if (b1.src, b1.dst, b1.grade) != (b2.src, b2.dst, b2.grade):
            return False
        if context_pool is None or dist_pool is None:
            raise DomainError("probabilistic equality needs registered pools")
        for c in context_pool(b1.src, b1.dst):
            cd = c if isinstance(c, Dist) else dist_pure(c)
            for d in dist_pool(b1.grade):
                if b1.pred(cd, d) != b2.pred(cd, d):
                    return False
        return True

    return GradedBimodule(
        name="probequib",
        arrow=graded_lens,
        hom=hom,
        glact=glact,
        gract=gract,
        regrade=regrade,
        equal=equal,
        grade_of=lambda b: b.grade,
        src=lambda b: b.src,
        dst=lambda b: b.dst,
        st=st,
        e=lambda grade, x, y: ProbElement(x, y, grade, lambda c, d: True),
        m=lambda b1, b2: ProbElement(
            b1.src,
            b1.dst,
            b1.grade,
            lambda c, d: b1.pred(c, d) and b2.pred(c, d),
        ),
        commutative=True,
    )


@dataclass
class ProbGame:
    """A strategy-indexed lens family with a distribution-judged predicate."""

    index: FinSet
    plays: ParamFamily
    pred: ProbElement

    @property
    def src(self) -> PairObj:
        return self.plays.src

    @property
    def dst(self) -> PairObj:
        return self.plays.dst

    def judge(self, ctx, d: Dist) -> bool:
        if isinstance(ctx, GameContext):
            ctx = game_ctx_to_prob(ctx.to_ctx_pair())
        if isinstance(ctx, ProbCtx):
            ctx = dist_pure(ctx)
        return self.pred.pred(ctx, d)


_PROB_GRADED = grade_by_param(_LENS)
_PROB_BIM = prob_bimodule(_PROB_GRADED)
_PROB_ARROW = graded_product(_PROB_GRADED, _PROB_BIM)


def prob_game(index: FinSet, plays: Callable[[Any], Lens], pred) -> ProbGame:
    family = ParamFamily(
        plays(index.elements[0]).src,
        plays(index.elements[0]).dst,
        index,
        tuple(plays(j) for j in index),
    )
    element = ProbElement(family.src, family.dst, index, pred)
    return ProbGame(index, family, element)


def prob_decision(x_set: FinSet, y_set: FinSet, util: FinSet) -> ProbGame:
    """A decision judged on mixed strategies by exact expected payoff.

    A distribution passes at (x, k) when its expected payoff is at least
    that of every pure deviation.
    """
    base = decision(x_set, y_set, util)

    def value(cd: Dist, j) -> Fraction:
        # expected payoff of the pure strategy j over the context mixture
        return sum(
            (
                w * Fraction(c.cont(base.play(j).fwd(c.state)))
                for c, w in cd.weights
            ),
            Fraction(0),
        )

    def pred(cd: Dist, d: Dist) -> bool:
        expected = sum(
            (w * value(cd, j) for j, w in d.weights), Fraction(0)
        )
        return all(expected >= value(cd, j) for j in base.index)

    return prob_game(base.index, base.play, pred)


def prob_payoff_block(u: FinFun) -> ProbGame:
    base = payoff_block(u)

    def pred(cd: Dist, d: Dist) -> bool:
        return True

    return prob_game(base.index, base.play, pred)


def _prob_member(g: ProbGame) -> GradedPairMor:
    return GradedPairMor(g.plays, g.pred)


def _from_member(m: GradedPairMor) -> ProbGame:
    return ProbGame(m.arrow_part.grade, m.arrow_part, m.bim_part)


def prob_seq(g1: ProbGame, g2: ProbGame) -> ProbGame:
    return _from_member(
        _PROB_ARROW.gcomp(_prob_member(g1), _prob_member(g2))
    )


def prob_par(g1: ProbGame, g2: ProbGame) -> ProbGame:
    return _from_member(
        graded_tensor(_PROB_ARROW, _prob_member(g1), _prob_member(g2))
    )


# -- learners -----------------------------------------------------------------

def learner_arrow(param_objs: list[PairObj]) -> ArrowInstance:
    """Lenses with a hidden parameter object: the learner composition."""
    from .grading import para

    arrow = para(_LENS, param_objs)
    arrow.name = "learn"
    return arrow


def learner(p_set: FinSet, param_lens: Callable[[Any], Lens]):
    """A parameter-indexed lens bundled as one lens on the enlarged source.

    The parameter object pairs the set with itself: the backward pass
    produces the parameter update.
    """
    from .grading import ParaMor

    sample = param_lens(p_set.elements[0])
    p_obj = PairObj(p_set, p_set)
    src = sample.src
    joint_src = PAIR.tensor(p_obj, src)
    joint = Lens(
        joint_src,
        sample.dst,
        FinFun.of(
            joint_src.fwd, sample.dst.fwd, lambda px: param_lens(px[0]).fwd(px[1])
        ),
        FinFun.of(
            product(joint_src.fwd, sample.dst.bwd),
            joint_src.bwd,
            lambda pr: (
                pr[0][0],
                param_lens(pr[0][0]).coplay(pr[0][1], pr[1]),
            ),
        ),
    )
    return ParaMor(src, sample.dst, p_obj, joint)
