"""Open games end to end: solving, composing, and the brute-force oracle."""

from __future__ import annotations

from fractions import Fraction

import pytest

from openarrows.bimodule import CtxPair
from openarrows.finset import (
    BOOL_AND,
    STAR,
    UNIT,
    WITNESSES,
    Dist,
    DomainError,
    FinFun,
    FinSet,
    dist_product,
    dist_pure,
    product,
    witnesses_empty,
)
from openarrows.games import (
    best_response_fixed_points,
    decision,
    decision_relation,
    decisions_to_normal_form,
    equilibria,
    lift_covariant,
    map_monoid,
    nash_oracle,
    par,
    payoff_block,
    prob_decision,
    prob_par,
    prob_payoff_block,
    prob_seq,
    seq,
    trivial_context,
)
from openarrows.lens import cont_lens, point_lens

MOVES = FinSet(("C", "D"))
COINS = FinSet(("H", "T"))
UTIL4 = FinSet((0, 1, 2, 3))
PM1 = FinSet((-1, 1))

PD_PAY = {
    ("C", "C"): (2, 2), ("C", "D"): (0, 3),
    ("D", "C"): (3, 0), ("D", "D"): (1, 1),
}
MP_PAY = {
    ("H", "H"): (1, -1), ("H", "T"): (-1, 1),
    ("T", "H"): (-1, 1), ("T", "T"): (1, -1),
}


def _two_player(moves, pay, util):
    joint = product(moves, moves)
    u = FinFun.of(joint, product(util, util), lambda p: pay[p])
    d1 = decision(UNIT, moves, util)
    d2 = decision(UNIT, moves, util)
    return d1, d2, seq(par(d1, d2), payoff_block(u))


def _profiles(table):
    return sorted(
        (j1(STAR), j2(STAR)) for ((j1, j2), _), v in table.items() if v
    )


def test_prisoners_dilemma_has_exactly_dd():
    _, _, g = _two_player(MOVES, PD_PAY, UTIL4)
    assert _profiles(equilibria(g, trivial_context(g))) == [("D", "D")]


def test_matching_pennies_has_no_pure_equilibrium():
    _, _, g = _two_player(COINS, MP_PAY, PM1)
    assert _profiles(equilibria(g, trivial_context(g))) == []


@pytest.mark.parametrize(
    "moves,pay,util",
    [(MOVES, PD_PAY, UTIL4), (COINS, MP_PAY, PM1)],
    ids=["dilemma", "pennies"],
)
def test_oracle_agrees_with_composition(moves, pay, util):
    d1, d2, g = _two_player(moves, pay, util)
    joint = product(moves, moves)
    utils = [FinFun.of(joint, util, lambda p, i=i: pay[p][i]) for i in range(2)]
    oracle_eq, report = nash_oracle(decisions_to_normal_form([d1, d2], utils))
    assert sorted(oracle_eq) == _profiles(equilibria(g, trivial_context(g)))
    # every rejected profile comes with at least one profitable deviation
    for profile, devs in report.items():
        if profile not in oracle_eq:
            assert devs


def test_witness_verdicts_transport_to_booleans():
    joint = product(MOVES, MOVES)
    u = FinFun.of(joint, product(UTIL4, UTIL4), lambda p: PD_PAY[p])

    def wdec():
        return decision(UNIT, MOVES, UTIL4, m_monoid=WITNESSES)

    gw = seq(par(wdec(), wdec()), payoff_block(u, m_monoid=WITNESSES))
    _, _, gb = _two_player(MOVES, PD_PAY, UTIL4)
    wit = equilibria(gw, trivial_context(gw))
    boo = equilibria(gb, trivial_context(gb))
    assert set(map(repr, wit)) == set(map(repr, boo))
    for k in wit:
        assert witnesses_empty(wit[k]) == boo[k]


def test_map_monoid_collapses_witnesses():
    d = decision(UNIT, MOVES, UTIL4, m_monoid=WITNESSES)
    db = map_monoid(d, BOOL_AND, witnesses_empty)
    k = FinFun.of(MOVES, UTIL4, {"C": 0, "D": 3})
    ctx = CtxPair(d.dst, d.src, point_lens(d.src, STAR), cont_lens(d.dst, k))
    for j in d.index:
        assert db.eq_at(j, ctx) == witnesses_empty(d.eq_at(j, ctx))


def test_best_response_fixed_points_match_equilibria():
    d = decision(UNIT, MOVES, UTIL4)
    k = FinFun.of(MOVES, UTIL4, {"C": 0, "D": 3})
    ctx = CtxPair(d.dst, d.src, point_lens(d.src, STAR), cont_lens(d.dst, k))
    fps = best_response_fixed_points(decision_relation(d), ctx)
    assert sorted(j(STAR) for j in fps) == ["D"]


def test_lift_is_never_strategic():
    relabel = FinFun.of(COINS, MOVES, {"H": "C", "T": "D"})
    g = lift_covariant(relabel)
    assert len(g.index) == 1


def test_seq_rejects_mismatched_interfaces():
    d = decision(UNIT, MOVES, UTIL4)
    e = decision(UNIT, COINS, PM1)
    with pytest.raises(ValueError):
        seq(d, e)


# ---------- probabilistic play ----------

def _prob_two_player(moves, pay, util):
    joint = product(moves, moves)
    u = FinFun.of(joint, product(util, util), lambda p: pay[p])
    p1 = prob_decision(UNIT, moves, util)
    p2 = prob_decision(UNIT, moves, util)
    return prob_seq(prob_par(p1, p2), prob_payoff_block(u))


def _joint(moves, da, db):
    to_j = lambda m: FinFun.of(UNIT, moves, lambda _x, m=m: m)  # noqa: E731
    return dist_product(
        dist_product(da.map(to_j), db.map(to_j)), dist_pure(STAR)
    )


HALF = Dist([("H", Fraction(1, 2)), ("T", Fraction(1, 2))])
THIRD = Dist([("H", Fraction(1, 3)), ("T", Fraction(2, 3))])


def test_mixed_pennies_uniform_is_the_only_survivor():
    pm = _prob_two_player(COINS, MP_PAY, PM1)
    cc = trivial_context(pm)
    assert pm.judge(cc, _joint(COINS, HALF, HALF)) is True
    for a in ("H", "T"):
        for b in ("H", "T"):
            assert pm.judge(cc, _joint(COINS, dist_pure(a), dist_pure(b))) is False
    assert pm.judge(cc, _joint(COINS, THIRD, HALF)) is False
    assert pm.judge(cc, _joint(COINS, HALF, THIRD)) is False
    assert pm.judge(cc, _joint(COINS, THIRD, THIRD)) is False


def test_mixed_dilemma_point_mass_at_dd_passes():
    ppd = _prob_two_player(MOVES, PD_PAY, UTIL4)
    cc = trivial_context(ppd)
    assert ppd.judge(cc, _joint(MOVES, dist_pure("D"), dist_pure("D"))) is True
    assert ppd.judge(cc, _joint(MOVES, dist_pure("C"), dist_pure("D"))) is False
    mixed = HALF.map(lambda c: {"H": "C", "T": "D"}[c])
    assert ppd.judge(cc, _joint(MOVES, mixed, dist_pure("D"))) is False


def test_trivial_context_requires_a_closed_game():
    d = decision(UNIT, MOVES, UTIL4)
    with pytest.raises(DomainError):
        trivial_context(d)
