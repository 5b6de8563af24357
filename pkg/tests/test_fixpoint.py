import random

import pytest

from muaut import fixpoint as fx
from muaut import gen
from muaut import lts as L
from muaut import mucalc as mc


def rand_functional(rng, n=4):
    lts = gen.rand_lts(rng, ("p", "q"), max_states=n)
    inner = gen.rand_mu(rng, ("p", "q"), depth=1, mode="any")
    body = rng.choice([
        mc.MOr((inner, mc.dia(mc.Prop("r")))),
        mc.MOr((inner, mc.MAnd((mc.Prop("q"), mc.Prop("r"))))),
        mc.MOr((mc.Prop("p"), mc.dia(mc.Prop("r")))),
        inner,
    ])
    return fx.formula_functional(body, "r", lts)


def test_lfp_trivial():
    ident = fx.MonotoneFunctional(frozenset({0, 1}), lambda x: x)
    assert fx.lfp(ident)[0] == frozenset()
    const = fx.MonotoneFunctional(frozenset({0, 1}), lambda x: frozenset({1}))
    fix, trace = fx.lfp(const)
    assert fix == frozenset({1}) and len(trace) == 2


def test_lfp_grows_backward_from_targets():
    lts = L.make_lts(["p"], 3, [(0, 1), (1, 2)], {2: ["p"]})
    body = mc.MOr((mc.Prop("p"), mc.dia(mc.Prop("r"))))
    F = fx.formula_functional(body, "r", lts)
    fix, trace = fx.lfp(F)
    assert fix == frozenset({0, 1, 2})
    assert trace == [frozenset(), frozenset({2}), frozenset({1, 2}), frozenset({0, 1, 2})]


def test_restrict_inclusion():
    rng = random.Random(1)
    for _ in range(30):
        F = rand_functional(rng, n=rng.randint(1, 5))
        xs = frozenset(s for s in F.carrier if rng.random() < 0.5)
        assert fx.lfp(fx.restrict(F, xs))[0] <= fx.lfp(F)[0]
    F = rand_functional(rng)
    assert fx.lfp(fx.restrict(F, F.carrier))[0] == fx.lfp(F)[0]
    assert fx.lfp(fx.restrict(F, frozenset()))[0] == frozenset()


def test_unfolding_game_region_is_lfp():
    rng = random.Random(2)
    for _ in range(30):
        F = rand_functional(rng, n=rng.randint(1, 5))
        assert fx.unfolding_region(F) == fx.lfp(F)[0]


def test_unfolding_game_trivial_cases():
    const = fx.MonotoneFunctional(frozenset({0}), lambda x: frozenset({0}))
    assert fx.unfolding_region(const) == frozenset({0})
    ident = fx.MonotoneFunctional(frozenset({0, 1}), lambda x: x)
    assert fx.unfolding_region(ident) == frozenset()
    big = fx.MonotoneFunctional(frozenset(range(13)), lambda x: x)
    with pytest.raises(ValueError):
        fx.unfolding_game(big)


def test_descending_strategy():
    rng = random.Random(3)
    for _ in range(30):
        F = rand_functional(rng, n=rng.randint(1, 5))
        fix, stages = fx.lfp(F)
        strat = fx.descending_strategy(F)
        assert set(strat) == set(fix)
        assert fx.is_descending(F, strat)
        for s in sorted(fix):
            assert fx.strategy_wins(F, strat, s)
        for s, xs in strat.items():
            assert xs in stages  # moves are approximant stages
        for s in fix:
            if s in stages[1]:
                assert strat[s] == frozenset()


def test_strategy_tree_inclusion():
    rng = random.Random(4)
    for _ in range(30):
        F = rand_functional(rng, n=rng.randint(1, 5))
        fix, _ = fx.lfp(F)
        strat = fx.descending_strategy(F)
        for r in sorted(fix)[:3]:
            tree = fx.strategy_tree(F, strat, r)
            assert r in tree.nodes
            assert r in fx.lfp(fx.restrict(F, tree.nodes))[0]


def test_strategy_tree_trivial():
    const = fx.MonotoneFunctional(frozenset({0, 1}), lambda x: frozenset({0}))
    strat = fx.descending_strategy(const)
    tree = fx.strategy_tree(const, strat, 0)
    assert tree.nodes == frozenset({0})


def test_finite_witness():
    rng = random.Random(5)
    for _ in range(30):
        F = rand_functional(rng, n=rng.randint(1, 5))
        fix, _ = fx.lfp(F)
        for s in sorted(F.carrier):
            w = fx.finite_witness(F, s)
            if s not in fix:
                assert w is None
            else:
                assert w is not None
                assert s in fx.lfp(fx.restrict(F, w))[0]
            bw = fx.brute_force_witness(F, s)
            assert (bw is None) == (s not in fix)


def test_noetherian_witness_matches_membership():
    rng = random.Random(6)
    for _ in range(25):
        F = rand_functional(rng, n=rng.randint(1, 5))
        fix, _ = fx.lfp(F)
        for s in sorted(F.carrier)[:3]:
            w = fx.brute_force_witness(F, s, noetherian_only=True)
            assert (w is None) == (s not in fix)


def test_monotonicity_spot_check():
    rng = random.Random(7)
    for _ in range(20):
        F = rand_functional(rng, n=4)
        pairs = []
        for _ in range(10):
            lo = frozenset(s for s in F.carrier if rng.random() < 0.4)
            hi = lo | frozenset(s for s in F.carrier if rng.random() < 0.4)
            pairs.append((lo, hi))
        assert fx.monotone_on_samples(F, pairs)
