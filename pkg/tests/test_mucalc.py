import random

import pytest

from muaut import gen
from muaut import lts as L
from muaut import mucalc as mc
from muaut import onestep as o


def test_semantics_spec_examples():
    chain = L.make_lts(["p"], 2, [(0, 1)], {1: ["p"]})
    assert mc.semantics_eval(mc.parse("dia p"), chain) == frozenset({0})
    loop = L.make_lts(["p"], 1, [(0, 0)], {})
    assert mc.semantics_eval(mc.parse("mu x. dia x"), loop) == frozenset()
    assert mc.semantics_eval(mc.parse("nu x. dia x"), loop) == frozenset({0})
    tree = L.make_lts(["p"], 3, [(0, 1), (0, 2)], {})
    assert mc.semantics_eval(mc.parse("mu x. box x"), tree) == frozenset({0, 1, 2})
    assert mc.semantics_eval(mc.parse("mu x. box x"), loop) == frozenset()


def test_unbound_letter_rejected():
    loop = L.make_lts(["p"], 1, [(0, 0)], {})
    with pytest.raises(mc.UnboundLetterError):
        mc.semantics_eval(mc.parse("dia r"), loop)
    with pytest.raises(mc.IllFormedError):
        mc.parse("mu x. ~x")


def test_eval_game_spec_rows():
    lts = L.make_lts(["p"], 1, [(0, 0)], {0: ["p"]})
    eg = mc.build_eval_game(mc.Prop("p"), lts)
    root = eg.positions[eg.root]
    assert eg.game.owner[eg.root] == 1 and not eg.game.moves[eg.root]  # Forall stuck
    assert mc.game_value(mc.parse("nu x. dia x"), lts)


def test_adequacy_random():
    rng = random.Random(20)
    for _ in range(120):
        f = gen.rand_mu(rng, ("p", "q"), depth=rng.randint(1, 3),
                        mode=rng.choice(["any", "af", "cont"]))
        lts = gen.rand_lts(rng, ("p", "q"), max_states=5)
        assert mc.game_value(f, lts) == (lts.init in mc.semantics_eval(f, lts))


def test_bisimulation_invariance():
    rng = random.Random(21)
    for _ in range(25):
        s = gen.rand_lts(rng, ("p", "q"), max_states=5)
        t = L.quotient(s)
        f = gen.rand_mu(rng, ("p", "q"), depth=2, mode="any")
        assert (s.init in mc.semantics_eval(f, s)) == (t.init in mc.semantics_eval(f, t))


def test_monotone_dependency_and_iteration_bound():
    rng = random.Random(22)
    for _ in range(25):
        lts = gen.rand_lts(rng, ("p",), max_states=5)
        body = mc.MOr((gen.rand_mu(rng, ("p",), depth=1, mode="any"), mc.dia(mc.Prop("r"))))
        stages = mc.approximant_trace(body, "r", lts)
        assert len(stages) <= lts.n + 1
        for lo, hi in zip(stages, stages[1:]):
            assert lo <= hi
        lo = frozenset(s for s in lts.states() if rng.random() < 0.4)
        hi = lo | frozenset(s for s in lts.states() if rng.random() < 0.4)
        assert mc.open_eval(body, lts, {"r": lo}) <= mc.open_eval(body, lts, {"r": hi})


def test_classify_spec_examples():
    r = mc.classify(mc.parse("mu x. dia x"))
    assert r.continuous_calculus and r.alternation_free
    r2 = mc.classify(mc.parse("mu x. box x"))
    assert r2.alternation_free and not r2.continuous_calculus
    alternating = mc.parse("nu y. mu x. ((p & dia x) | dia y)")
    assert not mc.classify(alternating).alternation_free


def test_mu_c_implies_mu_d():
    rng = random.Random(23)
    for _ in range(80):
        f = gen.rand_mu(rng, ("p",), depth=3,
                        mode=rng.choice(["any", "af", "cont"]),
                        modalities=rng.choice(["plain", "FOE1INF"]))
        rep = mc.classify(f)
        if rep.continuous_calculus:
            assert rep.alternation_free


def test_guard_transform():
    rng = random.Random(24)
    f = mc.Mu("x", mc.MOr((mc.Prop("x"), mc.Prop("p"))))
    assert mc.guard_transform(f) == mc.Prop("p")
    g = mc.parse("mu x. dia x")
    assert mc.guard_transform(g) == g
    for _ in range(60):
        f = gen.rand_mu(rng, ("p", "q"), depth=3, mode=rng.choice(["any", "af", "cont"]))
        t = mc.guard_transform(f)
        assert mc.is_guarded(t)
        rf, rt = mc.classify(f), mc.classify(t)
        if rf.alternation_free:
            assert rt.alternation_free
        if rf.continuous_calculus:
            assert rt.continuous_calculus
        for _ in range(2):
            lts = gen.rand_lts(rng, ("p", "q"), max_states=5)
            assert mc.semantics_eval(f, lts) == mc.semantics_eval(t, lts)


def test_substitute():
    f = mc.parse("dia q")
    assert mc.substitute(f, {"q": mc.MAnd((mc.Prop("p"), mc.Prop("p")))}) == \
        mc.dia(mc.MAnd((mc.Prop("p"), mc.Prop("p"))))
    assert mc.substitute(f, {}) == f
    # capture avoidance: inserting a formula with a letter bound in the host
    host = mc.Mu("z1", mc.MOr((mc.dia(mc.Prop("z1")), mc.Prop("q"))))
    out = mc.substitute(host, {"q": mc.Prop("z1")})
    mc.check_wf(out)
    rng = random.Random(25)
    for _ in range(20):
        lts = gen.rand_lts(rng, ("z1",), max_states=4)
        direct = mc.open_eval(host, lts, {"q": lts.holds("z1")})
        assert mc.semantics_eval(out, lts) == direct


def test_substitution_preserves_continuous_membership():
    # substituting a continuous image for an active letter stays continuous
    rng = random.Random(26)
    hits = 0
    for _ in range(80):
        f = gen.rand_mu(rng, ("p", "q"), depth=2, mode="cont")
        g = gen.rand_mu(rng, ("p", "q"), depth=2, mode="cont")
        q = frozenset({"p"})
        if not (mc.in_continuous(f, q) and mc.in_continuous(g, q)):
            continue
        if any(isinstance(s, mc.NegProp) and s.name == "p" for s in mc.subformulas(f)):
            continue
        if "p" not in mc.free_letters(f):
            continue
        out = mc.substitute(f, {"p": g})
        assert mc.in_continuous(out, q), (mc.pretty(f), mc.pretty(g), mc.pretty(out))
        hits += 1
    assert hits > 10


def test_fo1_modal_bridge():
    alpha = o.Exists("x", o.And((o.Pred("a1", "x"), o.Forall("y", o.Pred("a2", "y")))))
    f = mc.Modal(alpha, (mc.Prop("p"), mc.Prop("q")))
    br = mc.fo1_modal_bridge(f)
    assert mc.is_plain_modal(br)
    d = mc.parse("dia p")
    assert mc.fo1_modal_bridge(d) == d
    rng = random.Random(27)
    for _ in range(50):
        g = gen.rand_mu(rng, ("p", "q"), depth=3,
                        mode=rng.choice(["any", "af", "cont"]), modalities="FO1")
        b = mc.fo1_modal_bridge(g)
        mc.check_wf(b)
        assert mc.is_plain_modal(b)
        rg, rb = mc.classify(g), mc.classify(b)
        if rg.continuous_calculus:
            assert rb.continuous_calculus
        if rg.alternation_free:
            assert rb.alternation_free
        for _ in range(2):
            lts = gen.rand_lts(rng, ("p", "q"), max_states=4)
            assert mc.semantics_eval(g, lts) == mc.semantics_eval(b, lts)
    with pytest.raises(mc.NotFO1Error):
        mc.fo1_modal_bridge(mc.Modal(o.ExistsInf("x", o.Pred("a1", "x")), (mc.Prop("p"),)))


def test_modality_moves_match_full_enumeration():
    rng = random.Random(28)
    for _ in range(60):
        f = gen.rand_mu(rng, ("p",), depth=2, mode="any", modalities="FOE1INF")
        lts = gen.rand_lts(rng, ("p",), max_states=4)
        for g in mc.subformulas(f):
            if isinstance(g, mc.Modal) and len(g.args) * 3 <= 12:
                for s in lts.states():
                    mins = set(mc.modality_moves(g, lts, s))
                    full = set(mc.modality_moves(g, lts, s, full_enumeration=True))
                    assert mins <= full
                    assert all(any(w <= z for w in mins) for z in full)


def test_negate_involutive_and_complementary():
    rng = random.Random(29)
    for _ in range(40):
        f = gen.rand_mu(rng, ("p", "q"), depth=2, mode="any")
        n = mc.negate(f)
        mc.check_wf(n)
        lts = gen.rand_lts(rng, ("p", "q"), max_states=4)
        assert mc.semantics_eval(n, lts) == frozenset(lts.states()) - mc.semantics_eval(f, lts)


def test_parse_pretty_round_trip():
    rng = random.Random(30)
    for _ in range(50):
        f = gen.rand_mu(rng, ("p", "q"), depth=3, mode="any", modalities="FOE1INF")
        assert mc.parse(mc.pretty(f)) == f
