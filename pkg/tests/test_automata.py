import random

import pytest

from muaut import automata as au
from muaut import gen
from muaut import lts as L
from muaut import mucalc as mc
from muaut import onestep as o


def props(*names):
    return L.PropSet(tuple(names))


def subset_automaton(p="p", q="q"):
    """Single state accepting systems where p implies q everywhere."""
    ps = props(p, q)
    delta = {}
    for c in ps.colours():
        ok = p not in c or q in c
        delta[(0, c)] = o.Forall("x", o.Pred("q0", "x")) if ok else o.BOT
    return au.ParityAutomaton(o.FOE1INF, ps, 1, 0, (0,), delta)


def test_subset_automaton_accepts():
    aut = subset_automaton()
    good = L.make_lts(["p", "q"], 3, [(0, 1), (0, 2)], {1: ["p", "q"], 2: ["q"]})
    bad = L.make_lts(["p", "q"], 2, [(0, 1)], {1: ["p"]})
    assert au.accepts(aut, good)
    assert not au.accepts(aut, bad)


def test_constant_automaton():
    top = au.constant_automaton(props("p"), True)
    bot = au.constant_automaton(props("p"), False)
    rng = random.Random(0)
    for _ in range(10):
        lts = gen.rand_lts(rng, ("p",), max_states=4)
        assert au.accepts(top, lts)
        assert not au.accepts(bot, lts)


def test_acceptance_minimal_vs_full_moves():
    rng = random.Random(1)
    for _ in range(25):
        aut = gen.rand_automaton(rng, ("p",), rng.randint(1, 2),
                                 dialect=rng.choice([o.FOE1, o.FOE1INF]), want="any")
        lts = gen.rand_lts(rng, ("p",), max_states=3)
        from muaut.paritygame import solve
        fast = au.acceptance_game(aut, lts)
        full = au.acceptance_game(aut, lts, full_enumeration=True)
        assert (fast.root in solve(fast.game).win_exists) == \
            (full.root in solve(full.game).win_exists)


def test_alphabet_mismatch():
    aut = subset_automaton()
    with pytest.raises(au.AlphabetMismatch):
        au.accepts(aut, L.make_lts(["p"], 1, [], {}))


def test_complement_xor_and_double():
    rng = random.Random(2)
    for _ in range(40):
        aut = gen.rand_automaton(rng, ("p",), rng.randint(1, 3),
                                 dialect=rng.choice([o.FOE1, o.FOE1INF]), want="any")
        comp = au.complement(aut)
        cc = au.complement(comp)
        lts = gen.rand_lts(rng, ("p",), max_states=5)
        a, b, c = au.accepts(aut, lts), au.accepts(comp, lts), au.accepts(cc, lts)
        assert a != b
        assert a == c


def test_complement_preserves_weak_continuous():
    rng = random.Random(3)
    for _ in range(15):
        aut = gen.rand_automaton(rng, ("p",), 2, dialect=o.FOE1INF, want="cw")
        assert au.classify_automaton(au.complement(aut)).continuous_weak


def test_classify_examples():
    ps = props("p")
    # single state, universal self-entry, even priority: continuous-weak
    delta = {(0, c): o.Forall("x", o.Pred("q0", "x")) for c in ps.colours()}
    aut = au.ParityAutomaton(o.FOE1INF, ps, 1, 0, (0,), delta)
    rep = au.classify_automaton(aut)
    assert rep.weak and rep.continuous_weak and not rep.degenerate[0]
    # same entry with odd priority: weak but not continuous-weak
    aut1 = au.ParityAutomaton(o.FOE1INF, ps, 1, 0, (1,), delta)
    rep1 = au.classify_automaton(aut1)
    assert rep1.weak and not rep1.continuous_weak
    # two states, no cycle back: two clusters
    delta2 = {}
    for c in ps.colours():
        delta2[(0, c)] = o.Exists("x", o.Pred("q1", "x"))
        delta2[(1, c)] = o.TOP
    aut2 = au.ParityAutomaton(o.FOE1INF, ps, 2, 0, (0, 0), delta2)
    rep2 = au.classify_automaton(aut2)
    assert len(rep2.clusters) == 2 and all(rep2.degenerate)


def test_normalize_weak_priorities():
    rng = random.Random(4)
    for _ in range(15):
        aut = gen.rand_automaton(rng, ("p",), 2, dialect=o.FOE1INF, want="weak")
        shifted = au.ParityAutomaton(aut.dialect, aut.props, aut.n, aut.init,
                                     tuple(w + 2 for w in aut.omega), aut.delta)
        norm = au.normalize_weak_priorities(shifted)
        assert set(norm.omega) <= {0, 1}
        lts = gen.rand_lts(rng, ("p",), max_states=4)
        assert au.accepts(norm, lts) == au.accepts(shifted, lts)
    nonweak_delta = {}
    for c in props("p").colours():
        nonweak_delta[(0, c)] = o.Exists("x", o.Pred("q1", "x"))
        nonweak_delta[(1, c)] = o.Exists("x", o.Pred("q0", "x"))
    nonweak = au.ParityAutomaton(o.FOE1, props("p"), 2, 0, (0, 1), nonweak_delta)
    with pytest.raises(au.NotWeakError):
        au.normalize_weak_priorities(nonweak)


def test_union_automaton():
    rng = random.Random(5)
    for _ in range(20):
        a0 = gen.rand_automaton(rng, ("p",), rng.randint(1, 2), dialect=o.FOE1INF, want="cw")
        a1 = gen.rand_automaton(rng, ("p",), rng.randint(1, 2), dialect=o.FOE1INF, want="cw")
        u = au.union_automaton(a0, a1)
        assert au.classify_automaton(u).continuous_weak
        lts = gen.rand_lts(rng, ("p",), max_states=4)
        assert au.accepts(u, lts) == (au.accepts(a0, lts) or au.accepts(a1, lts))
    # union with the rejecting automaton behaves as the other operand
    bot = au.constant_automaton(props("p"), False)
    other = gen.rand_automaton(rng, ("p",), 2, dialect=o.FOE1INF, want="any")
    u = au.union_automaton(bot, other)
    for _ in range(10):
        lts = gen.rand_lts(rng, ("p",), max_states=4)
        assert au.accepts(u, lts) == au.accepts(other, lts)


def test_to_formula_agreement_and_fragments():
    rng = random.Random(6)
    for _ in range(30):
        want = rng.choice(["any", "weak", "cw"])
        aut = gen.rand_automaton(rng, ("p",), rng.randint(1, 3),
                                 dialect=rng.choice(list(o.DIALECTS)), want=want)
        f = au.to_formula(aut)
        rep = au.classify_automaton(aut)
        cls = mc.classify(f)
        if rep.weak:
            assert cls.alternation_free
        if rep.continuous_weak:
            assert cls.continuous_calculus
        for _ in range(2):
            lts = gen.rand_lts(rng, ("p",), max_states=4)
            assert au.accepts(aut, lts) == (lts.init in mc.semantics_eval(f, lts))


def test_to_formula_degenerate_top_cluster_unbound():
    # a degenerate cluster introduces no fixpoint binder at all
    ps = props("p")
    delta = {(0, c): (o.TOP if "p" in c else o.BOT) for c in ps.colours()}
    aut = au.ParityAutomaton(o.FOE1, ps, 1, 0, (0,), delta)
    f = au.to_formula(aut)
    assert not [g for g in mc.subformulas(f) if isinstance(g, (mc.Mu, mc.Nu))]
    # while a self-active state does get one per duplicated occurrence
    delta2 = {}
    for c in ps.colours():
        delta2[(0, c)] = o.Exists("x", o.Pred("q1", "x"))
        delta2[(1, c)] = o.Forall("x", o.Pred("q1", "x"))
    aut2 = au.ParityAutomaton(o.FOE1, ps, 2, 0, (0, 0), delta2)
    f2 = au.to_formula(aut2)
    kinds = {type(g) for g in mc.subformulas(f2) if isinstance(g, (mc.Mu, mc.Nu))}
    assert kinds == {mc.Nu}


def test_from_formula_agreement():
    rng = random.Random(7)
    for _ in range(60):
        f = gen.rand_mu(rng, ("p", "q"), depth=rng.randint(1, 3),
                        mode=rng.choice(["any", "af", "cont"]),
                        modalities=rng.choice(["plain", "FOE1INF"]))
        aut = au.from_formula(f, props("p", "q"))
        lts = gen.rand_lts(rng, ("p", "q"), max_states=5)
        assert au.accepts(aut, lts) == (lts.init in mc.semantics_eval(f, lts))


def test_from_formula_fragments():
    rng = random.Random(8)
    for _ in range(40):
        f = gen.rand_mu(rng, ("p",), depth=3, mode="af")
        assert au.classify_automaton(au.from_formula(f, props("p"))).weak
        g = gen.rand_mu(rng, ("p",), depth=3, mode="cont")
        assert au.classify_automaton(au.from_formula(g, props("p"))).continuous_weak


def test_finitary_construct():
    rng = random.Random(9)
    for _ in range(12):
        aut = gen.rand_automaton(rng, ("p",), rng.choice([1, 2, 2, 3]),
                                 dialect=o.FOE1INF, want="cw")
        sim = au.finitary_construct(aut)
        rep = au.classify_automaton(sim)
        assert rep.continuous_weak
        for cl in rep.clusters:
            assert not (cl & sim.macro_states) or cl <= sim.macro_states
        assert all(sim.omega[q] == 1 for q in sim.macro_states)
        for _ in range(2):
            tree = gen.rand_tree(rng, ("p",), depth=3, max_branch=2)
            assert au.accepts(aut, tree) == au.accepts(sim, tree)


def test_noetherian_construct():
    rng = random.Random(10)
    for _ in range(12):
        aut = gen.rand_automaton(rng, ("p",), rng.choice([1, 2, 2, 3]),
                                 dialect=o.FOE1, want="weak")
        sim = au.noetherian_construct(aut)
        rep = au.classify_automaton(sim)
        assert rep.weak
        assert all(sim.omega[q] == 1 for q in sim.macro_states)
        for _ in range(2):
            tree = gen.rand_tree(rng, ("p",), depth=3, max_branch=2)
            assert au.accepts(aut, tree) == au.accepts(sim, tree)


def test_lifted_entries_are_macro_separating():
    # every lifted disjunct uses only empty or singleton macro types
    rng = random.Random(11)
    aut = gen.rand_automaton(rng, ("p",), 2, dialect=o.FOE1, want="weak")
    sim = au.noetherian_construct(aut)
    macro_preds = frozenset(au.pred_name(q) for q in sim.macro_states)
    for q in sim.macro_states:
        for c in sim.props.colours():
            entry = sim.entry(q, c)
            disjuncts = entry.args if isinstance(entry, o.Or) else (entry,)
            for d in disjuncts:
                shape = o.match_nabla(d)
                if shape is None:
                    continue  # the plain conjunction disjunct
                wits, cover, _ = shape
                assert o.separation_sufficient(list(wits) + list(cover), macro_preds)


def test_construct_preconditions():
    rng = random.Random(12)
    aut = gen.rand_automaton(rng, ("p",), 2, dialect=o.FOE1, want="weak")
    with pytest.raises(au.ConstructError):
        au.finitary_construct(aut)  # wrong dialect


def test_projection_lemma_brute_force():
    rng = random.Random(13)
    for kind in ("finitary", "noetherian"):
        for _ in range(6):
            if kind == "finitary":
                aut = gen.rand_automaton(rng, ("p", "r"), rng.randint(1, 2),
                                         dialect=o.FOE1INF, want="cw")
                sim = au.finitary_construct(aut)
            else:
                aut = gen.rand_automaton(rng, ("p", "r"), rng.randint(1, 2),
                                         dialect=o.FOE1, want="weak")
                sim = au.noetherian_construct(aut)
            proj = au.project(sim, "r")
            tree = gen.rand_tree(rng, ("p",), depth=2, max_branch=2)
            lhs = au.accepts(proj, tree)
            rhs = any(
                au.accepts(aut, L.p_variant(tree, "r", [s for s in range(tree.n) if mask >> s & 1]))
                for mask in range(1 << tree.n)
            )
            assert lhs == rhs


def test_project_ignoring_letter():
    # an automaton that never looks at r projects to its r-erasure
    ps2 = props("p", "r")
    delta = {(0, c): o.Forall("x", o.Pred("q0", "x")) for c in ps2.colours()}
    ignoring = au.ParityAutomaton(o.FOE1INF, ps2, 1, 0, (0,), delta,
                                  macro_states=frozenset({0}))
    proj = au.project(ignoring, "r")
    rng = random.Random(14)
    for _ in range(10):
        lts = gen.rand_lts(rng, ("p",), max_states=4)
        assert au.accepts(proj, lts)


def test_diamond_automaton():
    rng = random.Random(15)
    for _ in range(25):
        f = gen.rand_mu(rng, ("p",), depth=2, mode="any")
        base = au.from_formula(f, props("p"))
        lifted = au.ParityAutomaton(o.FOE1, base.props, base.n, base.init,
                                    base.omega, base.delta) if base.dialect == o.FO1 else base
        dia = au.diamond_automaton(lifted)
        assert dia.dialect == o.FO1
        lts = gen.rand_lts(rng, ("p",), max_states=5)
        assert au.accepts(lifted, lts) == au.accepts(dia, lts)
    for _ in range(10):
        aut = gen.rand_automaton(rng, ("p",), 2, dialect=o.FOE1INF, want="weak")
        assert au.classify_automaton(au.diamond_automaton(aut)).weak


def test_json_round_trip():
    rng = random.Random(16)
    aut = gen.rand_automaton(rng, ("p", "q"), 2, dialect=o.FOE1INF, want="any")
    back = au.automaton_from_json(aut.to_json())
    assert back.to_json() == aut.to_json()
