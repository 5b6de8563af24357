"""Parity automata over one-step languages.

States are dense integers; state i appears in transition formulas as the
predicate "q<i>".  The transition table is dense over the colour alphabet
(the powerset of the proposition letters) and every entry is positive in
the state predicates.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .. import onestep as o
from ..lts import LTS, PropSet
from ..paritygame import EXISTS, FORALL, ParityGame, Solution, solve


def pred_name(state: int) -> str:
    return "q%d" % state


def pred_state(name: str) -> int:
    return int(name[1:])


@dataclass(frozen=True, eq=False)
class ParityAutomaton:
    dialect: str
    props: PropSet
    n: int
    init: int
    omega: tuple[int, ...]
    delta: dict  # (state, colour frozenset) -> one-step Formula
    macro_states: frozenset[int] = frozenset()  # second sort of a construct

    def __post_init__(self):
        if len(self.omega) != self.n:
            raise ValueError("priority map not total")
        if not (0 <= self.init < self.n):
            raise ValueError("initial state out of range")
        colours = self.props.colours()
        for a in range(self.n):
            for c in colours:
                if (a, c) not in self.delta:
                    raise ValueError("transition table misses state %d at colour %r" % (a, sorted(c)))
        for (a, c), f in self.delta.items():
            if not o.is_positive(f):
                raise ValueError("transition formula not positive at (%d,%r)" % (a, sorted(c)))
            need = o.min_dialect(f)
            if o.DIALECTS.index(need) > o.DIALECTS.index(self.dialect):
                raise ValueError("entry at (%d,%r) uses %s syntax" % (a, sorted(c), need))
            for p in o.predicates(f):
                s = pred_state(p)
                if not (0 <= s < self.n):
                    raise ValueError("entry mentions unknown state predicate %r" % p)

    def entry(self, a: int, colour: frozenset[str]) -> o.Formula:
        return self.delta[(a, colour)]

    def to_json(self) -> dict:
        out = {}
        for (a, c), f in sorted(self.delta.items(), key=lambda kv: (kv[0][0], sorted(kv[0][1]))):
            out["%d,%s" % (a, ",".join(sorted(c)))] = o.pretty(f)
        return {
            "dialect": self.dialect,
            "props": list(self.props.names),
            "states": self.n,
            "init": self.init,
            "omega": list(self.omega),
            "delta": out,
            "macro": sorted(self.macro_states),
        }


def automaton_from_json(data: dict) -> ParityAutomaton:
    props = PropSet(tuple(data["props"]))
    delta = {}
    for key, text in data["delta"].items():
        head, _, rest = key.partition(",")
        colour = frozenset(x for x in rest.split(",") if x)
        delta[(int(head), props.canon(colour))] = o.parse_formula(text)
    return ParityAutomaton(
        data["dialect"], props, int(data["states"]), int(data["init"]),
        tuple(int(x) for x in data["omega"]), delta,
        frozenset(data.get("macro", ())),
    )


def load(path: str) -> ParityAutomaton:
    with open(path) as f:
        return automaton_from_json(json.load(f))


class AlphabetMismatch(ValueError):
    pass


@dataclass(frozen=True)
class AcceptanceGame:
    game: ParityGame
    positions: tuple
    root: int


def acceptance_game(aut: ParityAutomaton, lts: LTS, full_enumeration: bool = False) -> AcceptanceGame:
    """The acceptance parity game.

    Basic positions (state, node) belong to Exists with the state's
    priority; her moves are valuations of the state predicates over the
    node's successors satisfying the transition entry.  Valuation
    positions belong to Forall with priority 0.  Minimal valuations
    suffice by monotonicity; the full enumeration is a regression oracle.
    """
    if aut.props.names != lts.props.names:
        raise AlphabetMismatch("automaton alphabet %r vs system %r" % (aut.props.names, lts.props.names))

    index: dict = {}
    desc = []
    owner = []
    moves: list[list[int]] = []
    priority = []
    todo: list = []

    def intern(pos):
        if pos in index:
            return index[pos]
        i = len(desc)
        index[pos] = i
        desc.append(pos)
        owner.append(EXISTS)
        moves.append([])
        priority.append(0)
        todo.append(pos)
        return i

    root = intern(("b", aut.init, lts.init))
    while todo:
        pos = todo.pop()
        i = index[pos]
        if pos[0] == "b":
            _, a, s = pos
            owner[i] = EXISTS
            priority[i] = aut.omega[a]
            f = aut.entry(a, lts.colours[s])
            succ = lts.successors(s)
            vals = _satisfying_valuations(f, succ, full_enumeration)
            moves[i] = [intern(("v", v)) for v in vals]
        else:
            _, v = pos
            owner[i] = FORALL
            priority[i] = 0
            moves[i] = [intern(("b", pred_state(a), t)) for (a, t) in sorted(v)]

    game = ParityGame(tuple(owner), tuple(tuple(m) for m in moves), tuple(priority))
    return AcceptanceGame(game, tuple(desc), root)


def _satisfying_valuations(f: o.Formula, succ: tuple[int, ...], full: bool):
    if full:
        import itertools
        preds = sorted(o.predicates(f))
        pairs = [(a, t) for a in preds for t in succ]
        out = []
        for k in range(len(pairs) + 1):
            for combo in itertools.combinations(pairs, k):
                vset = frozenset(combo)
                idx = {t: j for j, t in enumerate(succ)}
                val: dict[str, set] = {a: set() for a in preds}
                for (a, t) in vset:
                    val[a].add(idx[t])
                m = o.OneStepModel(len(succ), {a: frozenset(v) for a, v in val.items()})
                if o.eval_finite(f, m):
                    out.append(vset)
        return out
    return o.min_valuations(f, succ)


def accepts(aut: ParityAutomaton, lts: LTS) -> bool:
    ag = acceptance_game(aut, lts)
    return ag.root in solve(ag.game).win_exists


def complement(aut: ParityAutomaton) -> ParityAutomaton:
    """Dualize every entry and shift every priority by one."""
    delta = {k: o.dual(f) for k, f in aut.delta.items()}
    return ParityAutomaton(aut.dialect, aut.props, aut.n, aut.init,
                           tuple(w + 1 for w in aut.omega), delta, aut.macro_states)


@dataclass(frozen=True)
class ClusterReport:
    clusters: tuple[frozenset[int], ...]
    degenerate: tuple[bool, ...]
    higher: frozenset[tuple[int, int]]  # cluster-index pairs (i higher than j)
    weak: bool
    continuous_weak: bool


def occurrence_edges(aut: ParityAutomaton) -> dict[int, set[int]]:
    out: dict[int, set[int]] = {a: set() for a in range(aut.n)}
    for (a, _), f in aut.delta.items():
        for p in o.predicates(f):
            out[a].add(pred_state(p))
    return out


def classify_automaton(aut: ParityAutomaton) -> ClusterReport:
    """Clusters (cells of mutual reachability), weakness and continuity.

    Weakness: constant priority per cluster.  Continuity: on every cluster
    M, odd states have all entries in the M-continuous fragment and even
    states in the co-continuous one.
    """
    from ..paritygame import _sccs

    edges = occurrence_edges(aut)
    graph = {a: sorted(edges[a]) for a in range(aut.n)}
    comps = _sccs(list(range(aut.n)), graph)
    clusters = tuple(frozenset(c) for c in comps)
    which = {}
    for i, c in enumerate(clusters):
        for a in c:
            which[a] = i
    degenerate = tuple(
        len(c) == 1 and next(iter(c)) not in edges[next(iter(c))]
        for c in clusters
    )
    # reachability between clusters
    reach: dict[int, set[int]] = {a: set() for a in range(aut.n)}
    for a in range(aut.n):
        stack = [a]
        seen = set()
        while stack:
            u = stack.pop()
            for v in edges[u]:
                if v not in seen:
                    seen.add(v)
                    stack.append(v)
        reach[a] = seen
    higher = set()
    for i, ci in enumerate(clusters):
        for j, cj in enumerate(clusters):
            if i != j and all(b in reach[a] for a in ci for b in cj):
                higher.add((i, j))
    weak = all(len({aut.omega[a] for a in c}) == 1 for c in clusters)
    cw = weak
    if weak:
        for c in clusters:
            mpreds = frozenset(pred_name(a) for a in c)
            for a in c:
                for colour in aut.props.colours():
                    f = aut.entry(a, colour)
                    if aut.omega[a] % 2 == 1:
                        if not o.continuous_entry(f, mpreds):
                            cw = False
                    else:
                        if not o.cocontinuous_entry(f, mpreds):
                            cw = False
    return ClusterReport(clusters, degenerate, frozenset(higher), weak, cw)


class NotWeakError(ValueError):
    pass


def normalize_weak_priorities(aut: ParityAutomaton) -> ParityAutomaton:
    """Collapse priorities of a weak automaton to {0,1} by parity."""
    if not classify_automaton(aut).weak:
        raise NotWeakError("priority normalization needs a weak automaton")
    return ParityAutomaton(aut.dialect, aut.props, aut.n, aut.init,
                           tuple(w % 2 for w in aut.omega), aut.delta, aut.macro_states)


def _shift_formula(f: o.Formula, offset: int) -> o.Formula:
    mapping = {}
    for p in o.predicates(f):
        mapping[p] = pred_name(pred_state(p) + offset)
    return o.rename_pred(f, mapping)


def union_automaton(a0: ParityAutomaton, a1: ParityAutomaton) -> ParityAutomaton:
    """Disjoint union plus a fresh initial state whose entries disjoin the
    two initial entries; the new state forms its own degenerate cluster."""
    if a0.props.names != a1.props.names:
        raise AlphabetMismatch("alphabets differ")
    dialect = max(a0.dialect, a1.dialect, key=o.DIALECTS.index)
    n = a0.n + a1.n + 1
    init = n - 1
    delta = {}
    for c in a0.props.colours():
        for a in range(a0.n):
            delta[(a, c)] = a0.entry(a, c)
        for a in range(a1.n):
            delta[(a + a0.n, c)] = _shift_formula(a1.entry(a, c), a0.n)
        delta[(init, c)] = o.disj([
            a0.entry(a0.init, c),
            _shift_formula(a1.entry(a1.init, c), a0.n),
        ])
    omega = a0.omega + a1.omega + (1,)
    macro = a0.macro_states | frozenset(m + a0.n for m in a1.macro_states)
    return ParityAutomaton(dialect, a0.props, n, init, omega, delta, macro)


def constant_automaton(props: PropSet, value: bool, dialect: str = o.FOE1INF) -> ParityAutomaton:
    """One-state automaton accepting everything or nothing."""
    f = o.TOP if value else o.BOT
    delta = {(0, c): f for c in props.colours()}
    return ParityAutomaton(dialect, props, 1, 0, (0,), delta)
