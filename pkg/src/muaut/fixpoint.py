"""Monotone functionals on finite powerset lattices.

Least fixpoints with approximant traces, restrictions, the unfolding game
characterization, descending strategies along the approximants, strategy
trees, and the finite/noetherian witness constructions for restricted
fixpoints.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import chain, combinations
from typing import Callable, Optional

from .lts import LTS, noetherian_subset
from .mucalc import MuFormula, open_eval
from .paritygame import EXISTS, FORALL, ParityGame, solve

UNFOLDING_CARRIER_LIMIT = 12


@dataclass(frozen=True, eq=False)
class MonotoneFunctional:
    """A map on subsets of a finite carrier, assumed monotone.

    Monotonicity is spot-checked on random pairs by the tests; formula
    functionals are monotone by positivity.
    """

    carrier: frozenset[int]
    apply: Callable[[frozenset[int]], frozenset[int]]
    lts: Optional[LTS] = None  # provenance for noetherian filtering

    def __call__(self, xs: frozenset[int]) -> frozenset[int]:
        out = self.apply(frozenset(xs))
        if not out <= self.carrier:
            raise ValueError("functional left the carrier")
        return out


def formula_functional(body: MuFormula, var: str, lts: LTS,
                       env: dict[str, frozenset[int]] | None = None) -> MonotoneFunctional:
    """The functional X -> meaning of the body with the letter set to X."""
    base = dict(env or {})

    def apply(xs: frozenset[int]) -> frozenset[int]:
        return open_eval(body, lts, {**base, var: xs})

    return MonotoneFunctional(frozenset(lts.states()), apply, lts)


def table_functional(carrier, table: dict[frozenset[int], frozenset[int]]) -> MonotoneFunctional:
    return MonotoneFunctional(frozenset(carrier), lambda xs: table[xs])


def monotone_on_samples(f: MonotoneFunctional, pairs) -> bool:
    for lo, hi in pairs:
        if lo <= hi and not f(lo) <= f(hi):
            return False
    return True


def lfp(f: MonotoneFunctional) -> tuple[frozenset[int], list[frozenset[int]]]:
    """Least fixpoint with the full approximant trace (empty set first)."""
    stages = [frozenset()]
    while True:
        nxt = f(stages[-1])
        if nxt == stages[-1]:
            return stages[-1], stages
        if not stages[-1] <= nxt:
            raise ValueError("functional is not monotone along the trace")
        stages.append(nxt)


def restrict(f: MonotoneFunctional, xs: frozenset[int]) -> MonotoneFunctional:
    """The restricted functional: apply, then intersect with xs."""
    xs = frozenset(xs)
    if not xs <= f.carrier:
        raise ValueError("restriction set outside the carrier")
    return MonotoneFunctional(f.carrier, lambda ys: f(ys) & xs, f.lts)


def _playable_sets(f: MonotoneFunctional) -> list[frozenset[int]]:
    n = len(f.carrier)
    if n > UNFOLDING_CARRIER_LIMIT:
        raise ValueError("carrier too large for the unfolding game (limit %d)"
                         % UNFOLDING_CARRIER_LIMIT)
    xs = sorted(f.carrier)
    if n <= 8:
        return [frozenset(c) for c in chain.from_iterable(
            combinations(xs, k) for k in range(n + 1))]
    # larger carriers: approximant stages and greedily shrunk variants
    # (monotonicity makes small witness sets optimal for Exists)
    _, stages = lfp(f)
    out = set(stages)
    for s in sorted(f.carrier):
        for stage in stages:
            if s in f(stage):
                shrunk = stage
                for t in sorted(stage):
                    cand = shrunk - {t}
                    if s in f(cand):
                        shrunk = cand
                out.add(shrunk)
    return sorted(out, key=lambda x: (len(x), sorted(x)))


@dataclass(frozen=True)
class UnfoldingGame:
    game: ParityGame
    positions: tuple
    state_index: dict = field(hash=False)


def unfolding_game(f: MonotoneFunctional) -> UnfoldingGame:
    """Exists picks a set her state belongs to the image of; Forall picks a
    member of it.  Every infinite play is lost by Exists, so her winning
    region on the carrier is exactly the least fixpoint."""
    sets = _playable_sets(f)
    images = {xs: f(xs) for xs in sets}
    positions: list = []
    owner = []
    moves = []
    priority = []
    index: dict = {}
    for s in sorted(f.carrier):
        index[("s", s)] = len(positions)
        positions.append(("s", s))
        owner.append(EXISTS)
        priority.append(1)
        moves.append([])
    for xs in sets:
        index[("X", xs)] = len(positions)
        positions.append(("X", xs))
        owner.append(FORALL)
        priority.append(1)
        moves.append([])
    for s in sorted(f.carrier):
        moves[index[("s", s)]] = [index[("X", xs)] for xs in sets if s in images[xs]]
    for xs in sets:
        moves[index[("X", xs)]] = [index[("s", s)] for s in sorted(xs)]
    game = ParityGame(tuple(owner), tuple(tuple(m) for m in moves), tuple(priority))
    state_index = {s: index[("s", s)] for s in sorted(f.carrier)}
    return UnfoldingGame(game, tuple(positions), state_index)


def unfolding_region(f: MonotoneFunctional) -> frozenset[int]:
    ug = unfolding_game(f)
    sol = solve(ug.game)
    return frozenset(s for s, i in ug.state_index.items() if i in sol.win_exists)


def descending_strategy(f: MonotoneFunctional) -> dict[int, frozenset[int]]:
    """Exists's move at each fixpoint member: the approximant stage just
    below its entry stage.  Descending by construction and winning because
    stages strictly decrease along any play."""
    fix, stages = lfp(f)
    strat = {}
    for s in sorted(fix):
        beta = next(i for i, st in enumerate(stages[1:], start=1) if s in st) - 1
        strat[s] = stages[beta]
    return strat


def is_descending(f: MonotoneFunctional, strat: dict[int, frozenset[int]]) -> bool:
    _, stages = lfp(f)
    for alpha in range(len(stages) - 1):
        for s in stages[alpha + 1]:
            if s in strat and not strat[s] <= stages[alpha]:
                return False
    return True


def strategy_wins(f: MonotoneFunctional, strat: dict[int, frozenset[int]], start: int) -> bool:
    """Check the positional strategy beats every Forall behaviour from start:
    moves legal, and no cycle reachable under the strategy."""
    seen = set()
    stack = [start]
    while stack:
        s = stack.pop()
        if s in seen:
            continue
        seen.add(s)
        if s not in strat:
            return False
        xs = strat[s]
        if s not in f(xs):
            return False
        stack.extend(xs)
    graph = {s: strat[s] for s in seen}
    # cycle detection along strategy moves
    colour = {}

    def dfs(u):
        colour[u] = 1
        for v in graph[u]:
            if colour.get(v) == 1:
                return False
            if colour.get(v, 0) == 0 and not dfs(v):
                return False
        colour[u] = 2
        return True

    return all(dfs(u) for u in graph if colour.get(u, 0) == 0)


@dataclass(frozen=True)
class StrategyTree:
    root: int
    nodes: frozenset[int]
    children: dict = field(hash=False)  # node -> frozenset of children


def strategy_tree(f: MonotoneFunctional, strat: dict[int, frozenset[int]], root: int) -> StrategyTree:
    """States reachable under the strategy from the root, with the move
    sets as child sets; well-founded whenever the strategy is winning."""
    if root not in strat:
        raise ValueError("root is not a winning position for the strategy")
    nodes = set()
    stack = [root]
    children = {}
    while stack:
        s = stack.pop()
        if s in nodes:
            continue
        nodes.add(s)
        kids = strat.get(s, frozenset())
        children[s] = frozenset(kids)
        stack.extend(kids)
    if not strategy_wins(f, strat, root):
        raise ValueError("strategy is not winning from the root")
    return StrategyTree(root, frozenset(nodes), children)


def finite_witness(f: MonotoneFunctional, s: int) -> Optional[frozenset[int]]:
    """A finite restriction set X with s in the least fixpoint of the
    restriction, built backwards through the approximants; None when s is
    not in the fixpoint at all."""
    fix, stages = lfp(f)
    if s not in fix:
        return None
    n = next(i for i, st in enumerate(stages) if s in st)
    layers = [frozenset({s})]
    for i in range(n - 1, 0, -1):
        prev = set()
        for u in layers[-1]:
            # a small subset of stage i supporting u, shrunk greedily
            base = stages[i]
            if u not in f(base):
                raise AssertionError("trace inconsistency")
            shrunk = base
            for t in sorted(base):
                cand = shrunk - {t}
                if u in f(cand):
                    shrunk = cand
            prev |= shrunk
        layers.append(frozenset(prev))
    return frozenset().union(*layers)


def brute_force_witness(f: MonotoneFunctional, s: int, noetherian_only: bool = False) -> Optional[frozenset[int]]:
    """Smallest restriction set whose restricted fixpoint contains s, by
    subset enumeration; optionally only noetherian sets of the underlying
    system are tried."""
    if len(f.carrier) > 8:
        raise ValueError("carrier too large for subset enumeration")
    xs = sorted(f.carrier)
    for k in range(len(xs) + 1):
        for combo in combinations(xs, k):
            cand = frozenset(combo)
            if noetherian_only and f.lts is not None and not noetherian_subset(f.lts, cand):
                continue
            fix, _ = lfp(restrict(f, cand))
            if s in fix:
                return cand
    return None
