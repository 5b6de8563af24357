"""Finite pointed labelled transition systems.

States are dense integers 0..n-1; colours are subsets of a fixed, ordered
proposition alphabet.  All values are immutable after construction and all
operations are pure functions.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Optional

MAX_PROPS = 8


class SignatureError(ValueError):
    """Raised when two systems disagree on their proposition alphabet."""


@dataclass(frozen=True)
class PropSet:
    """Ordered finite set of proposition letters (at most MAX_PROPS)."""

    names: tuple[str, ...]

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("duplicate proposition letters: %r" % (self.names,))
        if len(self.names) > MAX_PROPS:
            raise ValueError("too many proposition letters (max %d)" % MAX_PROPS)

    def __contains__(self, name: str) -> bool:
        return name in self.names

    def __iter__(self):
        return iter(self.names)

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        return self.names.index(name)

    def canon(self, colour: Iterable[str]) -> frozenset[str]:
        """Canonical colour: validated frozenset over this alphabet."""
        c = frozenset(colour)
        for p in c:
            if p not in self.names:
                raise ValueError("unknown proposition letter %r" % p)
        return c

    def colours(self) -> list[frozenset[str]]:
        """All colours in binary-counter order of the letter ordering."""
        out = []
        for mask in range(1 << len(self.names)):
            out.append(frozenset(p for i, p in enumerate(self.names) if mask >> i & 1))
        return out

    def with_letter(self, p: str) -> "PropSet":
        return self if p in self.names else PropSet(self.names + (p,))

    def without_letter(self, p: str) -> "PropSet":
        return PropSet(tuple(q for q in self.names if q != p))


@dataclass(frozen=True)
class LTS:
    """Pointed LTS with proposition colouring.

    The constructor does not validate; use validate() to check invariants
    on possibly malformed data.
    """

    props: PropSet
    n: int
    edges: frozenset[tuple[int, int]]
    colours: tuple[frozenset[str], ...]
    init: int

    def successors(self, s: int) -> tuple[int, ...]:
        return tuple(sorted(t for (u, t) in self.edges if u == s))

    def predecessors(self, s: int) -> tuple[int, ...]:
        return tuple(sorted(u for (u, t) in self.edges if t == s))

    def colour(self, s: int) -> frozenset[str]:
        return self.colours[s]

    def states(self) -> range:
        return range(self.n)

    def holds(self, p: str) -> frozenset[int]:
        """Extension of letter p (the valuation view of the colouring)."""
        return frozenset(s for s in range(self.n) if p in self.colours[s])

    def reachable(self, start: Optional[int] = None) -> frozenset[int]:
        start = self.init if start is None else start
        seen = {start}
        stack = [start]
        while stack:
            u = stack.pop()
            for t in self.successors(u):
                if t not in seen:
                    seen.add(t)
                    stack.append(t)
        return frozenset(seen)

    def to_json(self) -> dict:
        colors = {
            str(s): sorted(self.colours[s]) for s in range(self.n) if self.colours[s]
        }
        return {
            "props": list(self.props.names),
            "states": self.n,
            "edges": sorted([list(e) for e in self.edges]),
            "colors": colors,
            "init": self.init,
        }


def make_lts(
    props: Iterable[str],
    n: int,
    edges: Iterable[tuple[int, int]],
    colours: dict[int, Iterable[str]],
    init: int = 0,
) -> LTS:
    """Build and validate an LTS; unlisted states get the empty colour."""
    ps = PropSet(tuple(props))
    cols = tuple(ps.canon(colours.get(s, ())) for s in range(n))
    lts = LTS(ps, n, frozenset((int(a), int(b)) for a, b in edges), cols, init)
    rep = validate(lts)
    if not rep.ok:
        raise ValueError("invalid LTS: " + "; ".join(rep.errors))
    return lts


def from_json(data: dict) -> LTS:
    """Parse the workbench LTS text format.

    Format: {"props":["p","q"],"states":N,"edges":[[i,j],...],
             "colors":{"i":["p"],...},"init":0}.
    """
    ps = PropSet(tuple(data["props"]))
    n = int(data["states"])
    edges = frozenset((int(a), int(b)) for a, b in data.get("edges", []))
    colmap = {int(k): v for k, v in data.get("colors", {}).items()}
    cols = []
    for s in range(n):
        raw = colmap.get(s, ())
        cols.append(frozenset(raw))
    lts = LTS(ps, n, edges, tuple(cols), int(data.get("init", 0)))
    rep = validate(lts)
    if not rep.ok:
        raise ValueError("invalid LTS: " + "; ".join(rep.errors))
    return lts


def load(path: str) -> LTS:
    with open(path) as f:
        return from_json(json.load(f))


@dataclass(frozen=True)
class TreeCertificate:
    """Parent map of a tree-shaped LTS (root excluded)."""

    root: int
    parent: dict[int, int] = field(hash=False)


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    errors: tuple[str, ...]
    reachable: frozenset[int]
    tree: Optional[TreeCertificate]


def validate(lts: LTS) -> ValidationReport:
    """Check structural invariants and detect tree shape.

    A system is a tree when every state is reachable from the initial one
    and every non-initial state has exactly one predecessor (the initial
    state has none).
    """
    errors = []
    if not (0 <= lts.init < lts.n):
        errors.append("initial state %d out of range" % lts.init)
    for (a, b) in sorted(lts.edges):
        if not (0 <= a < lts.n):
            errors.append("dangling source %d" % a)
        if not (0 <= b < lts.n):
            errors.append("dangling target %d" % b)
    if len(lts.colours) != lts.n:
        errors.append("colouring not total: %d entries for %d states" % (len(lts.colours), lts.n))
    else:
        for s, c in enumerate(lts.colours):
            for p in c:
                if p not in lts.props:
                    errors.append("state %d coloured with unknown letter %r" % (s, p))
    if errors:
        return ValidationReport(False, tuple(errors), frozenset(), None)

    reach = lts.reachable()
    tree = None
    if len(reach) == lts.n:
        parent: dict[int, int] = {}
        is_tree = len(lts.predecessors(lts.init)) == 0
        for s in range(lts.n):
            if s == lts.init:
                continue
            preds = lts.predecessors(s)
            if len(preds) != 1:
                is_tree = False
                break
            parent[s] = preds[0]
        if is_tree:
            tree = TreeCertificate(lts.init, parent)
    return ValidationReport(True, (), reach, tree)


def p_variant(lts: LTS, p: str, xs: Iterable[int]) -> LTS:
    """The variant where letter p holds exactly on xs; off p nothing changes."""
    xset = set(xs)
    for s in xset:
        if not (0 <= s < lts.n):
            raise ValueError("unknown state %d in variant set" % s)
    props = lts.props.with_letter(p)
    cols = tuple(
        frozenset((c - {p}) | ({p} if s in xset else set()))
        for s, c in enumerate(lts.colours)
    )
    return LTS(props, lts.n, lts.edges, cols, lts.init)


def drop_letter(lts: LTS, p: str) -> LTS:
    """Erase letter p from the alphabet and every colour."""
    props = lts.props.without_letter(p)
    cols = tuple(c - {p} for c in lts.colours)
    return LTS(props, lts.n, lts.edges, cols, lts.init)


def _refine_partition(block_of: list[int], succ: list[tuple[int, ...]]) -> list[int]:
    # coarsest stable refinement: signature = (block, set of successor blocks)
    while True:
        sigs = {}
        new = []
        for s in range(len(block_of)):
            sig = (block_of[s], frozenset(block_of[t] for t in succ[s]))
            if sig not in sigs:
                sigs[sig] = len(sigs)
            new.append(sigs[sig])
        if new == block_of:
            return block_of
        block_of = new


def bisimilar(s: LTS, t: LTS) -> Optional[frozenset[tuple[int, int]]]:
    """Greatest bisimulation between two systems, or None.

    Runs partition refinement on the disjoint union; when the initial states
    end up in the same block, returns the full cross relation of same-block
    state pairs (a bisimulation containing the initial pair).
    """
    if s.props.names != t.props.names:
        raise SignatureError("proposition alphabets differ: %r vs %r" % (s.props.names, t.props.names))
    # disjoint union: states of t shifted by s.n
    succ = [s.successors(u) for u in range(s.n)]
    succ += [tuple(v + s.n for v in t.successors(u)) for u in range(t.n)]
    colours = list(s.colours) + list(t.colours)
    col_ids: dict[frozenset[str], int] = {}
    block_of = []
    for c in colours:
        if c not in col_ids:
            col_ids[c] = len(col_ids)
        block_of.append(col_ids[c])
    block_of = _refine_partition(block_of, succ)
    if block_of[s.init] != block_of[t.init + s.n]:
        return None
    rel = frozenset(
        (u, v)
        for u in range(s.n)
        for v in range(t.n)
        if block_of[u] == block_of[v + s.n]
    )
    return rel


def is_bisimulation(s: LTS, t: LTS, rel: Iterable[tuple[int, int]]) -> bool:
    """Definition-level check of the atom/forth/back conditions."""
    rel = set(rel)
    for (u, v) in rel:
        if s.colours[u] != t.colours[v]:
            return False
        for u2 in s.successors(u):
            if not any((u2, v2) in rel for v2 in t.successors(v)):
                return False
        for v2 in t.successors(v):
            if not any((u2, v2) in rel for u2 in s.successors(u)):
                return False
    return True


def bisimilar_to_depth(s: LTS, t: LTS, d: int) -> bool:
    """Bounded bisimulation game: behavioural equivalence up to depth d."""
    if s.props.names != t.props.names:
        raise SignatureError("proposition alphabets differ")

    memo: dict[tuple[int, int, int], bool] = {}

    def go(u: int, v: int, k: int) -> bool:
        key = (u, v, k)
        if key in memo:
            return memo[key]
        ok = s.colours[u] == t.colours[v]
        if ok and k > 0:
            ok = all(
                any(go(u2, v2, k - 1) for v2 in t.successors(v))
                for u2 in s.successors(u)
            ) and all(
                any(go(u2, v2, k - 1) for u2 in s.successors(u))
                for v2 in t.successors(v)
            )
        memo[key] = ok
        return ok

    return go(s.init, t.init, d)


def unravel_to_depth(lts: LTS, d: int) -> LTS:
    """Tree of paths from the initial state, truncated at depth d.

    Test scaffolding only: full unravellings are infinite objects and out
    of scope; the result is depth-d behaviourally equivalent to the input.
    """
    if d < 0:
        raise ValueError("depth must be non-negative")
    paths: list[tuple[int, ...]] = [(lts.init,)]
    index = {(lts.init,): 0}
    edges = set()
    queue = [(lts.init,)]
    while queue:
        path = queue.pop(0)
        if len(path) > d:
            continue
        for t in lts.successors(path[-1]):
            ext = path + (t,)
            index[ext] = len(paths)
            paths.append(ext)
            edges.add((index[path], index[ext]))
            if len(ext) <= d:
                queue.append(ext)
    cols = tuple(lts.colours[p[-1]] for p in paths)
    return LTS(lts.props, len(paths), frozenset(edges), cols, 0)


def noetherian_subset(lts: LTS, xs: Iterable[int]) -> bool:
    """Is xs coverable by a chain-free bundle of finite paths?

    On a finite system this holds iff xs is empty or some state reaches
    every member of xs: one finite path per member then forms a finite
    (hence chain-free) bundle rooted at that state.
    """
    xset = set(xs)
    for s in xset:
        if not (0 <= s < lts.n):
            raise ValueError("unknown state %d" % s)
    if not xset:
        return True
    return any(xset <= lts.reachable(s) for s in range(lts.n))


def quotient(lts: LTS) -> LTS:
    """Bisimulation quotient (same alphabet, bisimilar to the input)."""
    succ = [lts.successors(u) for u in range(lts.n)]
    col_ids: dict[frozenset[str], int] = {}
    block_of = []
    for c in lts.colours:
        if c not in col_ids:
            col_ids[c] = len(col_ids)
        block_of.append(col_ids[c])
    block_of = _refine_partition(block_of, succ)
    nblocks = max(block_of) + 1
    edges = frozenset((block_of[a], block_of[b]) for (a, b) in lts.edges)
    cols: list[frozenset[str]] = [frozenset()] * nblocks
    for s in range(lts.n):
        cols[block_of[s]] = lts.colours[s]
    return LTS(lts.props, nblocks, edges, tuple(cols), block_of[lts.init])
