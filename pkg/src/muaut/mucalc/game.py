"""Evaluation games for fixpoint formulas.

Positions pair subformulas with states; the modality move lets Exists pick
a witness set Z of (argument, successor) pairs whose induced valuation
satisfies the one-step formula, and Forall then picks one pair.  Priorities
sit on variable-unfolding positions: binder type gives the parity, binder
depth the order (outermost highest), which encodes the dominant-unfolding
winning condition under the max-even convention.
"""
from __future__ import annotations

from dataclasses import dataclass

from .. import onestep as o
from ..lts import LTS
from ..paritygame import EXISTS, FORALL, ParityGame
from .ast import (MAnd, Modal, MOr, Mu, MuFormula, NegProp, Nu, Prop,
                  check_wf, free_letters, subformulas)
from .semantics import onestep_model_at


def binder_priorities(f: MuFormula) -> dict[str, int]:
    """Priority per bound letter: nu even, mu odd, outer above inner."""
    depths: dict[str, tuple[int, bool]] = {}

    def walk(g: MuFormula, d: int):
        match g:
            case Mu(p, b):
                depths[p] = (d, True)
                walk(b, d + 1)
            case Nu(p, b):
                depths[p] = (d, False)
                walk(b, d + 1)
            case MAnd(args) | MOr(args) | Modal(_, args):
                for a in args:
                    walk(a, d)
            case _:
                pass

    walk(f, 0)
    maxd = max((d for d, _ in depths.values()), default=0)
    out = {}
    for p, (d, is_mu) in depths.items():
        base = 2 * (maxd - d)
        out[p] = base + 1 if is_mu else base
    return out


@dataclass(frozen=True)
class EvalGame:
    game: ParityGame
    positions: tuple  # parallel description of each position
    root: int


def modality_moves(g: Modal, lts: LTS, s: int, full_enumeration: bool = False):
    """Witness sets available to Exists at a modality position.

    By monotonicity, subset-minimal witness sets suffice: any satisfying
    set extends a minimal one and only offers Forall more options.  The
    full enumeration is kept as a regression oracle.
    """
    succ = lts.successors(s)
    preds = g.pred_names()
    if full_enumeration:
        import itertools
        pairs = [(i, t) for i in range(len(g.args)) for t in succ]
        out = []
        for k in range(len(pairs) + 1):
            for combo in itertools.combinations(pairs, k):
                zset = frozenset(combo)
                val = {a: frozenset(t for (i, t) in zset if preds[i] == a) for a in preds}
                idx = {t: i for i, t in enumerate(succ)}
                m = o.OneStepModel(len(succ), {a: frozenset(idx[t] for t in v) for a, v in val.items()})
                if o.eval_finite(g.alpha, m):
                    out.append(zset)
        return out
    idx = {t: i for i, t in enumerate(succ)}
    mins = o.min_valuations(g.alpha, tuple(range(len(succ))))
    name_to_arg = {preds[i]: i for i in range(len(g.args))}
    out = []
    for mv in mins:
        out.append(frozenset((name_to_arg[a], succ[d]) for (a, d) in mv))
    return sorted(set(out), key=lambda z: (len(z), sorted(z)))


def build_eval_game(f: MuFormula, lts: LTS) -> EvalGame:
    """The evaluation game of f on lts, rooted at (f, initial state)."""
    check_wf(f)
    missing = free_letters(f) - set(lts.props.names)
    if missing:
        raise ValueError("letters not in the alphabet: %r" % sorted(missing))
    prio = binder_priorities(f)
    binder_body: dict[str, MuFormula] = {}
    bound = set()
    for g in subformulas(f):
        if isinstance(g, (Mu, Nu)):
            binder_body[g.var] = g.body
            bound.add(g.var)

    index: dict = {}
    desc = []
    owner = []
    moves: list[list[int]] = []
    priority = []

    def intern(pos) -> int:
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

    todo: list = []
    root_pos = ("f", f, lts.init)
    intern(root_pos)
    while todo:
        pos = todo.pop()
        i = index[pos]
        if pos[0] == "z":
            _, zset = pos
            owner[i] = FORALL
            priority[i] = 0
            moves[i] = [intern(("f", g, t)) for (g, t) in sorted(zset, key=lambda p: (p[1], str(p[0])))]
            continue
        _, g, s = pos
        match g:
            case Prop(p) if p not in bound:
                holds = p in lts.colours[s]
                owner[i] = FORALL if holds else EXISTS
                moves[i] = []
            case NegProp(p):
                holds = p in lts.colours[s]
                owner[i] = EXISTS if holds else FORALL
                moves[i] = []
            case Prop(p):
                owner[i] = EXISTS  # forced unfolding move
                priority[i] = prio[p]
                moves[i] = [intern(("f", binder_body[p], s))]
            case MOr(args):
                owner[i] = EXISTS
                moves[i] = [intern(("f", a, s)) for a in args]
            case MAnd(args):
                owner[i] = FORALL
                moves[i] = [intern(("f", a, s)) for a in args]
            case Modal(_, args):
                owner[i] = EXISTS
                zmoves = modality_moves(g, lts, s)
                out = []
                for zset in zmoves:
                    zz = frozenset((args[ai], t) for (ai, t) in zset)
                    out.append(intern(("z", zz)))
                moves[i] = out
            case Mu(p, b) | Nu(p, b):
                owner[i] = EXISTS  # forced move
                moves[i] = [intern(("f", b, s))]
            case _:
                raise TypeError(g)

    game = ParityGame(tuple(owner), tuple(tuple(m) for m in moves), tuple(priority))
    return EvalGame(game, tuple(desc), index[root_pos])


def game_value(f: MuFormula, lts: LTS) -> bool:
    """Does Exists win the evaluation game from the root?"""
    from ..paritygame import solve

    eg = build_eval_game(f, lts)
    return eg.root in solve(eg.game).win_exists
