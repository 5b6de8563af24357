"""Fixpoint semantics on finite transition systems."""
from __future__ import annotations

from .. import onestep as o
from ..lts import LTS
from .ast import (MAnd, Modal, MOr, Mu, MuFormula, NegProp, Nu, Prop,
                  check_wf, free_letters)


class UnboundLetterError(ValueError):
    pass


def onestep_model_at(lts: LTS, s: int, preds, arg_sets) -> o.OneStepModel:
    """One-step model carried by the successor set of s: domain R[s]
    (reindexed densely), predicate i true at the successors in arg_sets[i]."""
    succ = lts.successors(s)
    idx = {t: i for i, t in enumerate(succ)}
    val = {a: frozenset(idx[t] for t in succ if t in ext) for a, ext in zip(preds, arg_sets)}
    return o.OneStepModel(len(succ), val)


def open_eval(f: MuFormula, lts: LTS, env: dict[str, frozenset[int]]) -> frozenset[int]:
    """Meaning of a formula whose extra letters are interpreted by env.

    Least fixpoints iterate upward from the empty set, greatest downward
    from the full state set; both stabilize within |states| rounds.
    Modalities evaluate pointwise on the one-step model of the successors.
    """
    missing = free_letters(f) - set(lts.props.names) - set(env)
    if missing:
        raise UnboundLetterError("letters not in the alphabet: %r" % sorted(missing))
    full = frozenset(lts.states())

    def sem(g: MuFormula, env: dict[str, frozenset[int]]) -> frozenset[int]:
        match g:
            case Prop(p):
                return env[p] if p in env else lts.holds(p)
            case NegProp(p):
                return full - (env[p] if p in env else lts.holds(p))
            case MAnd(args):
                out = full
                for a in args:
                    out &= sem(a, env)
                return out
            case MOr(args):
                out = frozenset()
                for a in args:
                    out |= sem(a, env)
                return out
            case Modal(alpha, args):
                preds = g.pred_names()
                arg_sets = [sem(a, env) for a in args]
                return frozenset(
                    s for s in lts.states()
                    if o.eval_finite(alpha, onestep_model_at(lts, s, preds, arg_sets))
                )
            case Mu(p, b):
                x: frozenset[int] = frozenset()
                while True:
                    nxt = sem(b, {**env, p: x})
                    if nxt == x:
                        return x
                    x = nxt
            case Nu(p, b):
                x = full
                while True:
                    nxt = sem(b, {**env, p: x})
                    if nxt == x:
                        return x
                    x = nxt
        raise TypeError(g)

    return sem(f, env)


def semantics_eval(f: MuFormula, lts: LTS) -> frozenset[int]:
    """The set of states where the (well-formed, closed-over-the-alphabet)
    formula holds."""
    check_wf(f)
    return open_eval(f, lts, {})


def holds_at_init(f: MuFormula, lts: LTS) -> bool:
    return lts.init in semantics_eval(f, lts)


def approximant_trace(body: MuFormula, var: str, lts: LTS,
                      env: dict[str, frozenset[int]] | None = None) -> list[frozenset[int]]:
    """Stages of the upward iteration for `mu var. body`: empty set first,
    fixpoint last."""
    env = dict(env or {})
    stages = [frozenset()]
    while True:
        env[var] = stages[-1]
        nxt = open_eval(body, lts, env)
        if nxt == stages[-1]:
            return stages
        stages.append(nxt)
