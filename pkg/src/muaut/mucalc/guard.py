"""Guarded transformation.

Two semantic facts drive the rewrite, both applied bottom-up per binder:

* an inner binder containing an unguarded occurrence of the outer letter
  can be unfolded once; since its own letter is already guarded, the
  copies substituted into guarded positions become guarded;
* once every unguarded occurrence of the letter sits at the boolean level,
  replacing those occurrences by bottom (for a least binder; top for a
  greatest) preserves the fixpoint: entering through an un-modalized
  occurrence requires already being in the approximant.

Worst-case exponential; fine at the scale this workbench targets.
"""
from __future__ import annotations

from .ast import (MAnd, MBOT, MTOP, Modal, MOr, Mu, MuFormula, NegProp, Nu,
                  Prop, refresh, simplify, substitute)


def _has_unguarded_under_binder(f: MuFormula, p: str) -> bool:
    """Is some unguarded occurrence of p strictly inside an inner binder?"""

    def go(g: MuFormula, inside: bool) -> bool:
        match g:
            case Prop(q):
                return inside and q == p
            case NegProp():
                return False
            case MAnd(args) | MOr(args):
                return any(go(a, inside) for a in args)
            case Modal():
                return False
            case Mu(_, b) | Nu(_, b):
                return go(b, True)
        raise TypeError(g)

    return go(f, False)


def _unfold_offending_binder(f: MuFormula, p: str) -> MuFormula:
    """Unfold one innermost binder that hides an unguarded occurrence of p."""

    def offender(g: MuFormula) -> bool:
        # g is a binder whose body has an unguarded p occurrence
        return _unguarded_occurs(g.body, p)

    def go(g: MuFormula):
        match g:
            case Prop() | NegProp() | Modal():
                return g, False
            case MAnd(args):
                return _map_first(MAnd, args)
            case MOr(args):
                return _map_first(MOr, args)
            case Mu(q, b) | Nu(q, b):
                inner, done = go(b)
                if done:
                    return type(g)(q, inner), True
                if offender(g):
                    return substitute(g.body, {q: g}), True
                return g, False
        raise TypeError(g)

    def _map_first(cls, args):
        out = []
        done = False
        for a in args:
            if done:
                out.append(a)
            else:
                na, done = go(a)
                out.append(na)
        return cls(tuple(out)), done

    new, done = go(f)
    if not done:
        raise AssertionError("no offending binder found")
    return new


def _unguarded_occurs(f: MuFormula, p: str) -> bool:
    match f:
        case Prop(q):
            return q == p
        case NegProp() | Modal():
            return False
        case MAnd(args) | MOr(args):
            return any(_unguarded_occurs(a, p) for a in args)
        case Mu(_, b) | Nu(_, b):
            return _unguarded_occurs(b, p)
    raise TypeError(f)


def _drop_boolean_level(f: MuFormula, p: str, repl: MuFormula) -> MuFormula:
    """Replace boolean-level (not under any modality or binder) p by repl."""
    match f:
        case Prop(q):
            return repl if q == p else f
        case MAnd(args):
            return MAnd(tuple(_drop_boolean_level(a, p, repl) for a in args))
        case MOr(args):
            return MOr(tuple(_drop_boolean_level(a, p, repl) for a in args))
        case _:
            return f


def guard_transform(f: MuFormula) -> MuFormula:
    """Equivalent guarded formula; guarded inputs come back unchanged.

    Preserves membership in the alternation-free and continuous calculi
    (checked by the classifier in the tests, alongside semantic agreement
    on random systems).
    """

    def go(g: MuFormula) -> MuFormula:
        match g:
            case Prop() | NegProp():
                return g
            case MAnd(args):
                return MAnd(tuple(go(a) for a in args))
            case MOr(args):
                return MOr(tuple(go(a) for a in args))
            case Modal(alpha, args):
                return Modal(alpha, tuple(go(a) for a in args))
            case Mu(p, b) | Nu(p, b):
                b = go(b)
                while _has_unguarded_under_binder(b, p):
                    b = _unfold_offending_binder(b, p)
                if _unguarded_occurs(b, p):
                    repl = MBOT if isinstance(g, Mu) else MTOP
                    b = simplify(_drop_boolean_level(b, p, repl))
                if isinstance(g, Mu):
                    return Mu(p, b) if p in _free(b) else b
                return Nu(p, b) if p in _free(b) else b
        raise TypeError(g)

    from .ast import free_letters as _free

    out = go(f)
    if out != f:
        out = refresh(simplify(out))
    return out
