"""Grammar-based fragment classification of fixpoint formulas.

The noetherian fragments restrict which binder may see a letter again
(vertical recursion); the continuous fragments additionally restrict the
modalities through which a letter may recur to continuous positions
(horizontal finiteness).  Alternation freedom restricts least binders to
noetherian bodies and greatest binders to co-noetherian ones; the
continuous calculus does the same with the continuous grammars.
"""
from __future__ import annotations

from dataclasses import dataclass

from .. import onestep as o
from .ast import (MAnd, Modal, Mu, MuFormula, MOr, NegProp, Nu, Prop, is_box,
                  is_dia, free_letters, subformulas)


def in_noetherian(f: MuFormula, q: frozenset[str]) -> bool:
    if not free_letters(f) & q:
        return True
    match f:
        case Prop(p):
            return p in q
        case NegProp():
            return False
        case MAnd(args) | MOr(args) | Modal(_, args):
            return all(in_noetherian(a, q) for a in args)
        case Mu(p, b):
            return in_noetherian(b, q | {p})
        case Nu():
            return False
    raise TypeError(f)


def in_conoetherian(f: MuFormula, q: frozenset[str]) -> bool:
    if not free_letters(f) & q:
        return True
    match f:
        case Prop(p):
            return p in q
        case NegProp():
            return False
        case MAnd(args) | MOr(args) | Modal(_, args):
            return all(in_conoetherian(a, q) for a in args)
        case Nu(p, b):
            return in_conoetherian(b, q | {p})
        case Mu():
            return False
    raise TypeError(f)


def in_continuous(f: MuFormula, q: frozenset[str]) -> bool:
    if not free_letters(f) & q:
        return True
    match f:
        case Prop(p):
            return p in q
        case NegProp():
            return False
        case MAnd(args) | MOr(args):
            return all(in_continuous(a, q) for a in args)
        case Modal(alpha, args):
            touching = frozenset(
                "a%d" % (i + 1) for i, a in enumerate(args) if free_letters(a) & q
            )
            if not o.in_continuous_fragment(alpha, touching):
                return False
            return all(in_continuous(a, q) for a in args if free_letters(a) & q)
        case Mu(p, b):
            return in_continuous(b, q | {p})
        case Nu():
            return False
    raise TypeError(f)


def in_cocontinuous(f: MuFormula, q: frozenset[str]) -> bool:
    if not free_letters(f) & q:
        return True
    match f:
        case Prop(p):
            return p in q
        case NegProp():
            return False
        case MAnd(args) | MOr(args):
            return all(in_cocontinuous(a, q) for a in args)
        case Modal(alpha, args):
            touching = frozenset(
                "a%d" % (i + 1) for i, a in enumerate(args) if free_letters(a) & q
            )
            if not o.in_cocontinuous_fragment(alpha, touching):
                return False
            return all(in_cocontinuous(a, q) for a in args if free_letters(a) & q)
        case Nu(p, b):
            return in_cocontinuous(b, q | {p})
        case Mu():
            return False
    raise TypeError(f)


def in_alternation_free(f: MuFormula) -> bool:
    match f:
        case Prop() | NegProp():
            return True
        case MAnd(args) | MOr(args) | Modal(_, args):
            return all(in_alternation_free(a) for a in args)
        case Mu(p, b):
            return in_alternation_free(b) and in_noetherian(b, frozenset({p}))
        case Nu(p, b):
            return in_alternation_free(b) and in_conoetherian(b, frozenset({p}))
    raise TypeError(f)


def in_continuous_calculus(f: MuFormula) -> bool:
    match f:
        case Prop() | NegProp():
            return True
        case MAnd(args) | MOr(args) | Modal(_, args):
            return all(in_continuous_calculus(a) for a in args)
        case Mu(p, b):
            return in_continuous_calculus(b) and in_continuous(b, frozenset({p}))
        case Nu(p, b):
            return in_continuous_calculus(b) and in_cocontinuous(b, frozenset({p}))
    raise TypeError(f)


def is_guarded(f: MuFormula) -> bool:
    """Every bound-letter occurrence has a modality between it and its binder."""

    def go(g: MuFormula, unguarded: frozenset[str]) -> bool:
        match g:
            case Prop(p):
                return p not in unguarded
            case NegProp():
                return True
            case MAnd(args) | MOr(args):
                return all(go(a, unguarded) for a in args)
            case Modal(_, args):
                return all(go(a, frozenset()) for a in args)
            case Mu(p, b) | Nu(p, b):
                return go(b, unguarded | {p})
        raise TypeError(g)

    return go(f, frozenset())


def is_plain_modal(f: MuFormula) -> bool:
    """All modalities are the diamond/box instances."""
    return all(is_dia(g) or is_box(g) for g in subformulas(f) if isinstance(g, Modal))


@dataclass(frozen=True)
class FragmentReport:
    plain_modal: bool
    alternation_free: bool
    continuous_calculus: bool
    guarded: bool
    binders: tuple[tuple[str, str, bool, bool], ...]
    # (letter, binder kind, noetherian-grammar body, continuous-grammar body)


def classify(f: MuFormula) -> FragmentReport:
    binders = []
    for g in subformulas(f):
        if isinstance(g, Mu):
            binders.append((g.var, "mu",
                            in_noetherian(g.body, frozenset({g.var})),
                            in_continuous(g.body, frozenset({g.var}))))
        elif isinstance(g, Nu):
            binders.append((g.var, "nu",
                            in_conoetherian(g.body, frozenset({g.var})),
                            in_cocontinuous(g.body, frozenset({g.var}))))
    return FragmentReport(
        plain_modal=is_plain_modal(f),
        alternation_free=in_alternation_free(f),
        continuous_calculus=in_continuous_calculus(f),
        guarded=is_guarded(f),
        binders=tuple(binders),
    )
