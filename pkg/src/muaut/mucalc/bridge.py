"""Rewriting plain-FO1 modalities into diamonds and boxes.

Each modality is normalized to a witness/cover form and rewritten as
"one diamond per witness type, one box over the cover disjunction".
Inside the scope of a least binder the continuous form is used, which
keeps box arguments free of the active letters; dually inside greatest
binders, so membership in the restricted calculi survives the rewrite.
"""
from __future__ import annotations

from .. import onestep as o
from .ast import (MAnd, Modal, MOr, Mu, MuFormula, NegProp, Nu, Prop, box,
                  dia, free_letters, is_box, is_dia, mand, mor)


class NotFO1Error(ValueError):
    pass


def _rewrite_positive(bf: o.BasicForm, args) -> MuFormula:
    disjuncts = []
    for d in bf.disjuncts:
        parts: list[MuFormula] = []
        for tp in d.witnesses:
            parts.append(dia(mand(args[int(a[1:]) - 1] for a in sorted(tp))))
        parts.append(box(mor(
            mand(args[int(a[1:]) - 1] for a in sorted(s))
            for s in sorted(d.cover, key=sorted)
        )))
        disjuncts.append(mand(parts))
    return mor(disjuncts)


def _rewrite_dual(bf: o.BasicForm, args) -> MuFormula:
    # complement of the positive rewrite of the dual modality
    conjuncts = []
    for d in bf.disjuncts:
        parts: list[MuFormula] = []
        for tp in d.witnesses:
            parts.append(box(mor(args[int(a[1:]) - 1] for a in sorted(tp))))
        parts.append(dia(mand(
            mor(args[int(a[1:]) - 1] for a in sorted(s))
            for s in sorted(d.cover, key=sorted)
        )))
        conjuncts.append(mor(parts))
    return mand(conjuncts)


def fo1_modal_bridge(f: MuFormula) -> MuFormula:
    """Equivalent formula whose every modality is a diamond or a box.

    Rewriting duplicates argument subformulas across disjuncts, so the
    result is refreshed (bound letters renamed) whenever anything changed.
    """

    def go(g: MuFormula, cont_active: frozenset[str], cocont_active: frozenset[str]) -> MuFormula:
        match g:
            case Prop() | NegProp():
                return g
            case MAnd(args):
                return mand(go(a, cont_active, cocont_active) for a in args)
            case MOr(args):
                return mor(go(a, cont_active, cocont_active) for a in args)
            case Mu(p, b):
                return Mu(p, go(b, cont_active | {p}, cocont_active))
            case Nu(p, b):
                return Nu(p, go(b, cont_active, cocont_active | {p}))
            case Modal(alpha, margs):
                if o.min_dialect(alpha) != o.FO1:
                    raise NotFO1Error("modality is not plain FO1: %s" % o.pretty(alpha))
                new_args = tuple(go(a, cont_active, cocont_active) for a in margs)
                if is_dia(g) or is_box(g):
                    return Modal(alpha, new_args)
                preds = g.pred_names()
                sent = o.sentence(alpha, o.FO1, preds)
                b_cont = frozenset(
                    preds[i] for i, a in enumerate(margs) if free_letters(a) & cont_active
                )
                b_cocont = frozenset(
                    preds[i] for i, a in enumerate(margs) if free_letters(a) & cocont_active
                )
                if b_cont and o.in_continuous_fragment(alpha, b_cont):
                    bf = o.to_continuous_basic_form(sent, b_cont)
                    return _rewrite_positive(bf, new_args)
                if b_cocont and o.in_cocontinuous_fragment(alpha, b_cocont):
                    bf = o.to_continuous_basic_form(
                        o.sentence(o.dual(alpha), o.FO1, preds), b_cocont)
                    return _rewrite_dual(bf, new_args)
                return _rewrite_positive(o.to_basic_form(sent), new_args)
        raise TypeError(g)

    out = go(f, frozenset(), frozenset())
    if out != f:
        from .ast import refresh
        out = refresh(out)
    return out
