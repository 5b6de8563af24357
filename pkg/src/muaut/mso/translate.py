"""Translating restricted fixpoint calculi into second-order logic.

The least-binder clause quantifies a restriction set q (finite for the
weak logic, noetherian for the noetherian one) and says v lies in every
prefixpoint of the q-restricted functional; greatest binders go through
the dual least binder.  Modalities translate by relativizing their
one-step sentence to the successors of the current individual variable.
"""
from __future__ import annotations

from .. import mucalc as mc
from .. import onestep as o
from .ast import (EqVar, ExistsSet, ExistsVar, Mso2, Not2, Or2, PredApp,
                  RelApp, and2, conj2, forall_set, forall_var, implies2,
                  rename_ivar, substitute_atom, FINITE, NOETHERIAN)


class FragmentError(ValueError):
    pass


def onestep_dagger(alpha: o.Formula, v: str, fresh) -> Mso2:
    """Relativize a one-step sentence to the successors of v.

    Predicate atoms stay atoms (to be substituted later); the infinity
    quantifier becomes "outside every finite set there is a witness".
    """
    alpha = o.expand_sugar(alpha)

    def go(g: o.Formula) -> Mso2:
        match g:
            case o.Pred(a, x):
                return PredApp(a, x)
            case o.NegPred(a, x):
                return Not2(PredApp(a, x))
            case o.Eq(x, y):
                return EqVar(x, y)
            case o.Neq(x, y):
                return Not2(EqVar(x, y))
            case o.And(args):
                if not args:
                    return Not2(_false(v))
                return conj2(go(a) for a in args)
            case o.Or(args):
                if not args:
                    return _false(v)
                out = go(args[0])
                for a in args[1:]:
                    out = Or2(out, go(a))
                return out
            case o.Exists(x, b):
                return ExistsVar(x, and2(RelApp(v, x), go(b)))
            case o.Forall(x, b):
                return forall_var(x, implies2(RelApp(v, x), go(b)))
            case o.ExistsInf(x, b):
                p = fresh("fin")
                return forall_set(
                    p,
                    ExistsVar(x, conj2([RelApp(v, x), Not2(PredApp(p, x)), go(b)])),
                    FINITE,
                )
            case o.ForallInf(x, b):
                p = fresh("fin")
                return Not2(forall_set(
                    p,
                    ExistsVar(x, conj2([RelApp(v, x), Not2(PredApp(p, x)), Not2(go(b))])),
                    FINITE,
                ))
        raise TypeError(g)

    return go(alpha)


def _false(v: str) -> Mso2:
    return Not2(EqVar(v, v))


def _freshen_vars(alpha: o.Formula, fresh) -> o.Formula:
    def go(g: o.Formula, ren: dict[str, str]) -> o.Formula:
        match g:
            case o.Pred(a, x):
                return o.Pred(a, ren[x])
            case o.NegPred(a, x):
                return o.NegPred(a, ren[x])
            case o.Eq(x, y):
                return o.Eq(ren[x], ren[y])
            case o.Neq(x, y):
                return o.Neq(ren[x], ren[y])
            case o.And(args):
                return o.And(tuple(go(a, ren) for a in args))
            case o.Or(args):
                return o.Or(tuple(go(a, ren) for a in args))
            case o.Exists(x, b):
                u = fresh("u")
                return o.Exists(u, go(b, {**ren, x: u}))
            case o.Forall(x, b):
                u = fresh("u")
                return o.Forall(u, go(b, {**ren, x: u}))
            case o.ExistsInf(x, b):
                u = fresh("u")
                return o.ExistsInf(u, go(b, {**ren, x: u}))
            case o.ForallInf(x, b):
                u = fresh("u")
                return o.ForallInf(u, go(b, {**ren, x: u}))
        raise TypeError(g)

    return go(o.expand_sugar(alpha), {})


def mu_to_mso(f: mc.MuFormula, logic: str) -> Mso2:
    """The translation into the two-sorted language, with v free.

    The weak target needs the continuous calculus, the noetherian target
    the alternation-free one (over the matching one-step dialect); the
    classifier enforces both.
    """
    logic = logic.lower()
    if logic not in ("wmso", "nmso"):
        raise FragmentError("translation targets the wmso and nmso logics")
    mode = FINITE if logic == "wmso" else NOETHERIAN
    rep = mc.classify(f)
    dialect = mc.modal_dialect(f)
    if logic == "wmso":
        if not rep.continuous_calculus:
            raise FragmentError("weak target needs the continuous calculus")
        if dialect not in (o.FO1, o.FOE1, o.FOE1INF):
            raise FragmentError("unknown dialect")
    else:
        if not rep.alternation_free:
            raise FragmentError("noetherian target needs the alternation-free calculus")
        if dialect == o.FOE1INF:
            raise FragmentError("noetherian target cannot host infinity modalities")

    counter = [0]

    def fresh(base: str) -> str:
        counter[0] += 1
        return "%s%d" % (base, counter[0])

    def tr(g: mc.MuFormula, v: str) -> Mso2:
        match g:
            case mc.Prop(p):
                return PredApp(p, v)
            case mc.NegProp(p):
                return Not2(PredApp(p, v))
            case mc.MAnd(args):
                if not args:
                    return Not2(_false(v))
                return conj2(tr(a, v) for a in args)
            case mc.MOr(args):
                if not args:
                    return _false(v)
                out = tr(args[0], v)
                for a in args[1:]:
                    out = Or2(out, tr(a, v))
                return out
            case mc.Modal(alpha, args):
                # globally fresh quantified variables rule out shadowing
                # when argument translations are substituted for atoms
                body = onestep_dagger(_freshen_vars(alpha, fresh), v, fresh)
                for i, arg in enumerate(args):
                    body = substitute_atom(body, "a%d" % (i + 1),
                                           lambda x, arg=arg: tr(arg, x))
                return body
            case mc.Mu(p, b):
                return _mu_clause(p, b, v)
            case mc.Nu(p, b):
                inner = mc.Mu(p, mc.negate(b, frozenset({p})))
                return Not2(_mu_clause(inner.var, inner.body, v))
        raise TypeError(g)

    def _mu_clause(p: str, body: mc.MuFormula, v: str) -> Mso2:
        q = fresh("set")
        w = fresh("w")
        subset = forall_var(w, implies2(PredApp(p, w), PredApp(q, w)))
        prefix = forall_var(
            w, implies2(and2(PredApp(q, w), tr(body, w)), PredApp(p, w)))
        # p quantified in the logic's own mode, restricted to q
        inner = forall_set(p, implies2(and2(subset, prefix), PredApp(p, v)), mode)
        return ExistsSet(q, inner, mode)

    return tr(f, "v")


def mu_holds_via_mso(f: mc.MuFormula, lts, logic: str) -> bool:
    from .eval import holds_at_init2

    return holds_at_init2(mu_to_mso(f, logic), lts)
