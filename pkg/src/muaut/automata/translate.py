"""Translations between automata and fixpoint formulas.

Automaton to formula: cluster-by-cluster elimination.  Entries of the top
cluster become modalities guarded by the characteristic conjunction of the
colour they fire on (the colour test is required for equivalence), states
of lower clusters are substituted recursively, and the states of the top
cluster are closed off one by one with binders matching their priority
parity, lowest priority innermost.

Formula to automaton: states are modal-argument subformulas tagged with
the dominant variable unfolded on the modal-free path that reaches them;
the tag's binder supplies the state priority, so the dominant-unfolding
winning condition transfers to the acceptance game.  Clusters whose
priorities share a parity are collapsed to 0/1, which makes the output of
an alternation-free input weak.
"""
from __future__ import annotations

from dataclasses import dataclass

from .. import mucalc as mc
from .. import onestep as o
from ..lts import PropSet
from .core import (ParityAutomaton, classify_automaton, occurrence_edges,
                   pred_name, pred_state)


def colour_literal(props: PropSet, colour: frozenset[str]) -> mc.MuFormula:
    """Characteristic formula of a colour: which letters hold and which not."""
    parts: list[mc.MuFormula] = [mc.Prop(p) for p in props.names if p in colour]
    parts += [mc.NegProp(p) for p in props.names if p not in colour]
    return mc.mand(parts)


def _var(a: int) -> str:
    return "st%d" % a


def _modal_of_entry(f: o.Formula, images: dict[int, mc.MuFormula]) -> mc.MuFormula:
    """Turn a transition entry into a modality applied to state images."""
    states = sorted(pred_state(p) for p in o.predicates(f))
    renaming = {pred_name(s): "a%d" % (i + 1) for i, s in enumerate(states)}
    alpha = o.rename_pred(f, renaming)
    args = tuple(images[s] for s in states)
    return mc.Modal(alpha, args) if states else mc.Modal(alpha, ())


def to_formula(aut: ParityAutomaton) -> mc.MuFormula:
    """Equivalent fixpoint formula; weak automata land in the
    alternation-free calculus and continuous-weak ones in the continuous
    calculus."""
    colours = aut.props.colours()

    def translate(states: frozenset[int]) -> dict[int, mc.MuFormula]:
        if not states:
            return {}
        sub = _restricted_clusters(aut, states)
        # pick a source cluster: nothing outside it (within `states`) reaches it
        top = None
        for cluster in sorted(sub, key=min):
            others = states - cluster
            if not any(t in _reach(aut, a, states) for a in others for t in cluster):
                top = cluster
                break
        assert top is not None
        rest = translate(states - top)

        def entry_formula(b: int, images: dict[int, mc.MuFormula]) -> mc.MuFormula:
            return mc.mor(
                mc.mand([colour_literal(aut.props, c), _modal_of_entry(aut.entry(b, c), images)])
                for c in colours
            )

        out = dict(rest)
        if len(top) == 1 and next(iter(top)) not in occurrence_edges(aut)[next(iter(top))]:
            b = next(iter(top))
            out[b] = entry_formula(b, rest)
            return out
        order = sorted(top, key=lambda a: (aut.omega[a], a))
        images = dict(rest)
        for b in order:
            images[b] = mc.Prop(_var(b))
        tr = {b: entry_formula(b, images) for b in order}
        for k, b in enumerate(order):
            binder = mc.Mu if aut.omega[b] % 2 == 1 else mc.Nu
            closed = binder(_var(b), tr[b])
            tr[b] = closed
            for b2 in order:
                if b2 != b:
                    tr[b2] = mc.substitute(tr[b2], {_var(b): closed})
        for b in order:
            out[b] = tr[b]
        return out

    formula = translate(frozenset(range(aut.n)))[aut.init]
    formula = mc.refresh(formula, reserved=aut.props.names)
    mc.check_wf(formula)
    return formula


def _restricted_clusters(aut: ParityAutomaton, states: frozenset[int]):
    from ..paritygame import _sccs

    edges = occurrence_edges(aut)
    graph = {a: sorted(t for t in edges[a] if t in states) for a in states}
    return [frozenset(c) for c in _sccs(sorted(states), graph)]


def _reach(aut: ParityAutomaton, a: int, states: frozenset[int]) -> set[int]:
    edges = occurrence_edges(aut)
    seen: set[int] = set()
    stack = [a]
    while stack:
        u = stack.pop()
        for v in edges[u]:
            if v in states and v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


# ---------------------------------------------------------------------------
# formulas to automata


@dataclass(frozen=True)
class _State:
    chi: mc.MuFormula
    tag: str | None  # dominant variable on the entering path


def from_formula(f: mc.MuFormula, props: PropSet | None = None) -> ParityAutomaton:
    """Equivalent automaton over the formula's modality dialect.

    The input is guarded first; the alternation-free fragment yields weak
    automata and the continuous fragment continuous-weak ones.
    """
    mc.check_wf(f)
    if props is None:
        props = PropSet(tuple(sorted(mc.free_letters(f))))
    g = mc.guard_transform(f)
    dialect = mc.modal_dialect(g)
    prio = mc.binder_priorities(g)
    binder_body: dict[str, mc.MuFormula] = {}
    for sub in mc.subformulas(g):
        if isinstance(sub, (mc.Mu, mc.Nu)):
            binder_body[sub.var] = sub.body
    bound = set(binder_body)

    states: dict[_State, int] = {}
    order: list[_State] = []

    def intern(st: _State) -> int:
        if st not in states:
            states[st] = len(order)
            order.append(st)
            todo.append(st)
        return states[st]

    def dominant(path_vars: frozenset[str]) -> str | None:
        if not path_vars:
            return None
        return max(path_vars, key=lambda v: prio[v])

    def expand(chi: mc.MuFormula, colour: frozenset[str], path: frozenset[str]) -> o.Formula:
        match chi:
            case mc.Prop(p) if p not in bound:
                return o.TOP if p in colour else o.BOT
            case mc.NegProp(p):
                return o.BOT if p in colour else o.TOP
            case mc.Prop(p):
                if p in path:  # impossible after guarding; a cycle here would not terminate
                    raise AssertionError("unguarded regeneration of %r" % p)
                return expand(binder_body[p], colour, path | {p})
            case mc.MAnd(args):
                return o.conj(expand(a, colour, path) for a in args)
            case mc.MOr(args):
                return o.disj(expand(a, colour, path) for a in args)
            case mc.Modal(alpha, args):
                tag = dominant(path)
                occurring = o.predicates(alpha)
                renaming = {}
                for i, a in enumerate(args):
                    name = "a%d" % (i + 1)
                    if name in occurring:
                        renaming[name] = pred_name(intern(_State(a, tag)))
                return o.rename_pred(alpha, renaming)
            case mc.Mu(p, b) | mc.Nu(p, b):
                return expand(b, colour, path)
        raise TypeError(chi)

    todo: list[_State] = []
    root = _State(g, None)
    intern(root)
    delta = {}
    colours = props.colours()
    while todo:
        st = todo.pop()
        chi = st.chi
        # a state's own unfolding starts below its entering tag
        for c in colours:
            delta[(states[st], c)] = expand(chi, c, frozenset())

    n = len(order)
    omega = []
    for st in order:
        omega.append(prio[st.tag] if st.tag is not None else 0)
    neutral = frozenset(i for i, st in enumerate(order) if st.tag is None)
    aut = ParityAutomaton(dialect, props, n, states[root], tuple(omega), delta)
    return _collapse_pure_clusters(aut, neutral)


def _collapse_pure_clusters(aut: ParityAutomaton, neutral: frozenset[int]) -> ParityAutomaton:
    """Set the priorities of each parity-pure cluster to plain 0 or 1.

    Untagged states never form a cycle among themselves (a modality-free
    expansion that unfolds no variable descends strictly through the
    formula), so every cycle of a cluster passes a tagged state: once the
    tagged parities of a cluster agree, giving the whole cluster that
    parity changes no winner.  Mixed clusters keep the depth-derived
    priorities, which encode variable dominance directly.
    """
    rep = classify_automaton(aut)
    omega = list(aut.omega)
    for cluster in rep.clusters:
        parities = {aut.omega[a] % 2 for a in cluster if a not in neutral}
        if len(parities) == 1:
            par = parities.pop()
            for a in cluster:
                omega[a] = par
        elif not parities:
            for a in cluster:
                omega[a] = 0
    return ParityAutomaton(aut.dialect, aut.props, aut.n, aut.init,
                           tuple(omega), aut.delta, aut.macro_states)
