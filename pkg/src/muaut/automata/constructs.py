"""Two-sorted simulation constructs, projection, and the diamond automaton.

The finitary construct pairs an automaton with a powerset copy whose
macro-states carry priority 1: a run may process a finite portion of the
input non-deterministically on macro-states before falling back to the
original alternating behaviour.  Macro-entries disjoin a lifted normal
form of the conjoined original entries with the plain conjunction.  The
noetherian construct is identical except that its lifting carries no
cardinality constraints, bounding only the well-founded (vertical) part.
"""
from __future__ import annotations

from .. import onestep as o
from ..lts import PropSet
from .core import (ParityAutomaton, classify_automaton, pred_name,
                   pred_state)

MAX_CONSTRUCT_STATES = 4


class ConstructError(ValueError):
    pass


def _macro_index(n: int, subset: frozenset[int]) -> int:
    return n + sum(1 << a for a in subset)


def _all_subsets(n: int):
    for mask in range(1 << n):
        yield frozenset(a for a in range(n) if mask >> a & 1)


def _nabla(witness_types: list[frozenset[str]], cover_types: list[frozenset[str]],
           inf_types: list[frozenset[str]] | None) -> o.Formula:
    """Witness/cover sentence over arbitrary predicate names, with the
    distinctness guards interleaved for early backtracking."""
    xs = ["x%d" % (i + 1) for i in range(len(witness_types))]
    body: o.Formula = o.Forall(
        "z",
        o.disj([o.Eq("z", x) for x in xs] + [o.type_atom(s, "z") for s in cover_types]),
    )
    for i in reversed(range(len(xs))):
        guards: list[o.Formula] = [o.Neq(xs[i], xs[j]) for j in range(i)]
        body = o.Exists(xs[i], o.conj(guards + [o.type_atom(witness_types[i], xs[i]), body]))
    if inf_types is not None:
        parts: list[o.Formula] = [body]
        parts += [o.ExistsInf("y", o.type_atom(s, "y")) for s in inf_types]
        parts.append(o.ForallInf("y", o.disj(o.type_atom(s, "y") for s in inf_types)))
        body = o.conj(parts)
    return body


def _lift_type(n: int, tp: frozenset[str]) -> frozenset[str]:
    """A state-sort type becomes the singleton macro-predicate type; the
    empty type stays empty."""
    if not tp:
        return frozenset()
    subset = frozenset(pred_state(a) for a in tp)
    return frozenset({pred_name(_macro_index(n, subset))})


def _lifted_disjunct(n: int, d: o.BasicFormDisjunct, finitary: bool) -> o.Formula:
    wits = [_lift_type(n, tp) for tp in d.witnesses]
    cover = [_lift_type(n, s) for s in sorted(d.cover, key=sorted)]
    if finitary:
        inf = sorted(d.inf_cover or frozenset(), key=sorted)
        cover += [_lift_type(n, s) for s in inf]
        cover += list(inf)  # the infinite tail stays on the original sort
        return _nabla(wits, cover, inf)
    return _nabla(wits, cover, None)


def _construct(aut: ParityAutomaton, finitary: bool) -> ParityAutomaton:
    if aut.n > MAX_CONSTRUCT_STATES:
        raise ConstructError("construct limited to %d states" % MAX_CONSTRUCT_STATES)
    rep = classify_automaton(aut)
    if finitary:
        if aut.dialect != o.FOE1INF or not rep.continuous_weak:
            raise ConstructError("finitary construct needs a continuous-weak FOE1INF automaton")
    else:
        if aut.dialect not in (o.FOE1, o.FO1) or not rep.weak:
            raise ConstructError("noetherian construct needs a weak FOE1 automaton")
    n = aut.n
    total = n + (1 << n)
    delta = {}
    for c in aut.props.colours():
        for a in range(n):
            delta[(a, c)] = aut.entry(a, c)
        for subset in _all_subsets(n):
            q = _macro_index(n, subset)
            conj_entry = o.conj(aut.entry(a, c) for a in sorted(subset))
            psi = o.sentence(conj_entry, aut.dialect if finitary else o.FOE1,
                             tuple(pred_name(a) for a in range(n)))
            bf = o.to_basic_form(psi)
            lifted = [_lifted_disjunct(n, d, finitary) for d in bf.disjuncts]
            delta[(q, c)] = o.disj(lifted + [conj_entry])
    omega = tuple(aut.omega) + tuple(1 for _ in range(1 << n))
    init = _macro_index(n, frozenset({aut.init}))
    dialect = o.FOE1INF if finitary else o.FOE1
    return ParityAutomaton(dialect, aut.props, total, init, omega, delta,
                           macro_states=frozenset(range(n, total)))


def finitary_construct(aut: ParityAutomaton) -> ParityAutomaton:
    """Two-sorted equivalent of a continuous-weak FOE1INF automaton whose
    macro-sort processes only a finite part of any accepted tree."""
    return _construct(aut, finitary=True)


def noetherian_construct(aut: ParityAutomaton) -> ParityAutomaton:
    """Two-sorted equivalent of a weak FOE1 automaton whose macro-sort
    processes only a well-founded part of any accepted tree."""
    return _construct(aut, finitary=False)


def project(aut: ParityAutomaton, p: str) -> ParityAutomaton:
    """Existential projection over a letter.

    State-sort entries are read without the letter; macro-sort entries
    disjoin both readings, which lets the non-deterministic mode guess the
    variant labelling.
    """
    if p not in aut.props.names:
        raise ValueError("letter %r not in the alphabet" % p)
    props = aut.props.without_letter(p)
    delta = {}
    for c in props.colours():
        for a in range(aut.n):
            if a in aut.macro_states:
                delta[(a, c)] = o.disj([aut.entry(a, c), aut.entry(a, c | {p})])
            else:
                delta[(a, c)] = aut.entry(a, c)
    return ParityAutomaton(aut.dialect, props, aut.n, aut.init, aut.omega,
                           delta, aut.macro_states)


def diamond_automaton(aut: ParityAutomaton) -> ParityAutomaton:
    """Equality- and cardinality-free companion: every entry normalized and
    diamond-translated.  Equivalent to the original exactly on
    bisimulation-invariant automata."""
    if aut.dialect == o.FO1:
        raise ValueError("diamond automaton starts from FOE1 or FOE1INF")
    preds = tuple(pred_name(a) for a in range(aut.n))
    delta = {}
    for (a, c), f in aut.delta.items():
        bf = o.to_basic_form(o.sentence(f, aut.dialect, preds))
        delta[(a, c)] = o.diamond_translate(bf).ast
    return ParityAutomaton(o.FO1, aut.props, aut.n, aut.init, aut.omega, delta)
