"""Brute-force ground truth by exhaustive path enumeration.

Desk-scale only: every complete path is walked, so the path budget guards
against exponential blowups. Deliberately independent of the search
stack; only the weight algebra and the automaton model are shared, which
makes these functions usable as an oracle for differential tests of the
determinizing search.
"""

from __future__ import annotations

from .automaton import Automaton, topological_order
from .errors import BudgetExceededError, EmptyLanguageError

DEFAULT_PATH_BUDGET = 1_000_000


def enumerate_strings(a: Automaton, *,
                      path_budget: int = DEFAULT_PATH_BUDGET) -> dict:
    """Map every accepted label sequence to its merged weight: the semiring
    sum, over all complete paths spelling the sequence, of the path weight
    times the final weight. The empty sequence appears when the initial
    state is final. Aggregation follows depth-first arc order, so results
    are reproducible."""
    topological_order(a)  # refuse cyclic input instead of walking forever
    sr = a.semiring
    zero, plus, times = sr.zero, sr._plus, sr._times
    sigma = {}
    paths = 0
    # explicit-stack depth-first walk; arc-order traversal keeps the
    # aggregation order, and therefore the floats, reproducible
    stack = [(a.initial, (), sr.one)]
    while stack:
        state, labels, weight = stack.pop()
        final = a.final_weight(state)
        if final != zero:
            paths += 1
            if paths > path_budget:
                raise BudgetExceededError(f"path budget {path_budget} exceeded")
            mass = times(weight, final)
            if labels in sigma:
                sigma[labels] = plus(sigma[labels], mass)
            else:
                sigma[labels] = mass
        for label, arc_weight, target in reversed(a.arcs(state)):
            stack.append((target, labels + (label,), times(weight, arc_weight)))
    return sigma


def oracle_shortest_string(a: Automaton, *,
                           path_budget: int = DEFAULT_PATH_BUDGET) -> tuple:
    """Best (label sequence, merged weight) under the semiring order; ties
    break by shorter sequence, then lexicographically smaller sequence,
    matching the search's tie-break rule."""
    sigma = enumerate_strings(a, path_budget=path_budget)
    if not sigma:
        raise EmptyLanguageError("the automaton accepts no string")
    pk = a.semiring.priority_key
    labels = min(sigma, key=lambda z: (pk(sigma[z]), len(z), z))
    return labels, sigma[labels]


def oracle_shortest_path(a: Automaton, *,
                         path_budget: int = DEFAULT_PATH_BUDGET) -> tuple:
    """Best single complete path: its label sequence and its unmerged path
    weight (final weight included). Over a non-idempotent semiring this can
    differ from :func:`oracle_shortest_string`, since merging several paths
    that share a string beats each one alone."""
    topological_order(a)  # refuse cyclic input instead of walking forever
    sr = a.semiring
    zero, times, pk = sr.zero, sr._times, sr.priority_key
    best = None
    paths = 0
    stack = [(a.initial, (), sr.one)]
    while stack:
        state, labels, weight = stack.pop()
        final = a.final_weight(state)
        if final != zero:
            paths += 1
            if paths > path_budget:
                raise BudgetExceededError(f"path budget {path_budget} exceeded")
            mass = times(weight, final)
            key = (pk(mass), len(labels), labels)
            if best is None or key < best[0]:
                best = (key, labels, mass)
        for label, arc_weight, target in reversed(a.arcs(state)):
            stack.append((target, labels + (label,), times(weight, arc_weight)))
    if best is None:
        raise EmptyLanguageError("the automaton accepts no string")
    return best[1], best[2]
