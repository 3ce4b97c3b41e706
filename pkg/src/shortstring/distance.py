"""Forward and backward shortest-distance tables over acyclic acceptors.

Both tables are computed in a single relaxation pass along the topological
order. The ``view`` argument selects the aggregation: ``"base"`` uses the
semiring's own plus and merges all paths, while ``"companion"`` keeps only
the best path weight under the semiring order (the tropical / max-times
view of the same automaton). Summation order is fixed by the topological
order and the stored arc order, so results are bit-reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .automaton import Automaton, topological_order

VIEWS = ("base", "companion")


@dataclass(frozen=True)
class DistanceTable:
    direction: str  # "forward" | "backward"
    view: str       # "base" | "companion"
    values: tuple

    def __getitem__(self, state: int) -> float:
        return self.values[state]

    def __len__(self):
        return len(self.values)

    def __iter__(self):
        return iter(self.values)


def _adder(a: Automaton, view: str):
    # the unchecked operations; a valid automaton's weights are members and
    # both algebras are closed
    if view == "base":
        return a.semiring._plus
    if view == "companion":
        return a.semiring._companion_plus
    raise ValueError(f"unknown view {view!r}; expected one of {VIEWS}")


def backward_distance(a: Automaton, view: str = "base") -> DistanceTable:
    """Per-state aggregated weight of all suffix paths into a final state,
    final weight included. States that reach no final state hold zero."""
    add = _adder(a, view)
    times = a.semiring._times
    order = topological_order(a)
    beta = [a.semiring.zero] * a.num_states
    for q in reversed(order):
        acc = a.final_weight(q)
        for _, weight, target in a.arcs(q):
            acc = add(acc, times(weight, beta[target]))
        beta[q] = acc
    return DistanceTable("backward", view, tuple(beta))


def forward_distance(a: Automaton, view: str = "base") -> DistanceTable:
    """Per-state aggregated weight of all paths from the initial state.
    The initial state holds one (the empty path); unreachable states hold
    zero."""
    add = _adder(a, view)
    times = a.semiring._times
    zero = a.semiring.zero
    order = topological_order(a)
    alpha = [zero] * a.num_states
    alpha[a.initial] = a.semiring.one
    for q in order:
        mass = alpha[q]
        if mass == zero:
            continue  # nothing to propagate; keeps sums exact
        for _, weight, target in a.arcs(q):
            alpha[target] = add(alpha[target], times(mass, weight))
    return DistanceTable("forward", view, tuple(alpha))


def total_distance(a: Automaton) -> float:
    """Aggregated weight of every complete path; zero for an empty language."""
    return backward_distance(a, "base")[a.initial]
