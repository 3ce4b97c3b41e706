"""Lazy weighted determinization by subset construction with residuals.

A determinized state is a canonical subset: a sorted tuple of
``(source state, residual weight)`` pairs. Expanding a subset by one label
gathers every matching arc of every member, sums contributions that land
on the same target, factors the total mass of the label onto the single
output arc (the common-divisor convention), and keeps the per-target
leftovers as the residuals of the successor subset. Residuals are thereby
normalized: their semiring sum is one at creation, which bounds float
drift and lets equivalent futures collide in the cache.

Subsets are interned: equal state sets whose residuals land in the same
``residual_tolerance`` cell share one handle, and expansion is memoized
per handle, so repeated exploration never recomputes work. Cell sharing
implies the residuals agree within the tolerance; two residuals within
tolerance of each other but straddling a cell boundary stay distinct,
which costs a duplicate state and never correctness. Handles are dense
integers in creation order, which makes runs reproducible.
"""

from __future__ import annotations

import math

from .automaton import Automaton, write_text
from .distance import DistanceTable
from .errors import BudgetExceededError


class DfaCache:
    """On-demand determinization of one acyclic automaton.

    A cache is owned by a single search: expansion mutates the memo, so
    concurrent expansion of one cache is not supported. Distinct caches
    over the same automaton are independent.
    """

    def __init__(self, automaton: Automaton, residual_tolerance: float = 1e-6,
                 state_budget: int | None = None):
        if state_budget is not None and state_budget < 1:
            raise ValueError("state budget must be positive")
        self.automaton = automaton
        self.semiring = automaton.semiring
        self.residual_tolerance = residual_tolerance
        self.state_budget = state_budget
        self._subsets = []      # handle -> tuple[(state, residual), ...]
        self._index = {}        # canonical key -> handle
        self._arcs = {}         # handle -> tuple[(label, weight, target handle), ...]
        self._finals = {}       # handle -> final weight
        self._heuristics = {}   # handle -> heuristic weight
        self._intern(((automaton.initial, self.semiring.one),))

    def start(self) -> int:
        """Handle of the root subset {(initial, one)}; always 0."""
        return 0

    @property
    def num_states(self) -> int:
        return len(self._subsets)

    def subset(self, handle: int) -> tuple:
        return self._subsets[handle]

    def is_expanded(self, handle: int) -> bool:
        return handle in self._arcs

    def expand(self, handle: int) -> tuple:
        """Outgoing determinized arcs of a subset, one per label, sorted by
        label: ``(label, weight, target handle)`` tuples. Memoized."""
        memo = self._arcs.get(handle)
        if memo is not None:
            return memo
        sr = self.semiring
        times, plus, divide = sr._times, sr._plus, sr._divide
        arcs_of = self.automaton.arcs
        per_label: dict = {}
        for state, residual in self._subsets[handle]:
            for label, weight, target in arcs_of(state):
                mass = times(residual, weight)
                bucket = per_label.get(label)
                if bucket is None:
                    bucket = per_label[label] = {}
                if target in bucket:
                    bucket[target] = plus(bucket[target], mass)
                else:
                    bucket[target] = mass
        out = []
        for label in sorted(per_label):
            bucket = per_label[label]
            targets = sorted(bucket)
            divisor = bucket[targets[0]]
            for target in targets[1:]:
                divisor = plus(divisor, bucket[target])
            if divisor == sr.zero:
                # unreachable for zero-sum-free carriers; a real occurrence
                # would corrupt residuals, so fail loudly
                raise RuntimeError(f"subset expansion produced a zero divisor "
                                   f"on label {label}")
            pairs = tuple((target, divide(bucket[target], divisor))
                          for target in targets)
            out.append((label, divisor, self._intern(pairs)))
        result = tuple(out)
        self._arcs[handle] = result
        return result

    def final_weight(self, handle: int) -> float:
        """Semiring sum of residual times member final weight; zero when no
        member is final. Memoized."""
        memo = self._finals.get(handle)
        if memo is not None:
            return memo
        sr = self.semiring
        acc = sr.zero
        for state, residual in self._subsets[handle]:
            acc = sr._plus(acc, sr._times(residual, self.automaton.final_weight(state)))
        self._finals[handle] = acc
        return acc

    def heuristic(self, handle: int, backward: DistanceTable) -> float:
        """Remaining-mass estimate of a subset: the semiring sum of residual
        times the member's backward distance in the source automaton.

        ``backward`` must be the base-view backward table of the source
        automaton and must be the same table on every call for this cache
        (the memo does not key on it)."""
        memo = self._heuristics.get(handle)
        if memo is not None:
            return memo
        sr = self.semiring
        acc = sr.zero
        for state, residual in self._subsets[handle]:
            acc = sr._plus(acc, sr._times(residual, backward[state]))
        self._heuristics[handle] = acc
        return acc

    def full_expand(self) -> int:
        """Expand every reachable subset; returns the determinized state
        count. Raises :class:`BudgetExceededError` when the state budget
        would be passed."""
        handle = 0
        while handle < len(self._subsets):
            self.expand(handle)
            handle += 1
        return len(self._subsets)

    def _key(self, pairs: tuple) -> tuple:
        tol = self.residual_tolerance
        if tol <= 0.0:
            return pairs
        # residuals in the same cell differ by less than the tolerance
        return tuple((state,
                      residual if math.isinf(residual)
                      else int(residual / tol + (0.5 if residual >= 0 else -0.5)))
                     for state, residual in pairs)

    def _intern(self, pairs: tuple) -> int:
        key = self._key(pairs)
        handle = self._index.get(key)
        if handle is not None:
            return handle
        if self.state_budget is not None and len(self._subsets) >= self.state_budget:
            raise BudgetExceededError(
                f"determinized state budget {self.state_budget} exceeded")
        handle = len(self._subsets)
        self._subsets.append(pairs)
        self._index[key] = handle
        return handle


def materialize(cache: DfaCache) -> Automaton:
    """The explored part of the determinized automaton as a plain
    :class:`Automaton` whose state ids are the cache handles. Arcs come
    only from already-expanded handles; run ``full_expand`` first for the
    complete machine."""
    arcs = []
    for handle in range(cache.num_states):
        if cache.is_expanded(handle):
            for label, weight, target in cache.expand(handle):
                arcs.append((handle, label, weight, target))
    finals = {}
    for handle in range(cache.num_states):
        weight = cache.final_weight(handle)
        if weight != cache.semiring.zero:
            finals[handle] = weight
    return Automaton(cache.semiring, cache.num_states, cache.start(), arcs, finals)


def dump_text(cache: DfaCache, symbols=None) -> str:
    """Text-format dump of the explored sub-automaton, for inspection and
    differential testing."""
    return write_text(materialize(cache), symbols)
