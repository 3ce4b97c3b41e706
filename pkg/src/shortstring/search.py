"""Best-string decoding: A* over the lazily determinized acceptor.

Over a non-idempotent semiring the best *path* and the best *string* can
disagree, because several paths may share one string and their merged
weight beats every single path. Determinizing fixes this: in a
deterministic machine each string has exactly one path, whose weight is
the string's merged weight. The search therefore runs over determinized
subsets, scored with the companion view (best-first under the semiring
order), and uses each subset's merged remaining mass as the heuristic.
That heuristic never overestimates the best completion and never
overestimates any single step, so the first goal popped is the best
string and every subset is settled at most once.

Goals are handled with a virtual super-final hop: a final subset may
still have outgoing arcs whose continuations beat stopping there, so
popping the subset itself proves nothing; popping its super-final entry
does. Priority ties break by shorter string, then lexicographically
smaller label sequence, then insertion order, making results
reproducible and giving the brute-force oracle an exact contract.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Callable, Optional

from .automaton import Automaton
from .determinize import DfaCache, materialize
from .distance import backward_distance
from .errors import EmptyLanguageError
from .semiring import format_weight


@dataclass
class Stats:
    popped: int = 0          # settled subsets, super-final pop included
    pushed: int = 0
    subsets_built: int = 0
    queue_peak: int = 0
    arcs_relaxed: int = 0

    def as_dict(self) -> dict:
        return {"popped": self.popped, "pushed": self.pushed,
                "subsets_built": self.subsets_built,
                "queue_peak": self.queue_peak,
                "arcs_relaxed": self.arcs_relaxed}


@dataclass(frozen=True)
class SearchResult:
    labels: tuple
    weight: float
    stats: Stats


# on_pop callbacks receive (handle, gscore, heuristic, fscore, labels);
# handle is None for the super-final pop.
TraceFn = Callable[[Optional[int], float, float, float, tuple], None]


def shortest_string(a: Automaton, *, residual_tolerance: float = 1e-6,
                    state_budget: int | None = None,
                    on_pop: TraceFn | None = None,
                    cache: DfaCache | None = None) -> SearchResult:
    """Best label sequence of ``a`` and its merged weight.

    Determinization happens on the fly: only subsets the search actually
    reaches are ever built. Pass ``cache`` to keep the explored machine
    around afterwards (it must wrap ``a``; its own tolerance and budget
    then apply). Raises :class:`EmptyLanguageError` when no complete path
    exists and :class:`BudgetExceededError` past the subset budget.
    """
    beta = backward_distance(a, "base")
    if beta[a.initial] == a.semiring.zero:
        raise EmptyLanguageError("the automaton accepts no string")
    if cache is None:
        cache = DfaCache(a, residual_tolerance, state_budget)
    return _astar(cache, lambda handle: cache.heuristic(handle, beta), on_pop)


def shortest_string_via_full_determinization(
        a: Automaton, *, residual_tolerance: float = 1e-6,
        state_budget: int | None = None,
        on_pop: TraceFn | None = None,
        cache: DfaCache | None = None) -> SearchResult:
    """Baseline variant: determinize exhaustively first, compute the
    determinized machine's own backward table, then run the same search
    with that table as the heuristic. Returns the same string and weight
    as :func:`shortest_string` at strictly more determinization work."""
    if cache is None:
        cache = DfaCache(a, residual_tolerance, state_budget)
    cache.full_expand()
    dfa = materialize(cache)
    beta_d = backward_distance(dfa, "base")
    if beta_d[cache.start()] == a.semiring.zero:
        raise EmptyLanguageError("the automaton accepts no string")
    return _astar(cache, beta_d.__getitem__, on_pop)


def _astar(cache: DfaCache, heuristic: Callable[[int], float],
           on_pop: TraceFn | None) -> SearchResult:
    sr = cache.semiring
    zero, times, pk = sr.zero, sr._times, sr.priority_key
    stats = Stats()
    counter = 0
    root = cache.start()
    g_root = sr.one
    f_root = times(g_root, heuristic(root))
    # entry: (fkey, string length, labels, counter, handle | None, gscore);
    # the unique counter stops comparison before the handle field
    heap = [(pk(f_root), 0, (), counter, root, g_root)]
    stats.pushed = 1
    stats.queue_peak = 1
    best_g = {root: g_root}
    settled = set()
    last_fkey = -float("inf")
    while heap:
        fkey, _, labels, _, handle, g = heapq.heappop(heap)
        if handle is None:
            stats.popped += 1
            stats.subsets_built = cache.num_states
            if on_pop is not None:
                on_pop(None, g, sr.one, g, labels)
            return SearchResult(labels, g, stats)
        if handle in settled:
            continue
        settled.add(handle)
        stats.popped += 1
        # consistent heuristic: pop priorities never decrease
        assert fkey >= last_fkey - 1e-9, "popped priorities decreased"
        last_fkey = max(last_fkey, fkey)
        h_here = heuristic(handle)
        if on_pop is not None:
            on_pop(handle, g, h_here, times(g, h_here), labels)
        final = cache.final_weight(handle)
        if final != zero:
            g_goal = times(g, final)
            counter += 1
            heapq.heappush(heap, (pk(g_goal), len(labels), labels, counter,
                                  None, g_goal))
            stats.pushed += 1
        for label, weight, target in cache.expand(handle):
            stats.arcs_relaxed += 1
            if target in settled:
                continue
            if heuristic(target) == zero:
                continue  # dead end: no completion exists from there
            g_next = times(g, weight)
            old = best_g.get(target)
            if old is None or pk(g_next) < pk(old):
                best_g[target] = g_next
            elif g_next != old:
                continue  # strictly worse than the known path
            # equal gscores fall through: a later path may win the
            # shorter-then-lexicographic tie break
            counter += 1
            heapq.heappush(heap, (pk(times(g_next, heuristic(target))),
                                  len(labels) + 1, labels + (label,),
                                  counter, target, g_next))
            stats.pushed += 1
        if len(heap) > stats.queue_peak:
            stats.queue_peak = len(heap)
    raise EmptyLanguageError("no accepting path was found")


@dataclass(frozen=True)
class AuditReport:
    states_checked: int
    arcs_checked: int
    admissibility_violations: tuple
    consistency_violations: tuple

    @property
    def ok(self) -> bool:
        return not (self.admissibility_violations or self.consistency_violations)

    def __str__(self):
        if self.ok:
            return (f"ok: {self.states_checked} states and "
                    f"{self.arcs_checked} arcs audited")
        return (f"{len(self.admissibility_violations)} admissibility and "
                f"{len(self.consistency_violations)} consistency violations")


def heuristic_audit(a: Automaton, *, tolerance: float = 1e-9,
                    residual_tolerance: float = 1e-6,
                    state_budget: int | None = None) -> AuditReport:
    """Exhaustively verify the search heuristic on one automaton.

    Fully determinizes ``a``, then checks per subset that the heuristic
    never overestimates the best single completion (admissibility, against
    the companion backward table of the determinized machine) and never
    overestimates across any single arc or the final hop (consistency).
    Violations beyond ``tolerance`` are reported; small instances only.
    """
    sr = a.semiring
    beta_n = backward_distance(a, "base")
    cache = DfaCache(a, residual_tolerance, state_budget)
    count = cache.full_expand()
    dfa = materialize(cache)
    beta_hat = backward_distance(dfa, "companion")
    admissibility = []
    consistency = []
    arcs_checked = 0
    for handle in range(count):
        h_here = cache.heuristic(handle, beta_n)
        if not sr.leq_within(h_here, beta_hat[handle], tolerance):
            admissibility.append(
                f"state {handle}: heuristic {format_weight(h_here)} exceeds "
                f"best completion {format_weight(beta_hat[handle])}")
        for label, weight, target in cache.expand(handle):
            arcs_checked += 1
            bound = sr.times(weight, cache.heuristic(target, beta_n))
            if not sr.leq_within(h_here, bound, tolerance):
                consistency.append(
                    f"arc {handle}-{label}->{target}: heuristic "
                    f"{format_weight(h_here)} exceeds step bound "
                    f"{format_weight(bound)}")
        final = cache.final_weight(handle)
        if final != sr.zero:
            arcs_checked += 1
            if not sr.leq_within(h_here, final, tolerance):
                consistency.append(
                    f"state {handle}: heuristic {format_weight(h_here)} "
                    f"exceeds final weight {format_weight(final)}")
    return AuditReport(count, arcs_checked, tuple(admissibility),
                       tuple(consistency))
