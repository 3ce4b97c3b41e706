import math

import pytest

from shortstring import (Automaton, BudgetExceededError, DfaCache, LOG,
                         approx_eq, backward_distance, dump_text,
                         enumerate_strings, materialize, read_text)

from conftest import D_A, D_B, E1_TOTAL, LN2, small_instance, to_real

INF = math.inf


class TestE1Construction:
    def test_start_subset(self, e1):
        cache = DfaCache(e1)
        assert cache.start() == 0
        assert cache.start() == 0
        assert cache.subset(0) == ((0, 0.0),)
        assert cache.num_states == 1

    def test_expand_start(self, e1):
        cache = DfaCache(e1)
        arcs = cache.expand(0)
        assert [label for label, _, _ in arcs] == [1, 3]
        label_a, weight_a, target_a = arcs[0]
        assert approx_eq(weight_a, D_A, 1e-12)
        subset = cache.subset(target_a)
        assert [state for state, _ in subset] == [1, 2]
        for _, residual in subset:
            assert approx_eq(residual, LN2, 1e-12)
        label_c, weight_c, target_c = arcs[1]
        assert weight_c == 0.9
        assert cache.subset(target_c) == ((3, 0.0),)

    def test_expand_merged_subset(self, e1):
        cache = DfaCache(e1)
        _, _, s1 = cache.expand(0)[0]
        arcs = cache.expand(s1)
        assert len(arcs) == 1
        label, weight, target = arcs[0]
        assert label == 2
        assert approx_eq(weight, D_B, 1e-12)
        assert cache.subset(target) == ((3, 0.0),)
        # the determinized path weight reproduces the merged string weight
        assert approx_eq(D_A + D_B, 0.6018611306184081, 1e-12)

    def test_expansion_memoized(self, e1):
        cache = DfaCache(e1)
        assert cache.expand(0) is cache.expand(0)

    def test_no_outgoing_arcs(self, e1):
        cache = DfaCache(e1)
        _, _, s2 = cache.expand(0)[1]
        assert cache.expand(s2) == ()

    def test_final_weights(self, e1):
        cache = DfaCache(e1)
        cache.full_expand()
        assert cache.final_weight(0) == INF
        _, _, s2 = cache.expand(0)[1]
        assert cache.final_weight(s2) == 0.0

    def test_final_weight_lifting_formula(self):
        # subset {(1, 0.2), (3, 0.5)} with final weight 0.1 on state 3:
        # only the final member contributes, residual times final weight
        a = Automaton(LOG, 4, 0, [(0, 1, 1.0, 1)], {3: 0.1})
        cache = DfaCache(a)
        handle = cache._intern(((1, 0.2), (3, 0.5)))
        assert approx_eq(cache.final_weight(handle), 0.6, 1e-12)

    def test_heuristic_values(self, e1):
        cache = DfaCache(e1)
        beta = backward_distance(e1, "base")
        cache.full_expand()
        assert approx_eq(cache.heuristic(0, beta), E1_TOTAL)
        _, _, s1 = cache.expand(0)[0]
        _, _, s2 = cache.expand(0)[1]
        assert approx_eq(cache.heuristic(s1, beta), D_B)
        assert cache.heuristic(s2, beta) == 0.0

    def test_full_expand_e1(self, e1):
        assert DfaCache(e1).full_expand() == 3


class TestFullExpand:
    def test_deterministic_input_stays_same_size(self):
        # a deterministic chain determinizes to singleton subsets
        arcs = [(q, 1 + (q % 2), 0.5, q + 1) for q in range(5)]
        a = Automaton(LOG, 6, 0, arcs, {5: 0.0})
        assert DfaCache(a).full_expand() == 6

    def test_parallel_arcs_merge(self):
        a = Automaton(LOG, 2, 0, [(0, 1, 0.5, 1), (0, 1, 0.9, 1)], {1: 0.0})
        cache = DfaCache(a)
        assert cache.full_expand() == 2
        assert len(cache.expand(0)) == 1

    def test_budget(self, e1):
        cache = DfaCache(e1, state_budget=2)
        with pytest.raises(BudgetExceededError):
            cache.full_expand()
        with pytest.raises(ValueError):
            DfaCache(e1, state_budget=0)

    def test_handle_numbering_deterministic(self):
        a = small_instance(11)
        first = DfaCache(a)
        second = DfaCache(a)
        assert first.full_expand() == second.full_expand()
        for handle in range(first.num_states):
            assert first.subset(handle) == second.subset(handle)
            assert first.expand(handle) == second.expand(handle)


def _dfa_string_weight(cache, labels):
    """Weight of one string read through the determinized machine."""
    sr = cache.semiring
    handle = cache.start()
    weight = sr.one
    for label in labels:
        arcs = {arc_label: (arc_weight, target)
                for arc_label, arc_weight, target in cache.expand(handle)}
        assert len(arcs) == len(cache.expand(handle)), "duplicate label"
        arc_weight, handle = arcs[label]
        weight = sr.times(weight, arc_weight)
    return sr.times(weight, cache.final_weight(handle))


class TestPerStringPreservation:
    def test_e1(self, e1):
        cache = DfaCache(e1)
        sigma = enumerate_strings(e1)
        for labels, weight in sigma.items():
            assert approx_eq(_dfa_string_weight(cache, labels), weight, 1e-9)

    def test_random_instances(self):
        for seed in range(50):
            a = small_instance(seed)
            cache = DfaCache(a)
            for labels, weight in enumerate_strings(a).items():
                assert approx_eq(_dfa_string_weight(cache, labels), weight, 1e-9)

    def test_real_semiring_instance(self):
        a = to_real(small_instance(5))
        cache = DfaCache(a)
        for labels, weight in enumerate_strings(a).items():
            assert approx_eq(_dfa_string_weight(cache, labels), weight, 1e-9)


class TestDivisorNormalization:
    def test_arc_weight_times_residual_recovers_contribution(self):
        for seed in range(20):
            a = small_instance(seed)
            sr = a.semiring
            cache = DfaCache(a)
            cache.full_expand()
            for handle in range(cache.num_states):
                subset = cache.subset(handle)
                for label, divisor, target in cache.expand(handle):
                    # recompute raw contributions independently
                    raw = {}
                    for state, residual in subset:
                        for arc_label, arc_weight, arc_target in a.arcs(state):
                            if arc_label != label:
                                continue
                            mass = sr.times(residual, arc_weight)
                            if arc_target in raw:
                                raw[arc_target] = sr.plus(raw[arc_target], mass)
                            else:
                                raw[arc_target] = mass
                    for state, residual in cache.subset(target):
                        assert approx_eq(sr.times(divisor, residual),
                                         raw[state], 1e-9)


class TestHeuristicAgainstMaterializedDfa:
    def test_heuristic_equals_direct_backward_distance(self):
        for seed in range(50):
            a = small_instance(seed)
            beta_n = backward_distance(a, "base")
            cache = DfaCache(a)
            count = cache.full_expand()
            direct = backward_distance(materialize(cache), "base")
            for handle in range(count):
                assert approx_eq(cache.heuristic(handle, beta_n),
                                 direct[handle], 1e-9)


class TestMaterialize:
    def test_e1_dfa_shape(self, e1):
        cache = DfaCache(e1)
        cache.full_expand()
        dfa = materialize(cache)
        assert dfa.num_states == 3
        assert dfa.initial == 0
        assert dfa.num_arcs() == 3
        assert dfa.finals == {2: 0.0}

    def test_dump_text_parses_back(self, e1):
        cache = DfaCache(e1)
        cache.full_expand()
        text = dump_text(cache)
        again = read_text(text, LOG)
        assert again.num_states == 3
        assert again.num_arcs() == 3
