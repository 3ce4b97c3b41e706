"""Shared fixtures: the four-state reference lattice and random instances.

The reference lattice ("E1") is a log-semiring acceptor with two paths
spelling "a b" (weights 1.2 and 1.4) plus a lone "c" path (0.9); its
merged "a b" weight beats "c" even though "c" is the best single path,
which is the behaviour the whole package exists to decode correctly.

Expected values below were frozen from an independent derivation:
direct high-precision log-sum-exp over the enumerated path weights,
computed before and apart from the library code.
"""

import math
import random

import pytest

from shortstring import Automaton, LatticeSpec, LOG, REAL, generate

A, B, C = 1, 2, 3

LN2 = 0.6931471805599453
# -ln(e^-1.2 + e^-1.4)
SIGMA_AB = 0.6018611306184081
SIGMA_C = 0.9
# -ln(e^-1.2 + e^-1.4 + e^-0.9)
E1_TOTAL = 0.046713444670750746
# 0.5 (+) 0.5 = 0.5 - ln 2
D_A = -0.1931471805599453
# (ln2 + 0.7) (+) (ln2 + 0.9)
D_B = 0.7950083111783535
# 1.0 (+) 1.0 = 1 - ln 2
PLUS_ONE_ONE = 0.3068528194400547

E1_ARCS = [
    (0, A, 0.5, 1),
    (0, A, 0.5, 2),
    (1, B, 0.7, 3),
    (2, B, 0.9, 3),
    (0, C, 0.9, 3),
]

E1_TEXT = """\
0 1 a 0.5
0 2 a 0.5
0 3 c 0.9
1 3 b 0.7
2 3 b 0.9
3 0.0
"""

E1_SYMBOLS_TEXT = """\
<eps> 0
a 1
b 2
c 3
"""


def make_e1():
    return Automaton(LOG, 4, 0, E1_ARCS, {3: 0.0})


@pytest.fixture
def e1():
    return make_e1()


def small_instance(seed):
    """Deterministic random lattice with at most 12 states and vocab <= 4."""
    rng = random.Random(seed)
    width = rng.randint(1, 3)
    depth = rng.randint(1, min(6, 11 // width))
    return generate(LatticeSpec(
        depth=depth, width=width, vocab=rng.randint(1, 4),
        skew=rng.choice([0.5, 1.0, 2.0]), merge_prob=rng.random(), seed=seed))


def to_real(a):
    """The same automaton over the real semiring: weights exp(-w)."""
    arcs = [(src, label, math.exp(-w), dst) for src, label, w, dst in a.all_arcs()]
    finals = {q: math.exp(-w) for q, w in a.finals.items()}
    return Automaton(REAL, a.num_states, a.initial, arcs, finals)
