"""Weight algebra for lattice decoding.

Weights are bare 64-bit floats whose meaning is fixed by the active
semiring object. Two semirings are provided:

* ``log``:  carrier R plus both infinities, ``plus`` is the stable
  log-domain sum ``-ln(e^-a + e^-b)``, ``times`` is ``+``, zero is
  ``+inf``, one is ``0.0``, and smaller values are better.
* ``real``: carrier ``[0, inf)`` (probability masses), ``plus`` is
  ``+``, ``times`` is ``*``, zero is ``0.0``, one is ``1.0``, and
  larger values are better.

Both algebras are monotonic and negative: summing alternatives never
beats every alternative, and extending a path never improves it. Each
also carries a companion view, ``companion_plus``, which selects the
better operand under the semiring's total order; running the usual
algorithms with ``companion_plus`` in place of ``plus`` yields the
tropical (resp. max-times) behaviour without a separate weight type.

The public operations reject non-member floats with
:class:`SemiringDomainError`. The underscore variants skip that check;
they exist for inner loops over already-validated automata, where both
algebras are closed.
"""

from __future__ import annotations

import math

from .errors import SemiringDomainError

INF = math.inf


class Semiring:
    """Operations of one weight algebra over bare floats."""

    name: str = "?"
    zero: float = INF  # additive identity; absorbs under times; "no path"
    one: float = 0.0   # multiplicative identity; weight of the empty path

    def is_member(self, a: float) -> bool:
        raise NotImplementedError

    def plus(self, a: float, b: float) -> float:
        raise NotImplementedError

    def times(self, a: float, b: float) -> float:
        raise NotImplementedError

    def divide(self, a: float, b: float) -> float:
        """Right inverse of times: ``times(b, divide(a, b)) == a``."""
        raise NotImplementedError

    def leq(self, a: float, b: float) -> bool:
        """Total order of the semiring; True when ``a`` is better or equal."""
        raise NotImplementedError

    def companion_plus(self, a: float, b: float) -> float:
        """Select the better operand; the idempotent view of ``plus``."""
        self.check_member(a)
        self.check_member(b)
        return a if self.leq(a, b) else b

    def priority_key(self, a: float) -> float:
        """Map a weight to a float that sorts ascending in the order."""
        raise NotImplementedError

    def leq_within(self, a: float, b: float, tol: float) -> bool:
        """``leq(a, b)`` with absolute slack ``tol`` for float drift."""
        return self.priority_key(a) <= self.priority_key(b) + tol

    def check_member(self, a: float) -> None:
        if not self.is_member(a):
            raise SemiringDomainError(
                f"{a!r} is not a member of the {self.name} semiring")

    def _plus(self, a: float, b: float) -> float:
        raise NotImplementedError

    def _times(self, a: float, b: float) -> float:
        raise NotImplementedError

    def _divide(self, a: float, b: float) -> float:
        raise NotImplementedError

    def _companion_plus(self, a: float, b: float) -> float:
        return a if self.leq(a, b) else b

    def __repr__(self):
        return f"<{self.name} semiring>"


class LogSemiring(Semiring):
    """Negated-log probability masses; sums merge alternatives."""

    name = "log"
    zero = INF
    one = 0.0

    def is_member(self, a):
        # all reals and both infinities; NaN is never a member
        return a == a

    def plus(self, a, b):
        if a != a or b != b:
            self.check_member(a)
            self.check_member(b)
        return self._plus(a, b)

    def times(self, a, b):
        if a != a or b != b:
            self.check_member(a)
            self.check_member(b)
        return self._times(a, b)

    def divide(self, a, b):
        if a != a or b != b:
            self.check_member(a)
            self.check_member(b)
        return self._divide(a, b)

    def _plus(self, a, b):
        if a == INF:
            return b
        if b == INF:
            return a
        if a == -INF or b == -INF:
            return -INF
        # stable form of -ln(e^-a + e^-b); naive exponentiation underflows
        # once weights pass ~745
        return min(a, b) - math.log1p(math.exp(-abs(a - b)))

    def _times(self, a, b):
        if a == INF or b == INF:
            return INF  # annihilation wins over inf + (-inf)
        return a + b

    def _divide(self, a, b):
        if b == INF:
            raise ZeroDivisionError("division by the log semiring zero (+inf)")
        if a == INF:
            return INF
        return a - b

    def leq(self, a, b):
        return a <= b

    def priority_key(self, a):
        return a


class RealSemiring(Semiring):
    """Plain probability masses; the order prefers larger mass."""

    name = "real"
    zero = 0.0
    one = 1.0

    def is_member(self, a):
        # finite and non-negative; excludes +inf and NaN
        return 0.0 <= a < INF

    def plus(self, a, b):
        if not (0.0 <= a < INF and 0.0 <= b < INF):
            self.check_member(a)
            self.check_member(b)
        return a + b

    def times(self, a, b):
        if not (0.0 <= a < INF and 0.0 <= b < INF):
            self.check_member(a)
            self.check_member(b)
        return a * b

    def divide(self, a, b):
        if not (0.0 <= a < INF and 0.0 <= b < INF):
            self.check_member(a)
            self.check_member(b)
        return self._divide(a, b)

    def _plus(self, a, b):
        return a + b

    def _times(self, a, b):
        return a * b

    def _divide(self, a, b):
        if b == 0.0:
            raise ZeroDivisionError("division by the real semiring zero (0.0)")
        return a / b

    def leq(self, a, b):
        return a >= b

    def priority_key(self, a):
        return -a


LOG = LogSemiring()
REAL = RealSemiring()

SEMIRINGS = {LOG.name: LOG, REAL.name: REAL}


def get_semiring(name: str) -> Semiring:
    try:
        return SEMIRINGS[name]
    except KeyError:
        raise ValueError(f"unknown semiring {name!r}; expected one of "
                         f"{sorted(SEMIRINGS)}") from None


def approx_eq(a: float, b: float, tol: float = 1e-9) -> bool:
    """Absolute-tolerance float equality; infinities equal only themselves."""
    if tol < 0.0:
        raise ValueError("tolerance must be non-negative")
    return a == b or abs(a - b) <= tol


def format_weight(a: float, digits: int = 9) -> str:
    """Render a weight for diagnostics with up to ``digits`` significant
    digits; infinities render as ``+inf`` / ``-inf``."""
    if a == INF:
        return "+inf"
    if a == -INF:
        return "-inf"
    return f"{a:.{digits}g}"
