"""Fourier expansion of functions on the p-biased boolean cube.

A function on {0,1}^r is given as a table of 2^r values where the entry
at ``mask`` is the value at the point whose i-th coordinate is bit i of
``mask``.  Coefficients are taken against the orthonormal character
basis chi_S(y) = prod_{i in S} (y_i - p) / sqrt(p(1-p)) under the
product measure with per-coordinate mean p.

Internally the expansion stores the raw moments
``c_S = E[f * prod_{i in S} (y_i - p)]``, which are rational whenever p
and the table are.  Squared coefficients come out exactly as
``c_S^2 / (p(1-p))^|S|``; only the signed coefficients themselves need
a square root.  Squared quantities (Parseval sums, influences) are
therefore exact Fractions in rational mode and floats otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .caps import check_count

EXACT_MAX_R = 16


def _is_rational(value) -> bool:
    return isinstance(value, (int, Fraction))


@dataclass(frozen=True)
class BiasedFourierExpansion:
    r: int
    p: Fraction | float
    exact: bool
    moments: tuple  # c_S indexed by the bitmask of S

    @property
    def variance_unit(self):
        """p(1-p), the squared norm of a single unsigned character."""
        return self.p * (1 - self.p)

    def coefficient_sq(self, mask: int):
        """The squared coefficient of chi_S, exact in rational mode."""
        c = self.moments[mask]
        size = mask.bit_count()
        return c * c / self.variance_unit ** size

    def coefficient(self, mask: int) -> float:
        c = float(self.moments[mask])
        size = mask.bit_count()
        return c / math.sqrt(float(self.variance_unit)) ** size

    def mean(self):
        return self.moments[0]

    def parseval_sum(self):
        return sum(self.coefficient_sq(m) for m in range(1 << self.r))

    def influence(self, i: int):
        self._check_coord(i)
        bit = 1 << i
        return sum(self.coefficient_sq(m) for m in range(1 << self.r)
                   if m & bit)

    def degree_d_influence(self, i: int, d: int):
        self._check_coord(i)
        if d < 0:
            raise ValueError("degree bound must be nonnegative")
        bit = 1 << i
        return sum(self.coefficient_sq(m) for m in range(1 << self.r)
                   if m & bit and m.bit_count() <= d)

    def degree_weight(self, d: int):
        """Total squared coefficient mass at degree exactly d."""
        return sum(self.coefficient_sq(m) for m in range(1 << self.r)
                   if m.bit_count() == d)

    def _check_coord(self, i: int) -> None:
        if not 0 <= i < self.r:
            raise ValueError(f"coordinate {i} out of range for r={self.r}")


def biased_fourier(table: Sequence, p, *,
                   exact: bool | None = None) -> BiasedFourierExpansion:
    """Expand a value table of length 2^r against the p-biased basis.

    ``exact`` defaults to True when p and every table entry are rational.
    """
    size = len(table)
    if size == 0 or size & (size - 1):
        raise ValueError(f"table length {size} is not a power of two")
    r = size.bit_length() - 1
    check_count("FOURIER", r, "cube dimension")
    if exact is None:
        exact = _is_rational(p) and all(_is_rational(v) for v in table)
    if exact:
        if r > EXACT_MAX_R:
            raise ValueError(f"rational mode supports r <= {EXACT_MAX_R}")
        p = Fraction(p)
        work = [Fraction(v) for v in table]
    else:
        p = float(p)
        work = [float(v) for v in table]
    if not 0 < p < 1:
        raise ValueError(f"bias must lie strictly between 0 and 1, got {p}")

    # Butterfly over coordinates: the slot without bit i takes the mean
    # over y_i, the slot with bit i takes E[(y_i - p) f].
    pq = p * (1 - p)
    for i in range(r):
        bit = 1 << i
        for mask in range(size):
            if mask & bit:
                continue
            lo = work[mask]
            hi = work[mask | bit]
            work[mask] = (1 - p) * lo + p * hi
            work[mask | bit] = pq * (hi - lo)
    return BiasedFourierExpansion(r, p, exact, tuple(work))


def influence(table: Sequence, i: int, p, *, d: int | None = None):
    """Inf_i of the table's function; degree-d truncation when d given."""
    expansion = biased_fourier(table, p)
    if d is None:
        return expansion.influence(i)
    return expansion.degree_d_influence(i, d)


def influences(table: Sequence, p, *, d: int | None = None) -> list:
    expansion = biased_fourier(table, p)
    if d is None:
        return [expansion.influence(i) for i in range(expansion.r)]
    return [expansion.degree_d_influence(i, d) for i in range(expansion.r)]


def conditional_variance_influence(table: Sequence, i: int, p):
    """Inf_i computed without Fourier: p(1-p) E[(f_{i->1} - f_{i->0})^2].

    Restricting f at coordinate i splits it into functions f_{i->0} and
    f_{i->1} of the remaining coordinates; the per-point variance over
    y_i is p(1-p) times their squared difference.  Serves as an
    independent cross-check of the coefficient route.
    """
    size = len(table)
    if size == 0 or size & (size - 1):
        raise ValueError(f"table length {size} is not a power of two")
    r = size.bit_length() - 1
    if not 0 <= i < r:
        raise ValueError(f"coordinate {i} out of range for r={r}")
    exact = _is_rational(p) and all(_is_rational(v) for v in table)
    p = Fraction(p) if exact else float(p)
    bit = 1 << i
    total = Fraction(0) if exact else 0.0
    for mask in range(size):
        if mask & bit:
            continue
        ones = (mask & ~bit).bit_count()
        weight = p ** ones * (1 - p) ** (r - 1 - ones)
        diff = table[mask | bit] - table[mask]
        total += weight * diff * diff
    return p * (1 - p) * total


def dictator_table(r: int, i: int) -> list:
    """Truth table of y -> y_i."""
    if not 0 <= i < r:
        raise ValueError(f"coordinate {i} out of range for r={r}")
    return [(mask >> i) & 1 for mask in range(1 << r)]


def mask_of(y: Sequence[int]) -> int:
    """Bitmask of a 0/1 string, coordinate i in bit i."""
    mask = 0
    for i, a in enumerate(y):
        if a not in (0, 1):
            raise ValueError(f"not a boolean string: {tuple(y)}")
        mask |= a << i
    return mask


def point_of(mask: int, r: int) -> tuple:
    return tuple((mask >> i) & 1 for i in range(r))
