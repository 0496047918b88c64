"""Combinatorics of moments and cumulants.

Stirling tables drive the linear maps between plain and factorial cumulant
masses; set partitions drive the factorial-moment expansion.  Everything
combinatorial is exact integer / rational arithmetic, floats only enter when
the caller's inputs are floats (and round trips stay exact because the
weights are integers).

Conventions follow the falling-factorial identities

    x^[k] = sum_j (-1)^(k-j) D_{j,k} x^j      (first kind, unsigned)
    x^k   = sum_j Delta_{j,k} x^[j]           (second kind)

so that for a point process on a bounded set A,

    gamma_[k](A^k) = sum_j (-1)^(k-j) D_{j,k} gamma_j(A^j)
    gamma_k(A^k)   = sum_j Delta_{j,k} gamma_[j](A^j).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

__all__ = [
    "StirlingTable",
    "stirling_tables",
    "fact_cumulants_from_cumulants",
    "cumulants_from_fact_cumulants",
    "fact_cumulants_from_fact_moments",
    "enumerate_partitions",
    "empirical_cumulants",
]

MAX_STIRLING_ORDER = 20
MAX_PARTITION_N = 8


@dataclass(frozen=True)
class StirlingTable:
    """Triangular tables D (first kind, unsigned) and Delta (second kind).

    Entries are indexed [j][k] with 1 <= j <= k <= max_order; zero elsewhere.
    """

    max_order: int
    D: tuple
    Delta: tuple

    def first(self, j: int, k: int) -> int:
        if j < 1 or k < 1 or j > k or k > self.max_order:
            return 0
        return self.D[k][j]

    def second(self, j: int, k: int) -> int:
        if j < 1 or k < 1 or j > k or k > self.max_order:
            return 0
        return self.Delta[k][j]


def stirling_tables(K: int) -> StirlingTable:
    """Build both Stirling tables up to order K (K <= 20)."""
    if K < 1:
        raise ValueError("K must be >= 1")
    if K > MAX_STIRLING_ORDER:
        raise ValueError(f"order {K} exceeds the exact-arithmetic cap {MAX_STIRLING_ORDER}")
    # rows indexed by k, columns by j; row 0 unused
    D = [[0] * (K + 1) for _ in range(K + 1)]
    S = [[0] * (K + 1) for _ in range(K + 1)]
    D[1][1] = S[1][1] = 1
    for k in range(1, K):
        for j in range(1, k + 2):
            D[k + 1][j] = (D[k][j - 1] if j >= 1 else 0) + k * D[k][j]
            S[k + 1][j] = (S[k][j - 1] if j >= 1 else 0) + j * S[k][j]
    return StirlingTable(K, tuple(tuple(r) for r in D), tuple(tuple(r) for r in S))


def _as_fraction_list(seq):
    return [x if isinstance(x, Fraction) else Fraction(x) for x in seq]


def fact_cumulants_from_cumulants(gamma):
    """Map plain cumulant masses (gamma_1..gamma_K) to factorial ones."""
    gamma = _as_fraction_list(gamma)
    K = len(gamma)
    tab = stirling_tables(K)
    out = []
    for k in range(1, K + 1):
        acc = Fraction(0)
        for j in range(1, k + 1):
            acc += (-1) ** (k - j) * tab.first(j, k) * gamma[j - 1]
        out.append(acc)
    return out


def cumulants_from_fact_cumulants(gamma_fact):
    """Inverse map: factorial cumulant masses to plain ones."""
    gamma_fact = _as_fraction_list(gamma_fact)
    K = len(gamma_fact)
    tab = stirling_tables(K)
    out = []
    for k in range(1, K + 1):
        acc = Fraction(0)
        for j in range(1, k + 1):
            acc += tab.second(j, k) * gamma_fact[j - 1]
        out.append(acc)
    return out


def enumerate_partitions(n: int):
    """All set partitions of {1, ..., n}, ordered by block count.

    Each partition is a tuple of frozensets.  n is capped at 8 (Bell(8) =
    4140, plenty for the order-4 expansions used here).
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n > MAX_PARTITION_N:
        raise ValueError(f"n={n} exceeds the partition cap {MAX_PARTITION_N}")
    parts = []

    def recurse(element, blocks):
        if element > n:
            parts.append(tuple(frozenset(b) for b in blocks))
            return
        for b in blocks:
            b.append(element)
            recurse(element + 1, blocks)
            b.pop()
        blocks.append([element])
        recurse(element + 1, blocks)
        blocks.pop()

    recurse(1, [])
    parts.sort(key=len)
    return parts


def fact_cumulants_from_fact_moments(alpha):
    """Factorial cumulant masses from factorial moment masses (diagonal case).

    gamma_[k](A^k) = sum_{j} (-1)^(j-1) (j-1)! sum_{partitions into j blocks}
                     prod_i alpha^(|B_i|)(A^|B_i|)

    for k = len(alpha) <= 4.
    """
    alpha = _as_fraction_list(alpha)
    K = len(alpha)
    if K > 4:
        raise ValueError("factorial-moment expansion implemented for K <= 4")
    out = []
    for k in range(1, K + 1):
        acc = Fraction(0)
        for part in enumerate_partitions(k):
            j = len(part)
            term = Fraction((-1) ** (j - 1) * math.factorial(j - 1))
            for block in part:
                term *= alpha[len(block) - 1]
            acc += term
        out.append(acc)
    return out


def empirical_cumulants(samples, max_order: int = 4):
    """Unbiased k-statistics (k1..k_max_order) of a scalar sample.

    k2 is the usual unbiased variance; k3 and k4 are the standard
    k-statistics, unbiased for the third and fourth cumulant.
    """
    if max_order not in (2, 3, 4):
        raise ValueError("max_order must be 2, 3 or 4")
    x = np.asarray(samples, dtype=float)
    n = x.size
    if n < max_order + 1:
        raise ValueError(f"need at least {max_order + 1} samples")
    mean = float(np.mean(x))
    dev = x - mean
    m2 = float(np.mean(dev ** 2))
    out = [mean, n / (n - 1.0) * m2]
    if max_order >= 3:
        m3 = float(np.mean(dev ** 3))
        out.append(n * n / ((n - 1.0) * (n - 2.0)) * m3)
    if max_order >= 4:
        m4 = float(np.mean(dev ** 4))
        k4 = (n * n * ((n + 1.0) * m4 - 3.0 * (n - 1.0) * m2 ** 2)
              / ((n - 1.0) * (n - 2.0) * (n - 3.0)))
        out.append(k4)
    return out
