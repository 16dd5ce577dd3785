"""Exact Fourier spectra of symmetric Boolean functions.

Coefficients are stored scaled by 2^n so everything stays in arbitrary
precision integer arithmetic; exact zero tests are the whole point, since the
spectral support determines the rank of the XOR matrix.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from .symfun import SymmetricProfile, TrivialClass, classify


@functools.lru_cache(maxsize=64)
def binomial_table(n: int) -> tuple[tuple[int, ...], ...]:
    """Pascal triangle rows 0..n as exact integers."""
    rows = [(1,)]
    for m in range(1, n + 1):
        prev = rows[-1]
        rows.append(tuple(
            (prev[j - 1] if j > 0 else 0) + (prev[j] if j < m else 0)
            for j in range(m + 1)))
    return tuple(rows)


def binom(n: int, k: int) -> int:
    if k < 0 or k > n:
        return 0
    return binomial_table(n)[n][k]


def krawtchouk_coefficient(n: int, k: int, s: int) -> int:
    """c_{k,s} = sum_t (-1)^t C(k,t) C(n-k,s-t), the character sum of the
    weight-s slice against a weight-k representative."""
    if not (0 <= k <= n and 0 <= s <= n):
        raise ValueError(f"k={k}, s={s} out of range for n={n}")
    return sum((-1) ** t * binom(k, t) * binom(n - k, s - t)
               for t in range(max(0, k + s - n), min(k, s) + 1))


@functools.lru_cache(maxsize=64)
def krawtchouk_matrix(n: int) -> tuple[tuple[int, ...], ...]:
    """Matrix C with C[k][s] = c_{k,s}, exact integers."""
    return tuple(tuple(krawtchouk_coefficient(n, k, s) for s in range(n + 1))
                 for k in range(n + 1))


def krawtchouk_matrix_i64(n: int) -> np.ndarray:
    """int64 Krawtchouk matrix for vectorized scans; safe for n <= 22
    (all spectrum values are bounded by 2^n in magnitude)."""
    if n > 22:
        raise ValueError(f"int64 Krawtchouk matrix limited to n <= 22, got {n}")
    return np.array(krawtchouk_matrix(n), dtype=np.int64)


@dataclass(frozen=True)
class WeightSpectrum:
    """Spectrum of a symmetric f, indexed by Hamming weight.

    coeffs[k] equals 2^n * f~(w) for every w of weight k; rank is the exact
    rank of the 2^n x 2^n matrix [f(x xor y)].
    """

    n: int
    coeffs: tuple[int, ...]
    support: tuple[int, ...]
    rank: int


def weight_spectrum(profile: SymmetricProfile) -> WeightSpectrum:
    n = profile.n
    C = krawtchouk_matrix(n)
    coeffs = tuple(sum(C[k][s] for s in range(n + 1) if profile.s[s])
                   for k in range(n + 1))
    support = tuple(k for k, c in enumerate(coeffs) if c != 0)
    rank = sum(binom(n, k) for k in support)
    return WeightSpectrum(n=n, coeffs=coeffs, support=support, rank=rank)


def rank_of_xor_matrix(spectrum: WeightSpectrum) -> int:
    """rank(M_F) = number of nonzero Fourier coefficients, summed by weight
    class since the spectrum of a symmetric f is constant on each class."""
    return sum(binom(spectrum.n, k) for k in spectrum.support)


def window_bounds(n: int) -> tuple[int, int]:
    """Inclusive weight window [ceil(n/8), floor(7n/8)]."""
    return (-(-n // 8), 7 * n // 8)


def lemma_window_check(spectrum: WeightSpectrum) -> tuple[bool, int | None]:
    """Does the spectral support meet the middle weight window?

    Returns (True, witness weight) or (False, None).  No validity assumption
    is made at small n; this is a checkable predicate, not an assertion.
    """
    lo, hi = window_bounds(spectrum.n)
    for k in spectrum.support:
        if lo <= k <= hi:
            return True, k
    return False, None


def parseval_check(profile: SymmetricProfile, spectrum: WeightSpectrum) -> bool:
    """Exact Parseval identity for 0/1-valued f (standard identity)."""
    n = profile.n
    lhs = sum(binom(n, k) * spectrum.coeffs[k] ** 2 for k in range(n + 1))
    rhs = (1 << n) * sum(binom(n, s) for s in range(n + 1) if profile.s[s])
    return lhs == rhs


def deterministic_bounds(profile: SymmetricProfile) -> tuple[int, int]:
    """(log-rank lower bound, trivial upper bound) on D(F).

    Upper bound counts Bob's 1-bit answer so both parties learn the output.
    """
    rank = weight_spectrum(profile).rank
    lower = max(rank, 1).bit_length() - 1
    if max(rank, 1) & (max(rank, 1) - 1):
        lower += 1  # ceil(log2) for non powers of two
    cls = classify(profile)
    if cls in (TrivialClass.CONST0, TrivialClass.CONST1):
        upper = 0
    elif cls in (TrivialClass.PARITY, TrivialClass.NOTPARITY):
        upper = 1
    else:
        upper = profile.n + 1
    return lower, upper
