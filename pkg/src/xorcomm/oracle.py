"""Independent brute-force references.

Everything here recomputes quantities from first principles (direct character
sums, exact matrix rank) so the spectral module and the protocols have
something to be validated against.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass

import numpy as np

from . import engine as _engine
from .spectral import krawtchouk_matrix_i64, window_bounds
from .symfun import InputPair, SymmetricProfile, TrivialClass, classify, evaluate_F

MAX_TABLE_N = 16
MAX_RANK_N = 10
MAX_SCAN_N = 22


@dataclass(frozen=True)
class TruthTable:
    """General Boolean f on {0,1}^n as a flat 0/1 vector indexed by x."""

    n: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.n > MAX_TABLE_N:
            raise ValueError(f"truth tables limited to n <= {MAX_TABLE_N}")
        if len(self.values) != 1 << self.n:
            raise ValueError("table length must be 2^n")
        if any(v not in (0, 1) for v in self.values):
            raise ValueError("table entries must be 0 or 1")

    @classmethod
    def from_profile(cls, profile: SymmetricProfile) -> "TruthTable":
        n = profile.n
        vals = tuple(profile.s[bin(x).count("1")] for x in range(1 << n))
        return cls(n=n, values=vals)


def _popcount(a: np.ndarray, bits: int) -> np.ndarray:
    out = np.zeros_like(a)
    for i in range(bits):
        out += (a >> i) & 1
    return out


def brute_fourier(table: TruthTable, w) -> int:
    """2^n * f~(w) = sum_x (-1)^{x.w} f(x), by direct enumeration."""
    n = table.n
    if len(w) != n:
        raise ValueError(f"w length {len(w)} != n {n}")
    wmask = sum(1 << i for i, b in enumerate(w) if b)
    total = 0
    for x, fx in enumerate(table.values):
        if fx:
            total += -1 if bin(x & wmask).count("1") & 1 else 1
    return total


@functools.lru_cache(maxsize=32)
def brute_symmetric_fourier_matrix(n: int) -> np.ndarray:
    """B[k, s] = sum over |x|=s of the sign against w = 1^k 0^{n-k}.

    Direct enumeration over all 2^n points; independent of the Krawtchouk
    formula.  Brute spectrum of profile p is then B @ p.
    """
    if n > MAX_TABLE_N:
        raise ValueError(f"limited to n <= {MAX_TABLE_N}")
    xs = np.arange(1 << n, dtype=np.int64)
    wt = _popcount(xs, n)
    out = np.zeros((n + 1, n + 1), dtype=np.int64)
    for k in range(n + 1):
        mask = (1 << k) - 1
        signs = 1 - 2 * (_popcount(xs & mask, n) & 1)
        out[k] = np.bincount(wt, weights=signs, minlength=n + 1).astype(np.int64)
    return out


def all_profiles_matrix(n: int) -> np.ndarray:
    """All 2^(n+1) profiles as rows of a 0/1 matrix; row i has s[k] = bit k of i."""
    idx = np.arange(1 << (n + 1), dtype=np.int64)
    return ((idx[:, None] >> np.arange(n + 1)) & 1).astype(np.int64)


def trivial_profile_indices(n: int) -> tuple[int, int, int, int]:
    """Row indices of const0, const1, parity, notparity in all_profiles_matrix."""
    const1 = (1 << (n + 1)) - 1
    parity = sum(1 << k for k in range(1, n + 1, 2))
    return 0, const1, parity, const1 ^ parity


# ---------------------------------------------------------------------------
# Exact rank of the XOR matrix


def _primes_above(start: int, count: int) -> list[int]:
    out, cand = [], start | 1
    while len(out) < count:
        p, is_p = cand, True
        d = 3
        if p % 2 == 0:
            is_p = False
        while is_p and d * d <= p:
            if p % d == 0:
                is_p = False
            d += 2
        if is_p:
            out.append(p)
        cand += 2
    return out


def _rank_mod_p(M: np.ndarray, p: int) -> int:
    A = np.mod(M, p).astype(np.int64)
    m, ncols = A.shape
    rank = 0
    for col in range(ncols):
        piv = np.nonzero(A[rank:, col])[0]
        if piv.size == 0:
            continue
        i = rank + piv[0]
        if i != rank:
            A[[rank, i]] = A[[i, rank]]
        inv = pow(int(A[rank, col]), p - 2, p)
        A[rank] = A[rank] * inv % p
        below = np.nonzero(A[rank + 1:, col])[0] + rank + 1
        if below.size:
            A[below] = (A[below] - np.outer(A[below, col], A[rank])) % p
        rank += 1
        if rank == m:
            break
    return rank


def xor_matrix(table: TruthTable) -> np.ndarray:
    idx = np.arange(1 << table.n)
    vals = np.array(table.values, dtype=np.int64)
    return vals[np.bitwise_xor.outer(idx, idx)]


def brute_rank(table: TruthTable) -> int:
    """Exact rank over the rationals of [f(x xor y)].

    Computed as the max of ranks modulo enough distinct 31-bit primes: some
    nonzero maximal minor has absolute value at most (m+1)^((m+1)/2) / 2^m
    (0/1 determinant bound), so it is divisible by fewer primes than we try,
    and the max is exactly the rational rank.
    """
    if table.n > MAX_RANK_N:
        raise ValueError(f"brute_rank limited to n <= {MAX_RANK_N}")
    M = xor_matrix(table)
    m = M.shape[0]
    log2_bound = (m + 1) * 0.5 * np.log2(m + 1) - m
    nprimes = max(1, int(log2_bound // 30) + 1)
    primes = _primes_above(1 << 30, nprimes)
    best = 0
    for p in primes:
        best = max(best, _rank_mod_p(M, p))
        if best == m:
            break
    return best


# ---------------------------------------------------------------------------
# Lemma window scans


def exhaustive_lemma_scan(n: int) -> list[SymmetricProfile]:
    """All nontrivial profiles at n whose support misses the middle window."""
    if n > MAX_SCAN_N:
        raise ValueError(f"exhaustive scan limited to n <= {MAX_SCAN_N}")
    lo, hi = window_bounds(n)
    Cwin = krawtchouk_matrix_i64(n)[lo:hi + 1]
    skip = set(trivial_profile_indices(n))
    total = 1 << (n + 1)
    chunk = 1 << 18
    shifts = np.arange(n + 1)
    violations = []
    for start in range(0, total, chunk):
        idx = np.arange(start, min(start + chunk, total), dtype=np.int64)
        P = ((idx[:, None] >> shifts) & 1).astype(np.int64)
        empty = ~np.any(P @ Cwin.T, axis=1)
        for i in idx[empty]:
            if int(i) in skip:
                continue
            s = tuple(int((int(i) >> k) & 1) for k in range(n + 1))
            violations.append(SymmetricProfile(n, s))
    return violations


def sampled_lemma_scan(n: int, samples: int, seed) -> int:
    """Count of random nontrivial profiles failing the window check.

    Profiles are drawn with i.i.d. uniform bits, rejecting the four trivial
    ones.  A fast modular prefilter finds a nonzero witness for almost every
    profile; only profiles whose whole window vanishes mod p get the exact
    big-integer recheck.
    """
    from .spectral import krawtchouk_matrix  # exact table, any n

    rng = np.random.default_rng(np.random.SeedSequence(seed))
    lo, hi = window_bounds(n)
    C = krawtchouk_matrix(n)
    p = 2_147_483_647
    Cwin_mod = np.array([[c % p for c in C[k]] for k in range(lo, hi + 1)],
                        dtype=np.int64)
    trivial = {tuple(k % 2 for k in range(n + 1)),
               tuple(1 - k % 2 for k in range(n + 1)),
               (0,) * (n + 1), (1,) * (n + 1)}
    count = 0
    drawn = 0
    batch = 4096
    while drawn < samples:
        take = min(batch, 4 * (samples - drawn) + 16)
        P = rng.integers(0, 2, size=(take, n + 1), dtype=np.int64)
        keep = [row for row in P if tuple(int(b) for b in row) not in trivial]
        keep = keep[:samples - drawn]
        if not keep:
            continue
        K = np.array(keep, dtype=np.int64)
        drawn += K.shape[0]
        # sums of at most n+1 terms below 2^31 stay well inside int64
        suspect = ~np.any((K @ Cwin_mod.T) % p, axis=1)
        for row in K[suspect]:
            s = tuple(int(b) for b in row)
            if all(sum(C[k][t] for t in range(n + 1) if s[t]) == 0
                   for k in range(lo, hi + 1)):
                count += 1
    return count


# ---------------------------------------------------------------------------
# Monte-Carlo protocol measurement


@dataclass(frozen=True)
class MCResult:
    trials: int
    successes: int
    success_rate: float
    mean_bits: float
    max_bits: int
    rounds_mean: float


def weighted_pair(n: int, m: int, rng: np.random.Generator) -> InputPair:
    """Uniform x and y = x xor (uniform weight-m mask), via a seeded shuffle."""
    x = rng.integers(0, 2, size=n, dtype=np.int64)
    y = x.copy()
    pos = rng.permutation(n)[:m]
    y[pos] ^= 1
    return InputPair(tuple(int(b) for b in x), tuple(int(b) for b in y))


def mc_error_estimate(protocol, profile: SymmetricProfile, m: int,
                      trials: int, seed) -> MCResult:
    """Empirical success rate and bit cost at exact XOR-weight m.

    Each trial derives its own input randomness and tape from (seed, trial),
    so results are replay-deterministic.
    """
    n = profile.n
    if not 0 <= m <= n:
        raise ValueError(f"weight m={m} out of range for n={n}")
    base = seed if isinstance(seed, (tuple, list)) else (seed,)
    successes = 0
    bits_sum = 0
    bits_max = 0
    rounds_sum = 0
    for t in range(trials):
        rng = np.random.default_rng(np.random.SeedSequence(tuple(base) + (t, 0)))
        pair = weighted_pair(n, m, rng)
        out, transcript = _engine.run_protocol(
            protocol, pair, profile, tuple(base) + (t, 1))
        truth = evaluate_F(profile, pair)
        successes += int(out == truth)
        bits_sum += transcript.total_bits
        bits_max = max(bits_max, transcript.total_bits)
        rounds_sum += transcript.rounds
    return MCResult(trials=trials, successes=successes,
                    success_rate=successes / trials if trials else 0.0,
                    mean_bits=bits_sum / trials if trials else 0.0,
                    max_bits=bits_max,
                    rounds_mean=rounds_sum / trials if trials else 0.0)
