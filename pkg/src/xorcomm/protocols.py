"""Concrete protocols for symmetric XOR problems.

The Hamming-distance subprotocol here is a bucket-parity sketch with
one-sided error, standing in for the O(d log d) protocol the two-way and
one-way constructions assume.  Per repetition both parties hash positions
into b buckets off the shared tape; Alice sends her b bucket parities and a
repetition votes ">d" iff more than d bucket parities differ.  A differing
bucket needs an odd number of differing positions, so the vote can never
overshoot the true distance: error is one-sided and ANY-voting amplifies it
away.  Cost is repetitions * b bits, all Alice to Bob.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .engine import Channel, Protocol, RandomTape
from .symfun import (GapParams, SymmetricProfile, TrivialClass, gap_params,
                     threshold_of)

def _bits_to_str(bits: np.ndarray) -> str:
    return (bits.astype(np.uint8) + 48).tobytes().decode("ascii")


def default_buckets(d: int, n: int) -> int:
    return min(2 * (d + 1) ** 2, n)


@dataclass(frozen=True)
class HamConfig:
    """Threshold d, bucket count, and ANY-voting repetitions."""

    d: int
    buckets: int | None = None  # None = min(2(d+1)^2, n), resolved at run time
    repetitions: int = 1

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("d must be >= 0")
        if self.buckets is not None and self.buckets < 1:
            raise ValueError("buckets must be >= 1")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")


@dataclass(frozen=True)
class XorProtocolConfig:
    """Amplification knobs for the two-way / one-way XOR protocols."""

    region_reps: int = 5
    search_rep_factor: int = 2

    def __post_init__(self):
        if self.region_reps < 1 or self.search_rep_factor < 1:
            raise ValueError("amplification parameters must be positive")


def _bucket_parities(bits: np.ndarray, bucket_map: np.ndarray, b: int) -> np.ndarray:
    return np.bincount(bucket_map[bits.astype(bool)], minlength=b) & 1


def _ham_round(x: np.ndarray, y: np.ndarray, d: int, b: int,
               channel: Channel, tape: RandomTape, flip: bool = False) -> bool:
    """One bucket-parity repetition; returns the vote "|xa xor y| > d".

    With flip=True Alice uses the complement of x, turning a test on
    |x xor y| into one on n - |x xor y|.  When b >= n the bucket map is the
    identity (no tape consumption) and the vote is exact.
    """
    n = len(x)
    if b >= n:
        bucket_map = np.arange(n)
    else:
        bucket_map = tape.integers(b, size=n)
    xa = 1 - x if flip else x
    pa = _bucket_parities(xa, bucket_map, b)
    channel.a_to_b(_bits_to_str(pa))
    pb = _bucket_parities(y, bucket_map, b)
    return int(np.count_nonzero(pa != pb)) > d


def _amplified_ham(x, y, d, b, reps, channel, tape, flip=False) -> bool:
    votes = [_ham_round(x, y, d, b, channel, tape, flip=flip) for _ in range(reps)]
    return any(votes)


class ParityProtocol(Protocol):
    """Alice sends |x| mod 2; the output is the parity of |x xor y|."""

    name = "parity"
    one_way = True

    def run(self, x, y, profile, channel, tape):
        pa = int(x.sum()) & 1
        channel.a_to_b(str(pa))
        return (pa + int(y.sum())) & 1


class FullSendProtocol(Protocol):
    """Alice sends x verbatim; always correct, n content bits."""

    name = "fullsend"
    one_way = True

    def run(self, x, y, profile, channel, tape):
        channel.a_to_b(_bits_to_str(x))
        m = int(np.count_nonzero(x != y))
        return profile.s[m]


class HamProtocol(Protocol):
    """Decides HAM_{n,d}: outputs 1 iff it claims |x xor y| > d.

    One-sided: never outputs 1 when the true distance is <= d.
    """

    name = "ham"
    one_way = True

    def __init__(self, config: HamConfig):
        self.config = config

    def params(self):
        return {"d": self.config.d, "buckets": self.config.buckets,
                "repetitions": self.config.repetitions}

    @classmethod
    def for_profile(cls, profile: SymmetricProfile, buckets=None, repetitions=1):
        d = threshold_of(profile)
        if d is None:
            raise ValueError("ham protocol needs a threshold:<d> profile")
        return cls(HamConfig(d=d, buckets=buckets, repetitions=repetitions))

    def run(self, x, y, profile, channel, tape):
        d = self.config.d
        n = len(x)
        if d >= n:
            return 0  # distance can never exceed n; zero communication
        b = self.config.buckets or default_buckets(d, n)
        return int(_amplified_ham(x, y, d, b, self.config.repetitions,
                                  channel, tape))


def _probe_reps(r: int, factor: int) -> int:
    return math.ceil(factor * math.log2(math.log2(max(r, 4))))


def _enum_reps(r: int, factor: int) -> int:
    return math.ceil(factor * math.log2(max(r, 2)))


def _middle_representative(profile: SymmetricProfile, r: int, p: int) -> int:
    """Least k in [r, n-r] with k = p mod 2; output bit is s[k].

    On the (tiny-interval) parity mismatch the fallback is s[r], counted
    honestly as a potential error.
    """
    n = profile.n
    k = next((k for k in range(r, n - r + 1) if k % 2 == p), None)
    return profile.s[k] if k is not None else profile.s[r]


def _run_trivial(profile: SymmetricProfile, gp: GapParams, x, y,
                 channel: Channel) -> int:
    if gp.trivial_class in (TrivialClass.CONST0, TrivialClass.CONST1):
        return profile.s[0]
    # parity-type profile: 2-periodic everywhere, so s[parity] is the answer
    pa = int(x.sum()) & 1
    channel.a_to_b(str(pa))
    return profile.s[(pa + int(y.sum())) & 1]


class TwoWayXorProtocol(Protocol):
    """Region test + parity shortcut + interactive binary search.

    Phase 1 locates |x xor y| in [0, r), [r, n-r], or (n-r, n] with two
    amplified bucket-parity tests at threshold r-1, the upper one on Alice's
    flipped input (|~x xor y| = n - |x xor y|).  The middle region needs only
    the distance parity.  A tail triggers a binary search whose probes are
    amplified ceil(search_rep_factor * log2 log2 r) times; Bob feeds each
    probe outcome back with one bit to steer the search.

    All internal Hamming tests use b = 2r^2 buckets (uncapped), keeping the
    simulated cost at O(r^2 log r log log r) content bits.
    """

    name = "xor2way"

    def __init__(self, config: XorProtocolConfig = XorProtocolConfig()):
        self.config = config

    def params(self):
        return {"region_reps": self.config.region_reps,
                "search_rep_factor": self.config.search_rep_factor}

    def run(self, x, y, profile, channel, tape):
        gp = gap_params(profile)
        if gp.r == 0:
            return _run_trivial(profile, gp, x, y, channel)
        n, s, r = profile.n, profile.s, gp.r
        b = 2 * r * r
        rr = self.config.region_reps

        up = _amplified_ham(x, y, r - 1, b, rr, channel, tape, flip=True)
        low = _amplified_ham(x, y, r - 1, b, rr, channel, tape)
        if not up:
            region = "upper"
        elif low:
            region = "middle"
        else:
            region = "lower"
        channel.b_to_a({"lower": "00", "middle": "01", "upper": "10"}[region])

        if region == "middle":
            pa = int(x.sum()) & 1
            channel.a_to_b(str(pa))
            return _middle_representative(profile, r, (pa + int(y.sum())) & 1)

        flip = region == "upper"
        reps = _probe_reps(r, self.config.search_rep_factor)
        # Fixed probe count: ceil(log2 r) always suffices, and padding the
        # collapsed tail keeps the transcript length input-independent.
        lo, hi = 0, r - 1
        for _ in range(math.ceil(math.log2(r)) if r > 1 else 0):
            mid = (lo + hi) // 2
            vote = _amplified_ham(x, y, mid, b, reps, channel, tape, flip=flip)
            channel.b_to_a(str(int(vote)))
            if lo < hi:
                if vote:
                    lo = mid + 1
                else:
                    hi = mid
        return s[n - lo] if flip else s[lo]

    def expected_content_bits(self, profile: SymmetricProfile, region: str) -> int:
        """Closed-form phase sum for one transcript, given the region taken."""
        gp = gap_params(profile)
        if gp.r == 0:
            return 0 if gp.trivial_class in (TrivialClass.CONST0,
                                             TrivialClass.CONST1) else 1
        r = gp.r
        b = 2 * r * r
        bits = 2 * self.config.region_reps * b + 2
        if region == "middle":
            return bits + 1
        probes = max(0, math.ceil(math.log2(r))) if r > 1 else 0
        reps = _probe_reps(r, self.config.search_rep_factor)
        return bits + probes * (reps * b + 1)


class OneWayXorProtocol(Protocol):
    """Enumeration variant: every content message flows Alice to Bob.

    Alice ships the distance parity, both region tests, and for each
    candidate distance in the two tails the pair of Hamming tests that pin
    it down, each amplified ceil(search_rep_factor * log2 r) times.  Bob
    decodes by picking the smallest candidate whose two tests are
    consistent; one-sided test error makes smallest-consistent the natural
    rule.  Adjacent candidates share a test, so each tail needs exactly r
    distinct amplified tests.
    """

    name = "xor1way"
    one_way = True

    def __init__(self, config: XorProtocolConfig = XorProtocolConfig()):
        self.config = config

    def params(self):
        return {"region_reps": self.config.region_reps,
                "search_rep_factor": self.config.search_rep_factor}

    def run(self, x, y, profile, channel, tape):
        gp = gap_params(profile)
        if gp.r == 0:
            return _run_trivial(profile, gp, x, y, channel)
        n, s, r = profile.n, profile.s, gp.r
        b = 2 * r * r
        rr = self.config.region_reps
        reps = _enum_reps(r, self.config.search_rep_factor)

        pa = int(x.sum()) & 1
        channel.a_to_b(str(pa))
        up_hit = _amplified_ham(x, y, r - 1, b, rr, channel, tape, flip=True)
        low_hit = _amplified_ham(x, y, r - 1, b, rr, channel, tape)
        tests = {}
        for flip in (False, True):
            for d in range(r):
                tests[(flip, d)] = _amplified_ham(x, y, d, b, reps, channel,
                                                  tape, flip=flip)

        if not up_hit:
            region = "upper"
        elif low_hit:
            region = "middle"
        else:
            region = "lower"

        if region == "middle":
            return _middle_representative(profile, r, (pa + int(y.sum())) & 1)
        flip = region == "upper"
        for v in range(r):
            above_prev = True if v == 0 else tests[(flip, v - 1)]
            at_most_v = not tests[(flip, v)]
            if above_prev and at_most_v:
                return s[n - v] if flip else s[v]
        return s[0]

    def expected_content_bits(self, profile: SymmetricProfile) -> int:
        gp = gap_params(profile)
        if gp.r == 0:
            return 0 if gp.trivial_class in (TrivialClass.CONST0,
                                             TrivialClass.CONST1) else 1
        r = gp.r
        b = 2 * r * r
        reps = _enum_reps(r, self.config.search_rep_factor)
        return 1 + 2 * self.config.region_reps * b + 2 * r * reps * b


PROTOCOL_NAMES = ("parity", "fullsend", "ham", "xor2way", "xor1way")


def make_protocol(name: str, profile: SymmetricProfile, *, buckets=None,
                  repetitions=1, region_reps=5, search_rep_factor=2) -> Protocol:
    """CLI-facing factory mapping a protocol name plus flags to an instance."""
    if name == "parity":
        return ParityProtocol()
    if name == "fullsend":
        return FullSendProtocol()
    if name == "ham":
        return HamProtocol.for_profile(profile, buckets=buckets,
                                       repetitions=repetitions)
    cfg = XorProtocolConfig(region_reps=region_reps,
                            search_rep_factor=search_rep_factor)
    if name == "xor2way":
        return TwoWayXorProtocol(cfg)
    if name == "xor1way":
        return OneWayXorProtocol(cfg)
    raise ValueError(f"unknown protocol {name!r}")
