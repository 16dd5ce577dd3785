"""Two-party protocol execution: shared tape, channel, transcripts, sweeps.

Bits are accounted, not transmitted.  Bob is the output party for every
protocol; the engine appends his 1-bit answer to the transcript so both
parties know the result.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Any

import numpy as np

from .symfun import InputPair, ProfileError, SymmetricProfile


class Direction(str, Enum):
    A2B = "AliceToBob"
    B2A = "BobToAlice"


class ScheduleViolation(RuntimeError):
    """A party sent a message its declared schedule forbids."""


@dataclass(frozen=True)
class Message:
    direction: Direction
    payload: str  # bit string


@dataclass
class Transcript:
    messages: list[Message]
    seed: Any
    answer_bits: int = 1  # final Bob->Alice answer appended by the engine

    @property
    def bits_a_to_b(self) -> int:
        return sum(len(m.payload) for m in self.messages
                   if m.direction is Direction.A2B)

    @property
    def bits_b_to_a(self) -> int:
        return sum(len(m.payload) for m in self.messages
                   if m.direction is Direction.B2A)

    @property
    def total_bits(self) -> int:
        return self.bits_a_to_b + self.bits_b_to_a

    @property
    def content_bits(self) -> int:
        return self.total_bits - self.answer_bits

    @property
    def rounds(self) -> int:
        r, prev = 0, None
        for m in self.messages:
            if m.direction is not prev:
                r += 1
                prev = m.direction
        return r


class RandomTape:
    """One shared public-coin stream, consumed in lock-step by both parties."""

    def __init__(self, seed):
        self._gen = np.random.Generator(np.random.PCG64(np.random.SeedSequence(seed)))
        self.position = 0

    def integers(self, upper: int, size: int | None = None) -> np.ndarray:
        self.position += size if size is not None else 1
        return self._gen.integers(0, upper, size=size)


class Channel:
    """Records messages; enforces the one-way restriction when declared."""

    def __init__(self, one_way: bool = False):
        self.one_way = one_way
        self.messages: list[Message] = []

    def a_to_b(self, payload: str) -> str:
        self.messages.append(Message(Direction.A2B, payload))
        return payload

    def b_to_a(self, payload: str) -> str:
        if self.one_way:
            raise ScheduleViolation(
                "one-way protocol attempted a Bob->Alice content message")
        self.messages.append(Message(Direction.B2A, payload))
        return payload

    def _final_answer(self, payload: str) -> None:
        # the designated output message is exempt from the one-way check
        self.messages.append(Message(Direction.B2A, payload))


class Protocol:
    """Base protocol: immutable configuration plus a run method."""

    name: str = "abstract"
    one_way: bool = False

    def run(self, x: np.ndarray, y: np.ndarray, profile: SymmetricProfile,
            channel: Channel, tape: RandomTape) -> int:
        raise NotImplementedError

    def params(self) -> dict:
        return {}


@dataclass(frozen=True)
class ProtocolReport:
    protocol: str
    output: int
    truth: int
    correct: bool
    bits_a_to_b: int
    bits_b_to_a: int
    total_bits: int
    content_bits: int
    rounds: int
    params: dict = field(default_factory=dict)


def run_protocol(protocol: Protocol, pair: InputPair,
                 profile: SymmetricProfile, seed) -> tuple[int, Transcript]:
    """Execute one protocol run; deterministic given seed."""
    if pair.n != profile.n:
        raise ProfileError(f"pair length {pair.n} != profile n {profile.n}")
    x = np.array(pair.x, dtype=np.int64)
    y = np.array(pair.y, dtype=np.int64)
    tape = RandomTape(seed)
    channel = Channel(one_way=protocol.one_way)
    out = int(protocol.run(x, y, profile, channel, tape))
    channel._final_answer(str(out))
    return out, Transcript(messages=channel.messages, seed=seed)


def make_report(protocol: Protocol, output: int, truth: int,
                transcript: Transcript) -> ProtocolReport:
    return ProtocolReport(
        protocol=protocol.name, output=output, truth=truth,
        correct=output == truth,
        bits_a_to_b=transcript.bits_a_to_b, bits_b_to_a=transcript.bits_b_to_a,
        total_bits=transcript.total_bits, content_bits=transcript.content_bits,
        rounds=transcript.rounds, params=protocol.params())


def sweep(protocol_factory, family: str, n_list, trials: int, seed,
          weights=None) -> list[dict]:
    """Per-(n, weight) Monte-Carlo statistics rows for the CSV writer."""
    from .oracle import mc_error_estimate
    from .symfun import gap_params, parse_profile

    rows = []
    for n in n_list:
        profile = parse_profile(family, n)
        gp = gap_params(profile)
        protocol = protocol_factory(profile, n)
        ws = list(weights) if weights is not None else list(range(n + 1))
        for m in sorted(ws):
            res = mc_error_estimate(protocol, profile, m, trials, (seed, n, m))
            rows.append({
                "n": n, "family": family,
                "r0": gp.r0, "r1": gp.r1, "r": gp.r,
                "protocol": protocol.name, "weight": m, "trials": trials,
                "success_rate": res.success_rate,
                "mean_bits": res.mean_bits, "max_bits": res.max_bits,
                "rounds_mean": res.rounds_mean,
            })
    rows.sort(key=lambda row: (row["n"], row["weight"]))
    return rows
