"""Exact proportional sampling of girth-restricted walks, rejection to SAWs.

Every random choice is made with exact integer weights via uniform_bignat
(rejection on fixed-width random blocks), never floating point, so the
sampled distribution is exactly proportional to the DP counts.  Identical
seed and stream id reproduce identical output bit for bit.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass

from .counting import CountTable
from .lattice import Point, Walk


class SamplingBudgetError(RuntimeError):
    """Rejection loop exhausted its attempt budget."""

    def __init__(self, attempts: int, message: str):
        super().__init__(message)
        self.attempts = attempts


class RngStream:
    """Deterministic pseudo-random bit stream with independent substreams.

    The underlying generator is seeded from SHA-256 of (seed, stream id),
    so identical (seed, stream) pairs always reproduce the same bits and
    distinct stream ids are independent for all practical purposes.
    """

    def __init__(self, seed: int, stream: int = 0):
        self.seed = int(seed)
        self.stream = int(stream)
        digest = hashlib.sha256(f"sawkit.rng:{self.seed}:{self.stream}".encode()).digest()
        self._rng = random.Random(int.from_bytes(digest, "big"))

    def substream(self, stream: int) -> "RngStream":
        return RngStream(self.seed, stream)

    def getrandbits(self, k: int) -> int:
        return self._rng.getrandbits(k)

    def uniform_int(self, bound: int) -> int:
        return uniform_bignat(self, bound)


def uniform_bignat(rng: RngStream, bound: int) -> int:
    """Exactly uniform integer in [0, bound) for arbitrary-precision bounds."""
    if bound <= 0:
        raise ValueError("bound must be >= 1")
    if bound == 1:
        return 0
    bits = bound.bit_length()
    while True:
        x = rng.getrandbits(bits)
        if x < bound:
            return x


@dataclass(frozen=True)
class SampleReport:
    """One accepted sample plus the rejection bookkeeping that produced it."""

    requested_length: int
    attempts: int
    walk: Walk

    @property
    def acceptance_rate(self) -> float:
        return 1.0 / self.attempts


def sample_low_girth_walk(table: CountTable, rng: RngStream, length: int) -> Walk:
    """One exactly-uniform girth-restricted walk of the given length."""
    if table.origin is None:
        raise ValueError("table has no origin; use sample_low_girth_walk_from")
    return sample_low_girth_walk_from(table, rng, table.origin, length)


def sample_low_girth_walk_from(table: CountTable, rng: RngStream, start: Point, length: int) -> Walk:
    total = table.count_from(start, length)
    if total == 0:
        raise ValueError(f"no girth-restricted walk of length {length} from {start}")
    pid, wid = table.start_state(start)
    moves = []
    for t in range(length, 0, -1):
        options = table.step_options(pid, wid, t)
        total = sum(c for _, _, _, c in options)
        pick = uniform_bignat(rng, total)
        acc = 0
        for move, pid2, wid2, c in options:
            acc += c
            if pick < acc:
                moves.append(move)
                pid, wid = pid2, wid2
                break
    return Walk(Point(*start), "".join(moves))


def sample_saw(
    table: CountTable, rng: RngStream, length: int, max_attempts: int = 1000
) -> SampleReport:
    """Uniform self-avoiding walk via rejection of girth-restricted walks.

    Rejection preserves uniformity on the self-avoiding subset.  Raises
    SamplingBudgetError after max_attempts rejections, which signals
    parameters outside the regime where acceptance is bounded away from 0.
    """
    for attempt in range(1, max_attempts + 1):
        walk = sample_low_girth_walk(table, rng, length)
        if walk.is_self_avoiding():
            return SampleReport(length, attempt, walk)
    raise SamplingBudgetError(
        max_attempts,
        f"no self-avoiding walk accepted in {max_attempts} attempts (length {length})",
    )


def sample_saw_batch(
    table: CountTable,
    rng: RngStream,
    length: int,
    count: int,
    max_attempts: int = 1000,
) -> tuple[list[Walk], int]:
    """`count` uniform SAWs and the total number of proposal draws used."""
    walks = []
    attempts = 0
    for _ in range(count):
        report = sample_saw(table, rng, length, max_attempts)
        attempts += report.attempts
        walks.append(report.walk)
    return walks, attempts


@dataclass(frozen=True)
class FamilyEntry:
    """One (start, target, length) cell of an indexed table family."""

    label: object
    table: CountTable
    start: Point
    length: int
    count: int


def make_family(entries) -> list[FamilyEntry]:
    """Materialize (label, table, start, length) tuples with their exact counts."""
    out = []
    for label, table, start, length in entries:
        c = table.count_from(start, length)
        if c:
            out.append(FamilyEntry(label, table, Point(*start), length, c))
    return out


def sample_length_then_walk(family: list[FamilyEntry], rng: RngStream) -> tuple[FamilyEntry, Walk]:
    """Draw a family cell proportional to its exact count, then a walk in it.

    The joint distribution is uniform over the disjoint union of all walks
    covered by the family.
    """
    total = sum(e.count for e in family)
    if total == 0:
        raise ValueError("all counts in the family are zero")
    pick = uniform_bignat(rng, total)
    acc = 0
    for entry in family:
        acc += entry.count
        if pick < acc:
            walk = sample_low_girth_walk_from(entry.table, rng, entry.start, entry.length)
            return entry, walk
    raise AssertionError("unreachable: cumulative weights exhausted")
