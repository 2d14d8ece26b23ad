"""Cascaded beam-splitter test for photon bunching.

Two photons enter the first beam splitter on the same port. Each output of
that splitter feeds a second balanced splitter: side A ends on detectors
alpha/beta, side B on gamma/delta. A same-side coincidence (alpha&beta or
gamma&delta) can only happen if both photons left the first splitter on the
same side. Detectors are ideal and do not resolve photon number.

How the first splitter routes the pair is the hypothesis under test.
Second-layer routing is always an independent 50/50 choice per photon.
"""
from __future__ import annotations

import enum
import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _backend
from .rng import SplitMix64

DETECTORS = ("alpha", "beta", "gamma", "delta")
# Unordered detector pairs, in tally order.
PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
PAIR_NAMES = ("ab", "ag", "ad", "bg", "bd", "gd")
SAME_SIDE = ("ab", "gd")
CROSS = ("ag", "ad", "bg", "bd")


class RoutingHypothesis(enum.Enum):
    DETERMINISTIC_BUNCHING = 0
    INDEPENDENT_ROUTING = 1
    DETERMINISTIC_ANTIBUNCHING = 2

    @property
    def short_name(self) -> str:
        return _SHORT[self]

    @classmethod
    def from_name(cls, name: str) -> "RoutingHypothesis":
        key = name.strip().lower().replace("-", "_")
        for h, short in _SHORT.items():
            if key in (short, h.name.lower()):
                return h
        raise ValueError(f"unknown hypothesis {name!r}; valid: {', '.join(_SHORT.values())}")


_SHORT = {
    RoutingHypothesis.DETERMINISTIC_BUNCHING: "bunching",
    RoutingHypothesis.INDEPENDENT_ROUTING: "independent",
    RoutingHypothesis.DETERMINISTIC_ANTIBUNCHING: "antibunching",
}


@dataclass(frozen=True)
class DetectorOutcome:
    clicks: tuple[bool, bool, bool, bool]

    @classmethod
    def from_paths(cls, paths) -> "DetectorOutcome":
        """``paths``: iterable of ``(side, exit)`` per photon, side 0=A/1=B, exit 0/1."""
        hit = [False] * 4
        for side, exit_ in paths:
            hit[2 * side + exit_] = True
        return cls(tuple(hit))

    def coincident(self, pair: str) -> bool:
        a, b = PAIRS[PAIR_NAMES.index(pair)]
        return self.clicks[a] and self.clicks[b]

    @property
    def n_clicks(self) -> int:
        return sum(self.clicks)


@dataclass(frozen=True)
class CoincidenceTally:
    trials: int
    singles: tuple[int, int, int, int]
    pair_counts: tuple[int, int, int, int, int, int]

    def __add__(self, other: "CoincidenceTally") -> "CoincidenceTally":
        return CoincidenceTally(
            self.trials + other.trials,
            tuple(a + b for a, b in zip(self.singles, other.singles)),
            tuple(a + b for a, b in zip(self.pair_counts, other.pair_counts)),
        )

    def count(self, pair: str) -> int:
        return self.pair_counts[PAIR_NAMES.index(pair)]

    def rate(self, pair: str) -> float:
        return self.count(pair) / self.trials

    @property
    def rates(self) -> dict[str, float]:
        return {name: c / self.trials for name, c in zip(PAIR_NAMES, self.pair_counts)}

    @property
    def single_rates(self) -> dict[str, float]:
        return {name: c / self.trials for name, c in zip(DETECTORS, self.singles)}


def _route(h: RoutingHypothesis, word: int) -> DetectorOutcome:
    # Same bit layout as the compiled kernel (bits 63..60).
    s1 = (word >> 63) & 1
    if h is RoutingHypothesis.DETERMINISTIC_BUNCHING:
        s2 = s1
    elif h is RoutingHypothesis.INDEPENDENT_ROUTING:
        s2 = (word >> 62) & 1
    else:
        s2 = 1 - s1
    return DetectorOutcome.from_paths([(s1, (word >> 61) & 1), (s2, (word >> 60) & 1)])


def cascade_trial(h: RoutingHypothesis, rng: SplitMix64) -> DetectorOutcome:
    """One two-photon trial; consumes a single 64-bit word from ``rng``."""
    return _route(h, rng.next_u64())


def _tally_range(h, seed, start, stop, backend):
    singles, pairs = _backend.get(backend).cascade_counts(h.value, seed, start, stop)
    return CoincidenceTally(stop - start, tuple(int(v) for v in singles), tuple(int(v) for v in pairs))


def simulate_cascade(
    h: RoutingHypothesis,
    trials: int,
    master_seed: int,
    workers: int = 1,
    backend: str | None = None,
) -> CoincidenceTally:
    """Tally ``trials`` independent trials.

    Trial ``k`` uses output ``k`` of ``SplitMix64(master_seed)``, so the
    result equals a sequential loop of :func:`cascade_trial` and does not
    depend on ``workers``.
    """
    if int(trials) < 1:
        raise ValueError(f"trials must be >= 1, got {trials!r}")
    trials = int(trials)
    seed = int(master_seed) & ((1 << 64) - 1)
    if workers <= 1:
        return _tally_range(h, seed, 0, trials, backend)
    bounds = np.linspace(0, trials, workers + 1, dtype=np.int64)
    ranges = [(int(a), int(b)) for a, b in zip(bounds[:-1], bounds[1:]) if b > a]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        parts = list(pool.map(lambda r: _tally_range(h, seed, r[0], r[1], backend), ranges))
    total = parts[0]
    for p in parts[1:]:
        total = total + p
    return total


def expected_cascade(h: RoutingHypothesis) -> dict[str, Fraction]:
    """Exact pair-coincidence probabilities by enumerating equiprobable paths."""
    if h is RoutingHypothesis.DETERMINISTIC_BUNCHING:
        first_layer = [(0, 0), (1, 1)]
    elif h is RoutingHypothesis.INDEPENDENT_ROUTING:
        first_layer = list(itertools.product((0, 1), repeat=2))
    else:
        first_layer = [(0, 1), (1, 0)]
    paths = [
        (sides, exits)
        for sides in first_layer
        for exits in itertools.product((0, 1), repeat=2)
    ]
    weight = Fraction(1, len(paths))
    probs = {name: Fraction(0) for name in PAIR_NAMES}
    for sides, exits in paths:
        out = DetectorOutcome.from_paths(zip(sides, exits))
        for name in PAIR_NAMES:
            if out.coincident(name):
                probs[name] += weight
    return probs


def enumerate_antibunched_cases() -> list[DetectorOutcome]:
    """The eight equally likely outcomes when the first splitter separates the pair.

    Which photon goes to side A (2 ways) times the exit of each photon at
    its second splitter (2 x 2).
    """
    cases = []
    for first in (0, 1):
        sides = (first, 1 - first)
        for exits in itertools.product((0, 1), repeat=2):
            cases.append(DetectorOutcome.from_paths(zip(sides, exits)))
    return cases
