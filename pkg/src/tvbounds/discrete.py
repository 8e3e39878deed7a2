"""Finite discrete distributions on the real line.

The :class:`DiscreteDist` value type is the common carrier for extremal
witnesses and LP solutions.  Moment and TV arithmetic on it is exact up to
compensated summation (``math.fsum``), which keeps the advertised round-trip
tolerances reachable even on supports spanning several orders of magnitude.
All values are immutable after construction and every operation is pure.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .moments import Moments1D

__all__ = ["DiscreteDist", "MomentSummary", "tv_distance", "check_moments"]

#: Relative scale of the tolerance used to identify nearby support points.
SUPPORT_MERGE_REL = 1e-12
#: How far the probabilities may sum from 1.
PROB_SUM_TOL = 1e-12


def _merge_tol(points) -> float:
    return SUPPORT_MERGE_REL * (1.0 + max(abs(x) for x in points))


@dataclass(frozen=True)
class MomentSummary:
    """Mean, raw second moment and variance of a discrete distribution."""

    mean: float
    second_moment: float
    variance: float


@dataclass(frozen=True)
class DiscreteDist:
    """A probability distribution with finitely many atoms on the real line.

    Construction sorts the atoms, merges support points closer than
    ``SUPPORT_MERGE_REL * (1 + max |x|)`` by summing their probabilities,
    and validates that probabilities are non-negative and sum to 1 within
    ``PROB_SUM_TOL``.  Atoms with probability exactly 0 are kept if supplied
    (witness pairs use them to make a shared support explicit); ``compact``
    strips them on demand.
    """

    support: tuple[float, ...]
    probs: tuple[float, ...]

    def __post_init__(self) -> None:
        support = [float(x) for x in self.support]
        probs = [float(p) for p in self.probs]
        if len(support) != len(probs):
            raise ValueError(
                f"support has {len(support)} points but probs has {len(probs)}"
            )
        if not support:
            raise ValueError("a distribution needs at least one atom")
        for x in support:
            if not math.isfinite(x):
                raise ValueError(f"support point {x!r} is not finite")
        for p in probs:
            if not math.isfinite(p) or p < 0.0:
                raise ValueError(f"probability {p!r} is not finite and non-negative")

        order = sorted(range(len(support)), key=support.__getitem__)
        tol = _merge_tol(support)
        merged_x: list[float] = []
        merged_p: list[float] = []
        for idx in order:
            x = support[idx]
            if merged_x and x - merged_x[-1] <= tol:
                merged_p[-1] += probs[idx]
            else:
                merged_x.append(x)
                merged_p.append(probs[idx])
        total = math.fsum(merged_p)
        if abs(total - 1.0) > PROB_SUM_TOL:
            raise ValueError(f"probabilities sum to {total!r}, not 1")
        object.__setattr__(self, "support", tuple(merged_x))
        object.__setattr__(self, "probs", tuple(merged_p))

    @classmethod
    def delta(cls, x: float) -> "DiscreteDist":
        """Point mass at ``x``."""
        return cls((x,), (1.0,))

    def __len__(self) -> int:
        return len(self.support)

    def moments(self) -> MomentSummary:
        """Exact first two moments via compensated summation.

        The variance is the raw second moment minus the squared mean,
        clamped at 0 when rounding pushes it negative.
        """
        mean = math.fsum(p * x for x, p in zip(self.support, self.probs))
        second = math.fsum(p * x * x for x, p in zip(self.support, self.probs))
        variance = second - mean * mean
        if variance < 0.0:
            variance = 0.0
        return MomentSummary(mean, second, variance)

    def compact(self) -> "DiscreteDist":
        """Copy with zero-probability atoms removed."""
        kept = [(x, p) for x, p in zip(self.support, self.probs) if p != 0.0]
        return DiscreteDist(tuple(x for x, _ in kept), tuple(p for _, p in kept))

    def to_json_dict(self) -> dict:
        return {"support": list(self.support), "probs": list(self.probs)}

    @classmethod
    def from_json_dict(cls, payload: dict) -> "DiscreteDist":
        return cls(tuple(payload["support"]), tuple(payload["probs"]))

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict())

    @classmethod
    def from_json(cls, text: str) -> "DiscreteDist":
        return cls.from_json_dict(json.loads(text))


def tv_distance(p: DiscreteDist, q: DiscreteDist) -> float:
    """Total variation distance between two finite discrete distributions.

    The two supports are merged, identifying points within the same relative
    tolerance the constructor uses, and the result is half the L1 distance
    between the aligned probability vectors.  Always in [0, 1], and exactly
    0 for two identical values.
    """
    tol = SUPPORT_MERGE_REL * (
        1.0 + max(max(map(abs, p.support)), max(map(abs, q.support)))
    )
    terms: list[float] = []
    i = j = 0
    np_, nq = len(p.support), len(q.support)
    while i < np_ or j < nq:
        if j >= nq or (i < np_ and p.support[i] < q.support[j] - tol):
            terms.append(p.probs[i])
            i += 1
        elif i >= np_ or q.support[j] < p.support[i] - tol:
            terms.append(q.probs[j])
            j += 1
        else:
            terms.append(abs(p.probs[i] - q.probs[j]))
            i += 1
            j += 1
    return min(1.0, 0.5 * math.fsum(terms))


def check_moments(d: DiscreteDist, target: Moments1D, tol: float) -> bool:
    """True iff the moments of ``d`` match ``target`` to relative tolerance.

    The mean is compared within ``tol * (1 + |mean|)`` and the variance
    within ``tol * (1 + variance)``.
    """
    if tol <= 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    got = d.moments()
    return (
        abs(got.mean - target.mean) <= tol * (1.0 + abs(target.mean))
        and abs(got.variance - target.variance) <= tol * (1.0 + target.variance)
    )
