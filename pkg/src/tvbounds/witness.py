"""Constructors for the extremal distribution pairs behind the 1-D bounds.

Each constructor returns a :class:`WitnessPair` whose claimed TV value and
declared moments have been re-verified on the actual atoms before the pair
is handed back; a pair that fails its own round-trip raises
:class:`~tvbounds.errors.WitnessConstructionError` instead of being
returned.  The families covered are the bound-attaining two/three-atom
pairs, the unique pair on a shared two-point support, the anchored
three-point family (one side keeps an exclusive atom), and the sequence
with equal means whose TV marches down to the unattained infimum 0.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .discrete import DiscreteDist, check_moments, tv_distance
from .errors import (
    BadParameterError,
    DegenerateVarianceError,
    GapZeroError,
    WitnessConstructionError,
)
from .moments import (
    MomentPair1D,
    Moments1D,
    anchored_tv,
    gap,
    radical_v,
    tv_lower_bound_1d,
    two_point_tv,
)

__all__ = [
    "WitnessKind",
    "WitnessPair",
    "construct_tight_witness",
    "construct_two_point",
    "construct_anchored_witness",
    "construct_vanishing_sequence",
]

#: Absolute agreement required between the claimed TV and the recomputed one.
TV_MATCH_TOL = 1e-12
#: Relative agreement required between declared and recomputed moments.
MOMENT_MATCH_TOL = 1e-9


class WitnessKind(enum.Enum):
    """Which construction produced a witness pair."""

    THREE_POINT = "three_point"
    TWO_POINT_Q_DEGENERATE = "two_point_q_degenerate"
    TWO_POINT_P_DEGENERATE = "two_point_p_degenerate"
    BOTH_POINT_MASSES = "both_point_masses"
    TWO_POINT_SHARED = "two_point_shared"
    ANCHORED_THREE_POINT = "anchored_three_point"
    VANISHING_SEQUENCE = "vanishing_sequence"


@dataclass(frozen=True)
class WitnessPair:
    """Two distributions on a shared support with a verified TV value."""

    p_dist: DiscreteDist
    q_dist: DiscreteDist
    claimed_tv: float
    kind: WitnessKind

    def __post_init__(self) -> None:
        if not 0.0 <= self.claimed_tv <= 1.0:
            raise WitnessConstructionError(
                f"claimed TV {self.claimed_tv!r} is outside [0, 1]"
            )
        actual = tv_distance(self.p_dist, self.q_dist)
        if abs(actual - self.claimed_tv) > TV_MATCH_TOL:
            raise WitnessConstructionError(
                f"claimed TV {self.claimed_tv!r} but the atoms give {actual!r}"
            )

    def to_json_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "p": self.p_dist.to_json_dict(),
            "q": self.q_dist.to_json_dict(),
            "tv": self.claimed_tv,
        }


def _clamp_unit(p: float) -> float:
    # tolerate sub-ulp excursions of the closed forms outside [0, 1]
    if -1e-12 <= p < 0.0:
        return 0.0
    if 1.0 < p <= 1.0 + 1e-12:
        return 1.0
    return p


def _stable_mass(signed: float, v: float, scale: float) -> tuple[float, float]:
    """(m, 1 - m) for m = 1/2 + signed/(2v), both at full relative accuracy.

    Uses ``(v - signed)(v + signed) = 4 scale^2`` to express the small one
    of the two as a product instead of a cancelling difference.
    """
    if signed >= 0.0:
        m = _clamp_unit(0.5 + signed / (2.0 * v))
        complement = _clamp_unit(2.0 * scale * scale / (v * (v + signed)))
    else:
        m = _clamp_unit(2.0 * scale * scale / (v * (v - signed)))
        complement = _clamp_unit(0.5 - signed / (2.0 * v))
    return m, complement


def _checked(
    kind: WitnessKind,
    p_atoms: list[tuple[float, float]],
    q_atoms: list[tuple[float, float]],
    claimed_tv: float,
    p_target: Moments1D,
    q_target: Moments1D,
) -> WitnessPair:
    p_dist = DiscreteDist(
        tuple(x for x, _ in p_atoms), tuple(_clamp_unit(w) for _, w in p_atoms)
    )
    q_dist = DiscreteDist(
        tuple(x for x, _ in q_atoms), tuple(_clamp_unit(w) for _, w in q_atoms)
    )
    for dist, target, label in ((p_dist, p_target, "p"), (q_dist, q_target, "q")):
        if not check_moments(dist, target, MOMENT_MATCH_TOL):
            got = dist.moments()
            raise WitnessConstructionError(
                f"{kind.value} witness: {label} side moments "
                f"(mean {got.mean!r}, variance {got.variance!r}) do not match "
                f"the target (mean {target.mean!r}, variance {target.variance!r})"
            )
    return WitnessPair(p_dist, q_dist, claimed_tv, kind)


def construct_tight_witness(pair: MomentPair1D) -> WitnessPair:
    """Pair of two- or three-atom distributions attaining the tight bound.

    With both standard deviations positive the pair lives on three shared
    points, the two measures agreeing on one of them and holding exclusive
    mass ``p`` (the bound value) on the other two.  A vanishing standard
    deviation collapses the corresponding side to a point mass anchoring a
    two-point pair, and with both zero the pair is two distinct point
    masses with TV 1.

    Raises
    ------
    GapZeroError
        If the means agree; the infimum 0 has no minimizer then and the
        vanishing sequence is the right object.
    """
    a = gap(pair)
    if a == 0.0:
        raise GapZeroError(
            "the tight bound has no minimizer for equal means; "
            "use construct_vanishing_sequence"
        )
    mp, sp = pair.p_side.mean, pair.p_side.stddev
    mq, sq = pair.q_side.mean, pair.q_side.stddev
    p = tv_lower_bound_1d(pair)
    if sp > 0.0 and sq > 0.0:
        # one shared formula for both signs of the gap
        s = math.copysign(1.0, a)
        t = abs(a) / (sp + sq)
        x1 = mp - s * sp * t
        x2 = mp + s * sp / t
        x3 = mq - s * sq / t
        return _checked(
            WitnessKind.THREE_POINT,
            [(x1, 1.0 - p), (x2, p), (x3, 0.0)],
            [(x1, 1.0 - p), (x2, 0.0), (x3, p)],
            p,
            pair.p_side,
            pair.q_side,
        )
    if sp > 0.0:
        # q side is a point mass; the second p atom is pinned by the moments
        x2 = mq + a / p
        return _checked(
            WitnessKind.TWO_POINT_Q_DEGENERATE,
            [(mq, 1.0 - p), (x2, p)],
            [(mq, 1.0), (x2, 0.0)],
            p,
            pair.p_side,
            pair.q_side,
        )
    if sq > 0.0:
        y = mp - a / p
        return _checked(
            WitnessKind.TWO_POINT_P_DEGENERATE,
            [(mp, 1.0), (y, 0.0)],
            [(mp, 1.0 - p), (y, p)],
            p,
            pair.p_side,
            pair.q_side,
        )
    return _checked(
        WitnessKind.BOTH_POINT_MASSES,
        [(mp, 1.0), (mq, 0.0)],
        [(mp, 0.0), (mq, 1.0)],
        p,
        pair.p_side,
        pair.q_side,
    )


def construct_two_point(pair: MomentPair1D) -> WitnessPair:
    """The unique pair supported on a common two-point set.

    Its TV is ``a^2 / v`` (see :func:`tvbounds.moments.two_point_tv`).  The
    canonical labeling puts the larger support point first; the relabeled
    twin describes the same pair and is not exposed.  When the first side is
    a point mass the generic formulas degenerate, so the construction runs
    with the sides switched and swaps the result back; with both sides
    point masses the pair is written down directly.
    """
    a = gap(pair)
    if a == 0.0:
        raise GapZeroError("no two-point pair exists for equal means")
    mp, sp = pair.p_side.mean, pair.p_side.stddev
    mq, sq = pair.q_side.mean, pair.q_side.stddev
    claimed = two_point_tv(pair)
    if sp == 0.0 and sq == 0.0:
        return _checked(
            WitnessKind.TWO_POINT_SHARED,
            [(mp, 1.0), (mq, 0.0)],
            [(mp, 0.0), (mq, 1.0)],
            claimed,
            pair.p_side,
            pair.q_side,
        )
    if sp == 0.0:
        mirrored = construct_two_point(pair.swapped())
        return WitnessPair(
            mirrored.q_dist, mirrored.p_dist, claimed, WitnessKind.TWO_POINT_SHARED
        )
    if sq == 0.0:
        # the pair pins the second side at its mean; built directly because
        # the generic mass formula cancels catastrophically in this limit
        p = claimed  # equals a^2 / (sp^2 + a^2) here
        x2 = mq + a / p
        return _checked(
            WitnessKind.TWO_POINT_SHARED,
            [(mq, 1.0 - p), (x2, p)],
            [(mq, 1.0), (x2, 0.0)],
            claimed,
            pair.p_side,
            pair.q_side,
        )
    v = radical_v(pair)
    s = math.copysign(1.0, a)
    # p = 1/2 + s (sp^2 - sq^2 - a^2) / (2v) and q = p + a|a|/v; whichever of
    # each mass and its complement is small is computed by the equivalent
    # product form (v^2 minus the squared numerator factors through 4 a^2
    # times the matching variance) to keep its relative error at machine level
    p, one_minus_p = _stable_mass(s * (sp * sp - sq * sq - a * a), v, a * sp)
    q, one_minus_q = _stable_mass(s * (sp * sp - sq * sq + a * a), v, a * sq)
    if p <= 0.0 or one_minus_p <= 0.0:
        raise WitnessConstructionError(
            f"two-point mass parameter {p!r} leaves no room for a second atom"
        )
    x1 = mp + sp * math.sqrt(p / one_minus_p)
    x2 = mp - sp * math.sqrt(one_minus_p / p)
    return _checked(
        WitnessKind.TWO_POINT_SHARED,
        [(x1, one_minus_p), (x2, p)],
        [(x1, one_minus_q), (x2, q)],
        claimed,
        pair.p_side,
        pair.q_side,
    )


def construct_anchored_witness(pair: MomentPair1D, q_param: float = 0.5) -> WitnessPair:
    """Three-point pair in which the first measure keeps an exclusive atom.

    The second measure spreads over two points carrying mass ``q_param``
    and ``1 - q_param``; the family is genuinely one-parameter, and the
    default ``q_param = 1/2`` picks the symmetric representative.  The TV
    equals the p-anchored stationary value ``2 a^2 / (v + vp - vq + a^2)``
    exactly, for every admissible ``q_param``.

    Raises
    ------
    GapZeroError
        If the means agree.
    DegenerateVarianceError
        If either standard deviation is zero.
    BadParameterError
        If ``q_param`` is not strictly inside (0, 1).
    """
    a = gap(pair)
    if a == 0.0:
        raise GapZeroError("anchored witnesses are undefined for equal means")
    mp, sp = pair.p_side.mean, pair.p_side.stddev
    mq, sq = pair.q_side.mean, pair.q_side.stddev
    if sp == 0.0 or sq == 0.0:
        raise DegenerateVarianceError(
            "anchored witnesses need positive stddev on both sides"
        )
    q_param = float(q_param)
    if not 0.0 < q_param < 1.0:
        raise BadParameterError(f"q_param must be in (0, 1), got {q_param}")
    p = anchored_tv(pair, "p")
    x3 = (a + p * mq) / p
    x1 = mq + sq * math.sqrt(q_param / (1.0 - q_param))
    x2 = mq - sq * math.sqrt((1.0 - q_param) / q_param)
    return _checked(
        WitnessKind.ANCHORED_THREE_POINT,
        [(x1, (1.0 - p) * (1.0 - q_param)), (x2, (1.0 - p) * q_param), (x3, p)],
        [(x1, 1.0 - q_param), (x2, q_param), (x3, 0.0)],
        p,
        pair.p_side,
        pair.q_side,
    )


def construct_vanishing_sequence(
    m: float, sigma_p: float, sigma_q: float, k: int
) -> WitnessPair:
    """Element ``k`` of the equal-means family whose TV is exactly ``1/k``.

    The side with the larger standard deviation puts mass ``1/(2k)`` on a
    pair of far-out points chosen so its variance still matches, and
    ``1/2 - 1/(2k)`` on the two near points the other side uses with mass
    ``1/2`` each.  With equal standard deviations the two sides are the
    same two-point distribution and the TV is 0.

    Raises
    ------
    BadParameterError
        If ``k`` is not an integer >= 2.
    """
    if not isinstance(k, int) or isinstance(k, bool) or k < 2:
        raise BadParameterError(f"k must be an integer >= 2, got {k!r}")
    m = float(m)
    sigma_p = float(sigma_p)
    sigma_q = float(sigma_q)
    if not (math.isfinite(m) and math.isfinite(sigma_p) and math.isfinite(sigma_q)):
        raise ValueError("m, sigma_p and sigma_q must be finite")
    if sigma_p < 0.0 or sigma_q < 0.0:
        raise ValueError("standard deviations must be non-negative")
    if sigma_p == sigma_q:
        base = DiscreteDist((m - sigma_p, m + sigma_p), (0.5, 0.5))
        return WitnessPair(base, base, 0.0, WitnessKind.VANISHING_SEQUENCE)
    s_big, s_small = (
        (sigma_p, sigma_q) if sigma_p > sigma_q else (sigma_q, sigma_p)
    )
    outer = 0.5 / k
    inner = 0.5 - outer
    x_far = math.sqrt((s_big * s_big - s_small * s_small) * k + s_small * s_small)
    wide = DiscreteDist(
        (m - x_far, m - s_small, m + s_small, m + x_far),
        (outer, inner, inner, outer),
    )
    narrow = DiscreteDist((m - s_small, m + s_small), (0.5, 0.5))
    claimed = 1.0 / k
    if sigma_p > sigma_q:
        p_dist, q_dist = wide, narrow
    else:
        p_dist, q_dist = narrow, wide
    for dist, target, label in (
        (p_dist, Moments1D(m, sigma_p), "p"),
        (q_dist, Moments1D(m, sigma_q), "q"),
    ):
        if not check_moments(dist, target, MOMENT_MATCH_TOL):
            raise WitnessConstructionError(
                f"vanishing-sequence element: {label} side moments drifted "
                f"from the target at k={k}"
            )
    return WitnessPair(p_dist, q_dist, claimed, WitnessKind.VANISHING_SEQUENCE)
