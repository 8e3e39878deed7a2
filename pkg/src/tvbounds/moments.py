"""Moment records and closed-form lower bounds on total variation distance.

Every function here is a pure function of the first two moments of a pair of
distributions.  The one-dimensional bound ``tv_lower_bound_1d`` is tight: it
is attained by explicit two- or three-atom pairs (see
:mod:`tvbounds.witness`).  The companion quantities exposed alongside it,
the two-point value, the sign-branch value and the anchored values, are the
other stationary levels of the underlying minimization and always dominate
the tight bound, which makes them useful consistency diagnostics.  The
d-dimensional bound is a trace bound and is not claimed tight for d > 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import (
    BadParameterError,
    DegenerateVarianceError,
    DimensionMismatchError,
    GapZeroError,
)

__all__ = [
    "Moments1D",
    "MomentPair1D",
    "BoundReport1D",
    "MomentsND",
    "MomentPairND",
    "SiblingBranch",
    "gap",
    "radical_v",
    "tv_lower_bound_1d",
    "two_point_tv",
    "sibling_branch_tv",
    "anchored_tv",
    "tv_lower_bound_nd",
    "bound_report",
]

#: Absolute entrywise tolerance for accepting a covariance matrix as symmetric.
COV_SYMMETRY_TOL = 1e-10
#: Relative tolerance for the smallest eigenvalue of a covariance matrix.
COV_PSD_TOL = 1e-10


def _finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class Moments1D:
    """Mean and standard deviation of a distribution on the real line."""

    mean: float
    stddev: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "mean", _finite("mean", self.mean))
        object.__setattr__(self, "stddev", _finite("stddev", self.stddev))
        if self.stddev < 0.0:
            raise ValueError(f"stddev must be non-negative, got {self.stddev}")

    @property
    def variance(self) -> float:
        return self.stddev * self.stddev


@dataclass(frozen=True)
class MomentPair1D:
    """Moment constraints for a pair of distributions on the real line."""

    p_side: Moments1D
    q_side: Moments1D

    @classmethod
    def from_scalars(
        cls, mean_p: float, sd_p: float, mean_q: float, sd_q: float
    ) -> "MomentPair1D":
        return cls(Moments1D(mean_p, sd_p), Moments1D(mean_q, sd_q))

    def swapped(self) -> "MomentPair1D":
        return MomentPair1D(self.q_side, self.p_side)


class SiblingBranch(NamedTuple):
    """Value and side-condition flag of the alternate sign branch."""

    value: float
    valid: bool


@dataclass(frozen=True)
class BoundReport1D:
    """Tight bound plus the dominating stationary diagnostics for one pair.

    ``attained`` is False exactly when the means agree but the standard
    deviations differ: the bound is then 0 as an infimum that no pair
    realizes.  Diagnostics that are undefined for the input (equal means, or
    a vanishing standard deviation on the side an anchored value needs) are
    reported as None.
    """

    gap_a: float
    radical_v: float
    tight_bound: float
    attained: bool
    two_point_tv: float | None = None
    sibling_branch_tv: float | None = None
    sibling_branch_valid: bool | None = None
    anchored_p_tv: float | None = None
    anchored_q_tv: float | None = None


def gap(pair: MomentPair1D) -> float:
    """Difference of means; the quantity all one-dimensional bounds feed on."""
    return pair.p_side.mean - pair.q_side.mean


def _scaled_quantities(pair: MomentPair1D) -> tuple[float, float, float, int]:
    """Gap and stddevs rescaled by an exact power of two, plus the shift.

    The largest magnitude lands in [0.5, 1) (subnormal inputs are lifted as
    far as the exponent range allows).  All the bound formulas are ratios of
    degree-2 forms, so the rescaling leaves them bit-identical in the normal
    floating-point range while keeping their intermediates clear of overflow
    and underflow at extreme input magnitudes.
    """
    a = pair.p_side.mean - pair.q_side.mean
    sp = pair.p_side.stddev
    sq = pair.q_side.stddev
    biggest = max(abs(a), sp, sq)
    if biggest == 0.0:
        return a, sp, sq, 0
    shift = min(1023, -math.frexp(biggest)[1])
    factor = math.ldexp(1.0, shift)
    return a * factor, sp * factor, sq * factor, shift


def _scaled_triple(pair: MomentPair1D) -> tuple[float, float, float]:
    a, sp, sq, _ = _scaled_quantities(pair)
    return a, sp, sq


def _radical_poly(a: float, sp: float, sq: float) -> float:
    # the radicand is a sum of non-negative terms, evaluated exactly as
    # written with no algebraic re-factoring: no cancellation can occur
    a2 = a * a
    vp = sp * sp
    vq = sq * sq
    return math.sqrt((vq - vp) ** 2 + 2.0 * a2 * (vp + vq) + a2 * a2)


def radical_v(pair: MomentPair1D) -> float:
    """Normalizer of the two-point TV value.

    Computes ``sqrt((vq - vp)^2 + 2 a^2 (vp + vq) + a^4)`` with ``a`` the
    mean gap and ``vp``, ``vq`` the variances.  Zero if and only if the
    means agree and the standard deviations coincide (up to the
    representable range; the value scales quadratically with the inputs).
    """
    a_s, sp_s, sq_s, shift = _scaled_quantities(pair)
    if shift == 0:
        return _radical_poly(a_s, sp_s, sq_s)
    return math.ldexp(_radical_poly(a_s, sp_s, sq_s), -2 * shift)


def tv_lower_bound_1d(pair: MomentPair1D) -> float:
    """Tight lower bound on TV(P, Q) given two means and standard deviations.

    Returns ``a^2 / ((sd_p + sd_q)^2 + a^2)`` when the means differ.  When
    they agree, the infimum over the constraint set is 0 and that value is
    returned; it is attained only if the standard deviations also agree
    (see ``BoundReport1D.attained``).
    """
    a, sp, sq = _scaled_triple(pair)
    if a == 0.0:
        return 0.0
    s = sp + sq
    return (a * a) / (s * s + a * a)


def two_point_tv(pair: MomentPair1D) -> float:
    """TV of the unique pair supported on a common two-point set.

    Equals ``a^2 / v`` and strictly dominates ``tv_lower_bound_1d`` whenever
    both standard deviations are positive; they coincide when one of them
    vanishes.

    Raises
    ------
    GapZeroError
        If the means are equal; no such pair exists then.
    """
    a, sp, sq = _scaled_triple(pair)
    if a == 0.0:
        raise GapZeroError("two-point value is undefined for equal means")
    if sp == 0.0 or sq == 0.0:
        # v collapses onto (sp + sq)^2 + a^2: the value coincides with the
        # tight bound, so evaluate it by the identical expression
        s = sp + sq
        return (a * a) / (s * s + a * a)
    v = _radical_poly(a, sp, sq)
    if v == 0.0:
        # reachable only when the squared gap underflows with equal spreads,
        # where v ~ |a| (sp + sq)
        return min(1.0, abs(a) / (sp + sq))
    # the ratio is <= 1 analytically; min() only absorbs the final rounding
    return min(1.0, (a * a) / v)


def sibling_branch_tv(pair: MomentPair1D) -> SiblingBranch:
    """Stationary value of the alternate sign branch, with its side condition.

    The value ``a^2 / ((sd_p - sd_q)^2 + a^2)`` always dominates the tight
    bound and is reported unconditionally as an ordering diagnostic.  The
    branch corresponds to an actual three-point stationary configuration
    only when the mean gap and the stddev gap have opposite signs; ``valid``
    reports that condition and is False whenever the stddevs are equal.
    """
    a, sp, sq = _scaled_triple(pair)
    if a == 0.0:
        raise GapZeroError("sign-branch value is undefined for equal means")
    ds = sp - sq
    denom = ds * ds + a * a
    # denom underflows only when ds == 0, where the ratio is identically 1
    value = 1.0 if denom == 0.0 else min(1.0, (a * a) / denom)
    valid = ds != 0.0 and (a > 0.0) != (ds > 0.0)
    return SiblingBranch(value, valid)


def anchored_tv(pair: MomentPair1D, anchor: str) -> float:
    """Stationary TV of the three-point family where one side keeps an
    exclusive atom.

    ``anchor="p"`` gives ``2 a^2 / (v + vp - vq + a^2)`` (the first measure
    holds an atom the second puts no mass on); ``anchor="q"`` is the same
    expression with the two sides switched.  Both dominate the tight bound,
    strictly so when both standard deviations are positive.

    Raises
    ------
    GapZeroError
        If the means are equal.
    DegenerateVarianceError
        If the standard deviation of the non-anchored side is zero (the
        construction needs it to spread over two atoms).
    BadParameterError
        If ``anchor`` is not ``"p"`` or ``"q"``.
    """
    a, sp, sq = _scaled_triple(pair)
    if a == 0.0:
        raise GapZeroError("anchored values are undefined for equal means")
    if anchor == "p":
        if pair.q_side.stddev == 0.0:
            raise DegenerateVarianceError(
                "p-anchored value needs a positive stddev on the q side"
            )
        own, other = sp * sp, sq * sq
    elif anchor == "q":
        if pair.p_side.stddev == 0.0:
            raise DegenerateVarianceError(
                "q-anchored value needs a positive stddev on the p side"
            )
        own, other = sq * sq, sp * sp
    else:
        raise BadParameterError(f"anchor must be 'p' or 'q', got {anchor!r}")
    if own == 0.0:
        # v collapses onto other + a^2 and the ratio is identically 1
        return 1.0
    a2 = a * a
    denom = _radical_poly(a, sp, sq) + (own - other) + a2
    if denom <= 0.0:
        # reachable only when the squared gap underflows; use the exact
        # small-gap limit of the ratio
        return min(1.0, max(0.0, 1.0 - own / other))
    return min(1.0, 2.0 * a2 / denom)


def bound_report(pair: MomentPair1D) -> BoundReport1D:
    """Evaluate the tight bound and every diagnostic defined for ``pair``."""
    a = gap(pair)
    v = radical_v(pair)
    tight = tv_lower_bound_1d(pair)
    sd_p = pair.p_side.stddev
    sd_q = pair.q_side.stddev
    attained = a != 0.0 or sd_p == sd_q
    if a == 0.0:
        return BoundReport1D(a, v, tight, attained)
    sibling = sibling_branch_tv(pair)
    return BoundReport1D(
        gap_a=a,
        radical_v=v,
        tight_bound=tight,
        attained=attained,
        two_point_tv=two_point_tv(pair),
        sibling_branch_tv=sibling.value,
        sibling_branch_valid=sibling.valid,
        anchored_p_tv=anchored_tv(pair, "p") if sd_q > 0.0 else None,
        anchored_q_tv=anchored_tv(pair, "q") if sd_p > 0.0 else None,
    )


def _readonly(array: np.ndarray) -> np.ndarray:
    out = np.array(array, dtype=float)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class MomentsND:
    """Mean vector and covariance matrix of a distribution on d-space.

    The covariance must be symmetric within ``COV_SYMMETRY_TOL`` (entrywise,
    absolute) and positive semidefinite up to a scaled eigenvalue tolerance.
    User-supplied matrices routinely carry round-off, so the symmetrized
    average with the transpose is what gets stored and tested.
    """

    mean: np.ndarray
    covariance: np.ndarray

    def __post_init__(self) -> None:
        mean = np.asarray(self.mean, dtype=float)
        if mean.ndim != 1 or mean.size < 1:
            raise ValueError("mean must be a non-empty 1-D vector")
        if not np.all(np.isfinite(mean)):
            raise ValueError("mean must be finite")
        d = mean.size
        cov = np.asarray(self.covariance, dtype=float)
        if cov.shape != (d, d):
            raise ValueError(f"covariance must have shape ({d}, {d}), got {cov.shape}")
        if not np.all(np.isfinite(cov)):
            raise ValueError("covariance must be finite")
        if float(np.max(np.abs(cov - cov.T))) > COV_SYMMETRY_TOL:
            raise ValueError(
                f"covariance is not symmetric within {COV_SYMMETRY_TOL:g}"
            )
        sym = 0.5 * (cov + cov.T)
        min_eig = float(sym[0, 0]) if d == 1 else float(np.linalg.eigvalsh(sym)[0])
        if min_eig < -COV_PSD_TOL * (1.0 + float(np.max(np.diag(sym)))):
            raise ValueError(
                f"covariance is not positive semidefinite (min eigenvalue {min_eig:g})"
            )
        object.__setattr__(self, "mean", _readonly(mean))
        object.__setattr__(self, "covariance", _readonly(sym))

    @property
    def dim(self) -> int:
        return self.mean.size

    @property
    def trace(self) -> float:
        return float(np.trace(self.covariance))


@dataclass(frozen=True, eq=False)
class MomentPairND:
    """Moment constraints for a pair of distributions on d-space."""

    p_side: MomentsND
    q_side: MomentsND

    def __post_init__(self) -> None:
        if self.p_side.dim != self.q_side.dim:
            raise DimensionMismatchError(
                f"sides have dimensions {self.p_side.dim} and {self.q_side.dim}"
            )

    @property
    def dim(self) -> int:
        return self.p_side.dim


def tv_lower_bound_nd(pair: MomentPairND) -> float:
    """Trace lower bound on TV(P, Q) for distributions on d-space.

    Returns ``|a|^2 / (2 (tr Sp + tr Sq) + |a|^2)`` where ``a`` is the
    difference of the mean vectors, and 0 when the means coincide.  For
    d = 1 this never exceeds ``tv_lower_bound_1d`` and matches it exactly
    when the standard deviations agree.
    """
    a = pair.p_side.mean - pair.q_side.mean
    a2 = float(np.dot(a, a))
    if a2 == 0.0:
        return 0.0
    # traces can only dip below zero by the PSD round-off allowance
    spread = max(0.0, 2.0 * (pair.p_side.trace + pair.q_side.trace))
    return a2 / (spread + a2)
