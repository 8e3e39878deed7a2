"""Grid LP verification of the one-dimensional bound, plus a randomized
check of the d-dimensional trace bound.

``minimize_tv_on_grid`` minimizes the TV distance over all pairs of
distributions supported on a finite grid subject to exact mean and raw
second-moment equality on both sides.  Its optimum is an upper bound on the
true infimum over all distributions; when the support of the tight witness
is folded into the grid the optimum collapses onto the closed-form bound,
which is what the ``verify`` path certifies.  The moment constraints are
genuine equalities, not bands, so "optimum equals bound" is a sharp test.

The d-dimensional routine never solves an LP: it draws random discrete
pairs, computes their exact moments and exact TV, and counts violations of
the trace bound evaluated at those computed moments.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .discrete import DiscreteDist, check_moments
from .errors import BadParameterError
from .moments import (
    MomentPair1D,
    MomentPairND,
    Moments1D,
    MomentsND,
    gap,
    tv_lower_bound_nd,
)
from .simplex import SimplexResult, solve_dense
from .witness import construct_tight_witness

__all__ = [
    "GridSpec",
    "LPStandardForm",
    "OracleStatus",
    "OracleResult",
    "build_grid",
    "formulate",
    "solve",
    "minimize_tv_on_grid",
    "check_nd_bound_random",
]

#: Relative scale of the grid deduplication tolerance.
GRID_DEDUP_REL = 1e-12
#: Moment tolerance the extracted optimizers must certify.
ORACLE_MOMENT_TOL = 1e-7
#: Violation slack for the randomized d-dimensional check.
ND_CHECK_TOL = 1e-10


@dataclass(frozen=True)
class GridSpec:
    """A uniform grid on [lo, hi] with optional extra points merged in."""

    lo: float
    hi: float
    count: int
    extra_points: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        lo = float(self.lo)
        hi = float(self.hi)
        if not (np.isfinite(lo) and np.isfinite(hi)) or not lo < hi:
            raise ValueError(f"need finite lo < hi, got lo={lo!r}, hi={hi!r}")
        if int(self.count) < 2:
            raise ValueError(f"count must be >= 2, got {self.count}")
        extras = tuple(float(x) for x in self.extra_points)
        if any(not np.isfinite(x) for x in extras):
            raise ValueError("extra points must be finite")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)
        object.__setattr__(self, "count", int(self.count))
        object.__setattr__(self, "extra_points", extras)

    @classmethod
    def default_for(cls, pair: MomentPair1D, count: int = 121) -> "GridSpec":
        """Grid wide enough to cover every constructed witness support:
        six standard deviations beyond the span of the two means."""
        pad = 6.0 * max(pair.p_side.stddev, pair.q_side.stddev)
        if pad == 0.0:
            pad = 1.0
        lo = min(pair.p_side.mean, pair.q_side.mean) - pad
        hi = max(pair.p_side.mean, pair.q_side.mean) + pad
        return cls(lo, hi, count)

    def with_extra(self, points) -> "GridSpec":
        return GridSpec(self.lo, self.hi, self.count, self.extra_points + tuple(points))


def build_grid(spec: GridSpec) -> np.ndarray:
    """Sorted, deduplicated union of the uniform grid and the extra points."""
    pts = np.concatenate(
        [np.linspace(spec.lo, spec.hi, spec.count), np.asarray(spec.extra_points)]
    )
    pts.sort(kind="stable")
    tol = GRID_DEDUP_REL * (1.0 + float(np.max(np.abs(pts))))
    kept = [float(pts[0])]
    for x in pts[1:]:
        if float(x) - kept[-1] > tol:
            kept.append(float(x))
    return np.array(kept)


@dataclass(frozen=True, eq=False)
class LPStandardForm:
    """``min objective . x  s.t.  constraint_matrix x = rhs, x >= 0``.

    ``grid`` carries the support the probability variables live on so that
    a solve can hand back the optimizers as distributions; it plays no role
    in the algebra.
    """

    objective: np.ndarray
    constraint_matrix: np.ndarray
    rhs: np.ndarray
    variable_names: tuple[str, ...]
    grid: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if self.constraint_matrix.shape != (self.rhs.size, self.objective.size):
            raise ValueError("inconsistent LP dimensions")
        if len(self.variable_names) != self.objective.size:
            raise ValueError("one name per variable required")


def formulate(pair: MomentPair1D, grid) -> LPStandardForm:
    """Encode grid-supported TV minimization under exact moment equality.

    Variables are the two probability vectors ``p_i``, ``q_i``, the
    deviation magnitudes ``t_i`` and one slack per linking inequality
    (``t_i >= p_i - q_i`` and ``t_i >= q_i - p_i`` rewritten as equalities).
    The objective is ``(1/2) sum t_i``; six equality rows pin total mass,
    mean and raw second moment of both sides.  Upper bounds ``p_i <= 1``
    are implied by non-negativity and the mass row.
    """
    x = np.asarray(grid, dtype=float).reshape(-1)
    n = x.size
    if n < 2:
        raise ValueError(f"grid needs at least 2 points, got {n}")
    ncols = 5 * n
    nrows = 6 + 2 * n
    A = np.zeros((nrows, ncols))
    b = np.zeros(nrows)
    P, Q, T, SP, SM = 0, n, 2 * n, 3 * n, 4 * n

    mp, vp = pair.p_side.mean, pair.p_side.variance
    mq, vq = pair.q_side.mean, pair.q_side.variance
    A[0, P : P + n] = 1.0
    A[1, P : P + n] = x
    A[2, P : P + n] = x * x
    b[0:3] = (1.0, mp, mp * mp + vp)
    A[3, Q : Q + n] = 1.0
    A[4, Q : Q + n] = x
    A[5, Q : Q + n] = x * x
    b[3:6] = (1.0, mq, mq * mq + vq)

    for i in range(n):
        r = 6 + 2 * i
        # p_i - q_i - t_i + sp_i = 0   (t_i >= p_i - q_i)
        A[r, P + i] = 1.0
        A[r, Q + i] = -1.0
        A[r, T + i] = -1.0
        A[r, SP + i] = 1.0
        # q_i - p_i - t_i + sm_i = 0   (t_i >= q_i - p_i)
        A[r + 1, P + i] = -1.0
        A[r + 1, Q + i] = 1.0
        A[r + 1, T + i] = -1.0
        A[r + 1, SM + i] = 1.0

    c = np.zeros(ncols)
    c[T : T + n] = 0.5
    names = tuple(
        f"{tag}_{i}" for tag in ("p", "q", "t", "sp", "sm") for i in range(n)
    )
    return LPStandardForm(c, A, b, names, grid=tuple(float(v) for v in x))


class OracleStatus(enum.Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    NUMERIC_FAILURE = "numeric_failure"


@dataclass(frozen=True)
class OracleResult:
    """Outcome of one grid minimization."""

    status: OracleStatus
    tv_min: float | None
    p_opt: DiscreteDist | None
    q_opt: DiscreteDist | None
    iterations: int

    def to_json_dict(self) -> dict:
        return {
            "status": self.status.value,
            "tv_min": self.tv_min,
            "iterations": self.iterations,
            "p_opt": None if self.p_opt is None else self.p_opt.to_json_dict(),
            "q_opt": None if self.q_opt is None else self.q_opt.to_json_dict(),
        }


def _extract_dist(raw: np.ndarray, grid: tuple[float, ...]) -> DiscreteDist | None:
    """Turn an LP probability block into a distribution, or None if the
    block is too corrupted to certify."""
    if float(raw.min(initial=0.0)) < -1e-9:
        return None
    w = np.where(raw < 0.0, 0.0, raw)
    total = float(w.sum())
    if abs(total - 1.0) > 1e-9:
        return None
    w = w / total
    return DiscreteDist(grid, tuple(float(v) for v in w)).compact()


def solve(lp: LPStandardForm) -> OracleResult:
    """Run the simplex on ``lp`` and package the outcome.

    An optimal solve yields the minimal TV (clamped to [0, 1] against
    terminal rounding) and, when the program carries its grid, the two
    optimizing distributions with zero-probability atoms compacted.  The
    optimizers must certify their own moment constraints at
    ``ORACLE_MOMENT_TOL``; if they cannot, the result is demoted to
    ``NUMERIC_FAILURE`` rather than trusted.
    """
    res: SimplexResult = solve_dense(lp.objective, lp.constraint_matrix, lp.rhs)
    if res.status == "infeasible":
        return OracleResult(OracleStatus.INFEASIBLE, None, None, None, res.iterations)
    if res.status != "optimal":
        return OracleResult(
            OracleStatus.NUMERIC_FAILURE, None, None, None, res.iterations
        )
    tv = min(1.0, max(0.0, res.objective))
    if lp.grid is None:
        return OracleResult(OracleStatus.OPTIMAL, tv, None, None, res.iterations)
    n = len(lp.grid)
    p_opt = _extract_dist(res.x[0:n], lp.grid)
    q_opt = _extract_dist(res.x[n : 2 * n], lp.grid)
    if p_opt is None or q_opt is None:
        return OracleResult(
            OracleStatus.NUMERIC_FAILURE, None, None, None, res.iterations
        )
    # recover the moment targets from the equality rows
    mean_p, mean_q = float(lp.rhs[1]), float(lp.rhs[4])
    var_p = max(0.0, float(lp.rhs[2]) - mean_p * mean_p)
    var_q = max(0.0, float(lp.rhs[5]) - mean_q * mean_q)
    ok = check_moments(
        p_opt, Moments1D(mean_p, var_p**0.5), ORACLE_MOMENT_TOL
    ) and check_moments(q_opt, Moments1D(mean_q, var_q**0.5), ORACLE_MOMENT_TOL)
    if not ok:
        return OracleResult(
            OracleStatus.NUMERIC_FAILURE, None, None, None, res.iterations
        )
    return OracleResult(OracleStatus.OPTIMAL, tv, p_opt, q_opt, res.iterations)


def minimize_tv_on_grid(
    pair: MomentPair1D,
    spec: GridSpec | None = None,
    include_witness_points: bool = True,
) -> OracleResult:
    """Minimize TV over the grid, optionally seeding the witness support.

    With ``include_witness_points`` and distinct means, the support of the
    tight witness joins the grid, which makes the closed-form bound value
    feasible and pins the optimum exactly onto it.  On a plain grid the
    optimum can only sit at or above the bound (a coarser feasible set).
    """
    if spec is None:
        spec = GridSpec.default_for(pair)
    if include_witness_points and gap(pair) != 0.0:
        witness = construct_tight_witness(pair)
        spec = spec.with_extra(witness.p_dist.support + witness.q_dist.support)
    grid = build_grid(spec)
    return solve(formulate(pair, grid))


def check_nd_bound_random(d: int, atoms: int, trials: int, seed: int) -> int:
    """Count violations of the d-dimensional trace bound on random pairs.

    Each trial draws ``atoms`` shared points from a standard normal in
    d-space and two Dirichlet(1, ..., 1) probability vectors, computes the
    exact means, covariances and TV of the resulting pair, and evaluates
    the trace bound at those computed moments.  A correct implementation
    returns 0 for any seed; every violation beyond ``ND_CHECK_TOL`` counts.
    Fully reproducible for a fixed seed.
    """
    if not 1 <= int(d) <= 4:
        raise BadParameterError(f"d must be in [1, 4], got {d}")
    if int(atoms) < int(d) + 2:
        raise BadParameterError(f"atoms must be >= d + 2, got {atoms}")
    if int(trials) < 1:
        raise BadParameterError(f"trials must be >= 1, got {trials}")
    d, atoms, trials = int(d), int(atoms), int(trials)
    rng = np.random.default_rng(seed)
    points = rng.normal(size=(trials, atoms, d))
    pw = rng.dirichlet(np.ones(atoms), size=trials)
    qw = rng.dirichlet(np.ones(atoms), size=trials)
    violations = 0
    for t in range(trials):
        X = points[t]
        p = pw[t]
        q = qw[t]
        tv = 0.5 * float(np.abs(p - q).sum())
        mean_p = p @ X
        mean_q = q @ X
        cp = (X - mean_p).T @ ((X - mean_p) * p[:, None])
        cq = (X - mean_q).T @ ((X - mean_q) * q[:, None])
        pair = MomentPairND(MomentsND(mean_p, cp), MomentsND(mean_q, cq))
        if tv < tv_lower_bound_nd(pair) - ND_CHECK_TOL:
            violations += 1
    return violations
