"""Level-count step functions, crossing structure against geometric
comparators, the layer-cake identity, half-line folding of symmetric pmfs,
and convex-order verification through hinge functions.

The level-count function F_x(t) = #{i : x_i > t} of a probability sequence
is itself a probability density on (0, inf); for a non-increasing
log-concave x and a geometric comparator z the two step functions cross
exactly twice, which is what drives the power-sum comparisons. Every
integral here is evaluated segment-analytically, never by quadrature.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .entropy import power_sum
from .errors import (
    MeanMismatchError,
    NoCrossingError,
    NotMonotoneLogConcaveError,
    NotSymmetricError,
)
from .lattice import (
    Direction,
    LatticePMF,
    LawKind,
    ParametricLaw,
    monotonicity,
    symmetry_center,
)
from .report import CheckReport, from_margin

HINGE_TOL = 1e-10
MEAN_TOL = 1e-10


@dataclass(frozen=True)
class Interval:
    """Half-open interval [lo, hi); empty when lo >= hi."""

    lo: float
    hi: float

    def __contains__(self, t: float) -> bool:
        return self.lo <= t < self.hi

    @property
    def empty(self) -> bool:
        return not (self.lo < self.hi)


@dataclass(frozen=True, eq=False)
class LevelCount:
    """The right-continuous step function F(t) = #{i : x_i > t}.

    breakpoints holds the distinct positive values in increasing order;
    counts has one more entry than breakpoints, with counts[j] the value of
    F on [breakpoints[j-1], breakpoints[j]) (breakpoint -1 read as 0), so
    counts starts at the support size and ends at 0.
    """

    breakpoints: np.ndarray
    counts: np.ndarray

    def __call__(self, t: float):
        idx = np.searchsorted(self.breakpoints, t, side="right")
        return self.counts[idx]

    def segments(self) -> list[tuple[float, float, int]]:
        """(lo, hi, count) pieces with count > 0, covering (0, max value)."""
        edges = np.concatenate(([0.0], self.breakpoints))
        return [(float(edges[j]), float(edges[j + 1]), int(self.counts[j]))
                for j in range(len(self.breakpoints)) if self.counts[j] > 0]

    def mass(self) -> float:
        """Total integral of F; equals 1 when built from a probability pmf."""
        return sum(c * (hi - lo) for lo, hi, c in self.segments())

    def mean(self) -> float:
        """Mean of the density F: integral of t F(t) dt."""
        return sum(c * (hi * hi - lo * lo) / 2.0 for lo, hi, c in self.segments())

    def hinge_expectation(self, t: float) -> float:
        """E[(U - t)+] for U distributed with density F."""
        total = 0.0
        for lo, hi, c in self.segments():
            a = max(lo - t, 0.0)
            b = max(hi - t, 0.0)
            total += c * (b * b - a * a) / 2.0
        return total

    def power(self, p: float) -> "PowerDensity":
        return PowerDensity(self, p)


@dataclass(frozen=True, eq=False)
class PowerDensity:
    """Density of U**p where U is drawn from a step density.

    Represented as the base step density plus the exponent; hinge
    expectations are integrated exactly in the base variable, each segment
    contributing a closed-form power integral.
    """

    base: LevelCount
    exponent: float

    def __post_init__(self):
        if not self.exponent > 0.0:
            raise ValueError(f"power exponent must be positive, got {self.exponent}")

    @property
    def breakpoints(self) -> np.ndarray:
        return self.base.breakpoints ** self.exponent

    def mass(self) -> float:
        return self.base.mass()

    def mean(self) -> float:
        """E[U**p] = sum over segments of c (hi**(p+1) - lo**(p+1)) / (p+1)."""
        p = self.exponent
        return sum(c * (hi ** (p + 1.0) - lo ** (p + 1.0)) / (p + 1.0)
                   for lo, hi, c in self.base.segments())

    def hinge_expectation(self, t: float) -> float:
        """E[(U**p - t)+], exact per segment."""
        p = self.exponent
        cut = t ** (1.0 / p) if t > 0.0 else 0.0
        total = 0.0
        for lo, hi, c in self.base.segments():
            m = max(lo, cut)
            if hi <= m:
                continue
            total += c * ((hi ** (p + 1.0) - m ** (p + 1.0)) / (p + 1.0)
                          - t * (hi - m))
        return total

    def power(self, q: float) -> "PowerDensity":
        return PowerDensity(self.base, self.exponent * q)


def _level_count_of(values: np.ndarray) -> LevelCount:
    vals = np.asarray(values, dtype=np.float64)
    vals = vals[vals > 0.0]
    uniq, mult = np.unique(vals, return_counts=True)
    counts = np.concatenate(([vals.size], vals.size - np.cumsum(mult)))
    return LevelCount(uniq, counts.astype(np.int64))


def level_count(x: LatticePMF) -> LevelCount:
    """Step function F_x of the pmf's positive masses."""
    return _level_count_of(x.weights)


def power_transform_density(d, p: float) -> PowerDensity:
    """Density descriptor of U**p for U drawn from d (step or power)."""
    if isinstance(d, PowerDensity):
        return d.power(p)
    return d.power(p)


# ---------------------------------------------------------------------------
# Crossing structure against geometric comparators.
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class GeometricSequence:
    """z_k = coeff * ratio**k on k = 0, 1, ...; need not sum to one."""

    coeff: float
    ratio: float

    def __post_init__(self):
        if not self.coeff > 0.0:
            raise ValueError(f"coeff must be positive, got {self.coeff}")
        if not (0.0 < self.ratio < 1.0):
            raise ValueError(f"ratio must lie in (0, 1), got {self.ratio}")

    def value(self, k):
        return self.coeff * self.ratio ** np.asarray(k, dtype=np.float64)

    def level_count(self, t: float) -> int:
        """#{k >= 0 : z_k > t}, exact with respect to the float values z_k."""
        if t >= self.coeff:
            return 0
        if t <= 0.0:
            raise ValueError("level counts of a geometric sequence are "
                             "infinite at non-positive thresholds")
        # candidate from logs, then settle boundary rounding by direct scan
        m = max(0, int(math.floor(math.log(t / self.coeff) / math.log(self.ratio))) - 2)
        while self.value(m) > t:
            m += 1
        while m > 0 and self.value(m - 1) <= t:
            m -= 1
        return m

    @classmethod
    def from_law(cls, law: ParametricLaw) -> "GeometricSequence":
        if law.kind is not LawKind.GEOMETRIC:
            raise ValueError("comparator must be a geometric law")
        return cls(1.0 - law.lam, law.lam)


@dataclass(frozen=True)
class CrossingResult:
    """Crossing set [a, b] of {k : x_k >= z_k} and the interval I = [z_b, x_a).

    Indices are relative to the start of the pmf's stored support.
    b_at_horizon marks the crossing set reaching the final stored index, the
    truncated stand-in for an unbounded crossing set, in which case z_b is
    the comparator value at the horizon.
    """

    first_index: int
    last_index: int
    interval: Interval
    b_at_horizon: bool


def _require_decreasing(x: LatticePMF) -> None:
    if monotonicity(x) not in (Direction.DECREASING, Direction.BOTH):
        raise NotMonotoneLogConcaveError("crossing requires a non-increasing pmf")


def crossing_interval(x: LatticePMF, z: GeometricSequence) -> CrossingResult:
    """Locate the threshold interval on which F_z sits below F_x.

    With a = min{k : x_k >= z_k} and b = max{k : x_k >= z_k} (k counted from
    the start of x's support), the interval is I = [z_b, x_a); F_z <= F_x on
    I and F_z >= F_x off I. The two-crossing guarantee presumes x is
    log-concave as well as non-increasing; only monotonicity is enforced
    here. Raises NoCrossingError when the comparator dominates x everywhere.
    """
    _require_decreasing(x)
    w = x.weights
    zv = z.value(np.arange(len(w)))
    above = np.flatnonzero(w >= zv)
    if above.size == 0:
        raise NoCrossingError("x is everywhere below the comparator")
    a, b = int(above[0]), int(above[-1])
    interval = Interval(float(zv[b]), float(w[a]))
    return CrossingResult(a, b, interval, b == len(w) - 1)


def crossing_verify(x: LatticePMF, z: GeometricSequence,
                    n_samples: int = 0) -> CheckReport:
    """Confirm the two-crossing sign pattern of F_z against F_x.

    Evaluates both step functions at every breakpoint of either function
    (comparator values down to below the interval's lower edge), at the
    midpoints between consecutive levels, and at n_samples extra log-spaced
    thresholds. The margin is the worst signed slack in level counts; a
    failure indicates a library defect rather than a mathematical one.
    """
    result = crossing_interval(x, z)
    interval = result.interval
    w = x.weights
    f_x = level_count(x)

    lowest = max(min(float(w[w > 0].min()), interval.lo) / 4.0, 1e-300)
    ks = np.arange(0, max(len(w) + 8, result.last_index + 8))
    zv = z.value(ks)
    points = np.concatenate((f_x.breakpoints, zv[zv >= lowest],
                             [interval.lo, interval.hi]))
    points = np.unique(points[points > 0.0])
    mids = (points[:-1] + points[1:]) / 2.0
    ts = np.unique(np.concatenate((points, mids)))
    if n_samples > 0:
        extra = np.geomspace(ts[0], ts[-1], n_samples)
        ts = np.unique(np.concatenate((ts, extra)))

    worst = math.inf
    worst_t = math.nan
    worst_counts = (0, 0)
    ok = True
    for t in ts:
        fz = z.level_count(float(t))
        fx = int(f_x(float(t)))
        slack = (fx - fz) if t in interval else (fz - fx)
        if slack < worst:
            worst, worst_t, worst_counts = slack, float(t), (fz, fx)
        if slack < 0:
            ok = False
    params = {"a": result.first_index, "b": result.last_index,
              "interval_lo": interval.lo, "interval_hi": interval.hi,
              "thresholds": int(ts.size), "worst_t": worst_t}
    return CheckReport("crossing_pattern", float(worst_counts[0]),
                       float(worst_counts[1]), float(worst),
                       "pass" if ok else "fail", params)


# ---------------------------------------------------------------------------
# Layer cake, symmetric folding, convex order.
# ---------------------------------------------------------------------------

def cake_layer_check(x: LatticePMF, t: float) -> CheckReport:
    """Layer-cake identity: sum_i x_i**t = t * int_0^inf s**(t-1) F_x(s) ds.

    The right side is summed in closed form over the step segments, so the
    reported margin is pure rounding. Requires t >= 1.
    """
    if not t >= 1.0:
        raise ValueError(f"layer-cake check requires t >= 1, got {t}")
    lhs = power_sum(x, t)
    rhs = sum(c * (hi**t - lo**t) for lo, hi, c in level_count(x).segments())
    err = abs(lhs - rhs)
    tol = 1e-12 * max(1.0, lhs)
    return from_margin("cake_layer", lhs, rhs, tol - err, 0.0,
                       {"t": t, "abs_error": err})


@dataclass(frozen=True, eq=False)
class SymmetricFold:
    """F of a symmetric pmf and of its half-line restriction.

    For x symmetric about an integer, folding to x* = (x_i)_{i >= center}
    halves every level pair except the center atom, so
    F_x(t) = 2 F_{x*}(t) - 1 holds for every t below the center mass.
    """

    full: LevelCount
    half: LevelCount
    center_mass: float
    max_violation: int


def fold_symmetric(x: LatticePMF) -> SymmetricFold:
    """Fold an integer-symmetric pmf onto the half line and verify the
    identity relating the two level counts below the central mass."""
    center = symmetry_center(x)
    if center is None or center != int(center):
        raise NotSymmetricError("requires a pmf symmetric about an integer")
    center_idx = int(center) - x.offset
    center_mass = float(x.weights[center_idx])
    full = level_count(x)
    half = _level_count_of(x.weights[center_idx:])

    points = np.concatenate((full.breakpoints, half.breakpoints))
    points = np.unique(points[points > 0.0])
    mids = (points[:-1] + points[1:]) / 2.0
    ts = np.concatenate((points, mids, [min(center_mass, points[0]) / 2.0]))
    worst = 0
    for t in ts:
        if t >= center_mass:
            continue
        gap = abs(int(full(float(t))) - (2 * int(half(float(t))) - 1))
        worst = max(worst, gap)
    return SymmetricFold(full, half, center_mass, worst)


def _default_hinge_grid(u, v) -> np.ndarray:
    points = np.concatenate((np.asarray(u.breakpoints, dtype=np.float64),
                             np.asarray(v.breakpoints, dtype=np.float64)))
    points = np.unique(points[points >= 0.0])
    mids = (points[:-1] + points[1:]) / 2.0 if points.size > 1 else np.empty(0)
    return np.unique(np.concatenate(([0.0], points, mids)))


def convex_order_check(u_density, v_density, hinge_grid=None,
                       mean_tol: float = MEAN_TOL,
                       hinge_tol: float = HINGE_TOL) -> CheckReport:
    """Hinge-function certificate that v_density majorizes u_density.

    Both arguments are step or power densities with equal means (within
    mean_tol, else MeanMismatchError). The verdict is pass iff
    E[(V - t)+] >= E[(U - t)+] - hinge_tol at every hinge point t; by the
    hinge characterization of the convex order (dominance at the kinks plus
    convexity between them) this certifies E[w(V)] >= E[w(U)] for convex w.
    The default grid is the union of both breakpoint sets, the midpoints of
    consecutive points, and zero.
    """
    mu_u, mu_v = u_density.mean(), v_density.mean()
    if abs(mu_u - mu_v) > mean_tol * max(1.0, abs(mu_u)):
        raise MeanMismatchError(
            f"means differ: {mu_u} vs {mu_v} (tolerance {mean_tol})")
    ts = (np.asarray(hinge_grid, dtype=np.float64) if hinge_grid is not None
          else _default_hinge_grid(u_density, v_density))
    worst = math.inf
    worst_t = math.nan
    worst_pair = (math.nan, math.nan)
    for t in ts:
        ev = v_density.hinge_expectation(float(t))
        eu = u_density.hinge_expectation(float(t))
        if ev - eu < worst:
            worst, worst_t, worst_pair = ev - eu, float(t), (ev, eu)
    return from_margin("convex_order", worst_pair[0], worst_pair[1], worst,
                       hinge_tol, {"hinges": int(ts.size), "worst_t": worst_t,
                                   "mean": mu_u})
