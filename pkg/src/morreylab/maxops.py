"""Exact pointwise evaluation of maximal-type operators on step functions.

Candidate-endpoint lemma
------------------------
Fix x and scan the average of |f| over [u, v] with u <= x <= v.  Extending
one endpoint into a cell where |f| has the constant value c changes the
average to (A + c*d) / (L + d) with A, L fixed and d the penetration depth;
its derivative in d is (c*L - A) / (L + d)^2, whose sign does not depend on
d.  The sup over each cell segment is therefore attained at a segment end,
so the global supremum is attained with both endpoints in
{breakpoints of f} union {x}.  Enumerating those pairs evaluates Mf(x)
exactly; intervals reaching past the support hull only lengthen without
adding mass, so they never win.

The same scan for the fractional variant |Q|^(a-1) * int_Q |f| gives the
derivative sign (a-1)(A + c*d) + c(L + d), which is nondecreasing in d
(a, c >= 0), so any interior critical point is a minimum along the scan
direction and endpoint enumeration is again exact.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .stepfn import (
    EnvelopePair,
    Interval,
    StepFunction,
    combine,
    integrate,
    prefix_at,
)

__all__ = [
    "RefinePolicy",
    "RadialProfile",
    "maximal",
    "fractional_maximal",
    "maximal_commutator",
    "commutator",
    "brute_force_maximal",
    "maximal_envelope",
    "iterated_maximal",
    "commutator_envelope",
    "hardy",
    "default_hull",
]


@dataclass(frozen=True)
class RefinePolicy:
    """Adaptive bisection policy for envelope construction.

    Cells are split until (upper - lower) <= tol * upper or the per-cell
    depth cap is reached.
    """

    tol: float = 1e-3
    max_depth: int = 24


@dataclass(frozen=True)
class RadialProfile:
    """Radial step profile f(x) = profile(|x|) in dimension ``dimension``."""

    profile: StepFunction
    dimension: int = 1
    nonincreasing: bool = False

    def __post_init__(self) -> None:
        if self.dimension < 1 or self.dimension != int(self.dimension):
            raise ValueError("dimension must be a positive integer")
        if not self.profile.is_zero and self.profile.breakpoints[0] < 0:
            raise ValueError("profile breakpoints must be >= 0")
        if self.nonincreasing and not self.profile.is_zero:
            vals = self.profile.values
            if any(a < b for a, b in zip(vals, vals[1:])):
                raise ValueError("profile marked nonincreasing has increasing values")
            if any(v < 0 for v in vals):
                raise ValueError("nonincreasing profiles must be nonnegative")
            if self.profile.breakpoints[0] != 0.0:
                raise ValueError("nonincreasing profiles must start at radius 0")

    def to_json_obj(self) -> dict:
        return {
            "dimension": self.dimension,
            "profile": self.profile.to_json_obj(),
            "nonincreasing": self.nonincreasing,
        }

    @classmethod
    def from_json_obj(cls, obj: dict) -> "RadialProfile":
        return cls(
            StepFunction.from_json_obj(obj["profile"]),
            int(obj.get("dimension", 1)),
            bool(obj.get("nonincreasing", False)),
        )


def _candidate_arrays(f: StepFunction, x: float):
    """Left/right endpoint candidates and their |f| prefix integrals."""
    b, w, prefix = f._abs_arrays
    px = float(prefix_at(b, w, prefix, np.array([x]))[0])
    k = int(np.searchsorted(b, x, side="left"))
    j = int(np.searchsorted(b, x, side="right"))
    us = np.concatenate((b[:k], [x]))
    pus = np.concatenate((prefix[:k], [px]))
    vs = np.concatenate(([x], b[j:]))
    pvs = np.concatenate(([px], prefix[j:]))
    return us, pus, vs, pvs


def maximal(f: StepFunction, x: float) -> float:
    """Exact Hardy-Littlewood maximal function of a step function at x."""
    x = float(x)
    if f.is_zero:
        return 0.0
    us, pus, vs, pvs = _candidate_arrays(f, x)
    lengths = vs[None, :] - us[:, None]
    masses = pvs[None, :] - pus[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(lengths > 0, masses / lengths, -np.inf)
    # averages of |f| never exceed sup |f|; the clamp also guards the
    # cancellation noise of prefix differences over near-degenerate pairs
    return min(max(float(ratios.max()), abs(f(x))), f.sup_abs())


def fractional_maximal(f: StepFunction, alpha: float, x: float) -> float:
    """Exact fractional maximal function sup |Q|^(alpha-1) * int_Q |f|."""
    if not 0.0 <= alpha < 1.0:
        raise ValueError("alpha must lie in [0, 1)")
    if alpha == 0.0:
        return maximal(f, x)
    x = float(x)
    if f.is_zero:
        return 0.0
    us, pus, vs, pvs = _candidate_arrays(f, x)
    lengths = vs[None, :] - us[:, None]
    masses = pvs[None, :] - pus[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.where(lengths > 0, lengths ** (alpha - 1.0) * masses, -np.inf)
    return max(float(vals.max()), 0.0)


def maximal_commutator(b: StepFunction, f: StepFunction, x: float) -> float:
    """Exact C_b(f)(x) = sup over Q containing x of avg |b(x) - b(.)| |f(.)|.

    For fixed x the integrand is itself a step function, so the
    candidate-endpoint lemma applies verbatim.
    """
    x = float(x)
    bx = b(x)
    g = combine(b, f, lambda bv, fv: abs(bx - bv) * abs(fv))
    return maximal(g, x)


def commutator(b: StepFunction, f: StepFunction, x: float) -> float:
    """Exact commutator [M, b]f(x) = M(bf)(x) - b(x) * Mf(x)."""
    x = float(x)
    bf = combine(b, f, lambda bv, fv: bv * fv)
    return maximal(bf, x) - b(x) * maximal(f, x)


def brute_force_maximal(
    f: StepFunction,
    x: float,
    samples: int = 10_000,
    seed: int = 0,
    zoom_rounds: int = 1,
) -> float:
    """Monte-Carlo lower estimate of Mf(x), independent of the exact path.

    Draws random intervals [u, v] containing x inside a generous hull.  With
    ``zoom_rounds > 1`` the sample budget is spread over coarse-to-fine
    rounds: most draws concentrate in a shrinking box around the incumbent
    while a fixed share keeps exploring the full hull.  Plain uniform
    sampling stalls at grid resolution near isolated optima; the zoom
    schedule converges geometrically instead.
    """
    x = float(x)
    if f.is_zero:
        return 0.0
    rng = np.random.default_rng(seed)
    b0, bm = f.breakpoints[0], f.breakpoints[-1]
    span = max(bm - b0, 1e-9)
    ulo0, uhi0 = min(b0, x) - span, x
    vlo0, vhi0 = x, max(bm, x) + span
    best = abs(f(x))
    bu, bv = x, x
    box = (ulo0, uhi0, vlo0, vhi0)
    per_round = max(1, samples // max(zoom_rounds, 1))
    for rnd in range(max(zoom_rounds, 1)):
        n_explore = per_round if rnd == 0 else per_round // 4
        n_zoom = per_round - n_explore
        u = rng.uniform(ulo0, uhi0, n_explore)
        v = rng.uniform(vlo0, vhi0, n_explore)
        if n_zoom:
            u = np.concatenate((u, rng.uniform(box[0], box[1], n_zoom)))
            v = np.concatenate((v, rng.uniform(box[2], box[3], n_zoom)))
        lengths = v - u
        ok = lengths > 0
        if ok.any():
            bnp, w, prefix = f._abs_arrays
            masses = prefix_at(bnp, w, prefix, v[ok]) - prefix_at(bnp, w, prefix, u[ok])
            ratios = masses / lengths[ok]
            k = int(np.argmax(ratios))
            if ratios[k] > best:
                best = float(ratios[k])
                bu, bv = float(u[ok][k]), float(v[ok][k])
        wu = max((box[1] - box[0]) / 6.0, 1e-15)
        wv = max((box[3] - box[2]) / 6.0, 1e-15)
        box = (
            max(ulo0, bu - wu),
            min(uhi0, bu + wu),
            max(vlo0, bv - wv),
            min(vhi0, bv + wv),
        )
    return best


# ---------------------------------------------------------------------------
# envelopes


def default_hull(f: StepFunction) -> Interval:
    """Support hull expanded by its own length on each side."""
    hull = f.support_hull()
    if hull is None:
        return Interval(-1.0, 1.0)
    margin = max(hull.length, 1e-6)
    return hull.expanded(margin)


def _window_average(f: StepFunction, left: float, right: float) -> float:
    """Average of |f| over (left, right) via per-cell overlaps; free of the
    large-prefix cancellation that poisons very narrow windows."""
    b, w, _ = f._abs_arrays
    if len(w) == 0 or right <= left:
        return 0.0
    overlap = np.minimum(b[1:], right) - np.maximum(b[:-1], left)
    mask = overlap > 0.0
    if not mask.any():
        return 0.0
    return float(np.sum(w[mask] * overlap[mask])) / (right - left)


def _cell_floor(f: StepFunction, left: float, right: float) -> float:
    """Certified lower bound for min of Mf over [left, right].

    Every interval containing the whole cell contains each of its points,
    so the best average over such intervals bounds Mf from below uniformly
    on the cell.  Endpoint enumeration is exact for that restricted family
    by the candidate-endpoint lemma.  The degenerate self-pair (the cell
    itself) is averaged by direct overlap, everything else via prefix
    sums; the sup |f| clamp bounds any remaining rounding noise.
    """
    b, w, prefix = f._abs_arrays
    pl = float(prefix_at(b, w, prefix, np.array([left]))[0])
    pr = float(prefix_at(b, w, prefix, np.array([right]))[0])
    k = int(np.searchsorted(b, left, side="left"))
    j = int(np.searchsorted(b, right, side="right"))
    us = np.concatenate((b[:k], [left]))
    pus = np.concatenate((prefix[:k], [pl]))
    vs = np.concatenate(([right], b[j:]))
    pvs = np.concatenate(([pr], prefix[j:]))
    lengths = vs[None, :] - us[:, None]
    masses = pvs[None, :] - pus[:, None]
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(lengths > 1e-9 * (right - left + 1.0), masses / lengths, -np.inf)
    best = max(float(ratios.max()), _window_average(f, left, right), 0.0)
    return min(best, f.sup_abs())


_MAX_ENVELOPE_CELLS = 200_000


def maximal_envelope(
    f: StepFunction,
    refine: RefinePolicy | None = None,
    hull: Interval | None = None,
    upper_floor: float = 0.0,
) -> EnvelopePair:
    """Certified step-function bracket of Mf on ``hull``.

    Per cell the upper value is max(Mf(left), Mf(right)), exact because Mf
    restricted to a cell free of breakpoints is a finite maximum of
    functions of the form c + K/(v - x), each monotone there; the lower
    value comes from :func:`_cell_floor`.  The lower envelope is a valid
    global lower bound (it vanishes off the hull, and Mf >= 0); the upper
    envelope bounds Mf on the hull only.  ``upper_floor`` is max-ed into
    every upper cell; iterated application uses it to absorb tail mass of
    truncated inputs.
    """
    refine = refine or RefinePolicy()
    if f.is_zero and upper_floor == 0.0:
        z = StepFunction.zero()
        return EnvelopePair(z, z)
    hull = hull or default_hull(f)
    raw = sorted(
        {hull.left, hull.right}
        | {b for b in f.breakpoints if hull.left < b < hull.right}
    )
    # merge near-duplicate grid points; sliver cells carry no information
    # and their averages are numerically meaningless
    min_gap = 1e-12 * max(1.0, hull.length)
    pts = [raw[0]]
    for p in raw[1:]:
        if p - pts[-1] > min_gap:
            pts.append(p)
    if pts[-1] != hull.right:
        pts[-1] = hull.right
    mf_cache: dict[float, float] = {}

    def mf(p: float) -> float:
        got = mf_cache.get(p)
        if got is None:
            got = maximal(f, p)
            mf_cache[p] = got
        return got

    out_cells: list[tuple[float, float, float, float]] = []
    stack = [(l, r, 0) for l, r in zip(pts[:-1], pts[1:])]
    stack.reverse()
    while stack:
        left, right, depth = stack.pop()
        hi_ends = max(mf(left), mf(right))
        hi = max(hi_ends, upper_floor)
        lo = _cell_floor(f, left, right)
        gap_ok = hi - lo <= refine.tol * hi or hi <= 0.0
        floor_bound = upper_floor >= hi_ends
        if gap_ok or floor_bound or depth >= refine.max_depth:
            out_cells.append((left, right, lo, hi))
            continue
        mid = 0.5 * (left + right)
        if not (left < mid < right):
            out_cells.append((left, right, lo, hi))
            continue
        if len(out_cells) + len(stack) > _MAX_ENVELOPE_CELLS:
            raise RuntimeError(
                "envelope refinement exceeded the cell budget; loosen tol or max_depth"
            )
        stack.append((mid, right, depth + 1))
        stack.append((left, mid, depth + 1))
    out_cells.sort()
    bps = [c[0] for c in out_cells] + [out_cells[-1][1]]
    lower = StepFunction(bps, [c[2] for c in out_cells])
    upper = StepFunction(bps, [c[3] for c in out_cells])
    return EnvelopePair(lower, upper)


def iterated_maximal(
    f: StepFunction,
    refine: RefinePolicy | None = None,
    hull: Interval | None = None,
) -> EnvelopePair:
    """Certified bracket of the iterated maximal function M(Mf) on ``hull``.

    The upper side evaluates M on the (truncated) upper envelope of Mf, built
    on a hull expanded once more; mass of Mf beyond that outer hull is
    dominated by A / dist(t, supp f) with A = int |f|, and any interval
    poking outside contributes at most the constant A / margin by the
    mediant inequality, which is folded in as ``upper_floor``.  The lower
    side applies the certified envelope machinery to the lower envelope of
    Mf, a genuine global minorant.
    """
    refine = refine or RefinePolicy()
    if f.is_zero:
        z = StepFunction.zero()
        return EnvelopePair(z, z)
    inner_hull = hull or default_hull(f)
    outer_hull = inner_hull.expanded(inner_hull.length)
    env1 = maximal_envelope(f, refine, outer_hull)
    lower2 = maximal_envelope(env1.lower, refine, inner_hull).lower
    supp = f.support_hull()
    assert supp is not None
    mass = integrate(f.abs(), supp)
    tail = max(
        mass / (outer_hull.right - supp.right),
        mass / (supp.left - outer_hull.left),
    )
    upper2 = maximal_envelope(env1.upper, refine, inner_hull, upper_floor=tail).upper
    return EnvelopePair(lower2, upper2)


def commutator_envelope(
    b: StepFunction,
    f: StepFunction,
    refine: RefinePolicy | None = None,
    hull: Interval | None = None,
) -> EnvelopePair:
    """Certified bracket of C_b(f) on ``hull``.

    On each cell of b's partition the symbol value beta is constant, so
    C_b(f) coincides there with the maximal function of the fixed step
    function |beta - b(.)| |f(.)|; the pieces are bracketed independently
    and concatenated.
    """
    refine = refine or RefinePolicy()
    if f.is_zero:
        z = StepFunction.zero()
        return EnvelopePair(z, z)
    if hull is None:
        hulls = [h for h in (f.support_hull(), b.support_hull()) if h is not None]
        if not hulls:
            z = StepFunction.zero()
            return EnvelopePair(z, z)
        lo = min(h.left for h in hulls)
        hi = max(h.right for h in hulls)
        base = Interval(lo, hi)
        hull = base.expanded(max(base.length, 1e-6))
    pts = sorted(
        {hull.left, hull.right} | {p for p in b.breakpoints if hull.left < p < hull.right}
    )
    lo_bp: list[float] = []
    lo_vals: list[float] = []
    hi_vals: list[float] = []
    for left, right in zip(pts[:-1], pts[1:]):
        beta = b(left)
        g = combine(b, f, lambda bv, fv: abs(beta - bv) * abs(fv))
        piece = maximal_envelope(g, refine, Interval(left, right))
        grid = sorted({left, right} | {p for p in piece.lower.breakpoints if left < p < right}
                      | {p for p in piece.upper.breakpoints if left < p < right})
        for a, c in zip(grid[:-1], grid[1:]):
            mid = 0.5 * (a + c)
            if not lo_bp:
                lo_bp.append(a)
            lo_bp.append(c)
            lo_vals.append(piece.lower(mid))
            hi_vals.append(piece.upper(mid))
    if not lo_vals:
        z = StepFunction.zero()
        return EnvelopePair(z, z)
    return EnvelopePair(StepFunction(lo_bp, lo_vals), StepFunction(lo_bp, hi_vals))


# ---------------------------------------------------------------------------
# Hardy operator on radial profiles


class HardyOriginWarning(UserWarning):
    """Raised when the Hardy operator is evaluated at the removable point 0."""


def hardy(p: RadialProfile, x: float) -> float:
    """Exact n-dimensional Hardy operator H f(x), the solid average of |f|
    over the ball of radius |x|.

    For a radial step profile the value is (n / r^n) * int_0^r |phi| s^(n-1) ds,
    a finite sum of monomial antiderivatives.  x = 0 is a removable limit;
    the first-cell value is returned under a warning to keep pipelines total.
    """
    n = p.dimension
    r = abs(float(x))
    if r == 0.0:
        warnings.warn(
            "Hardy operator at x = 0 returns the limit value |phi(0+)|",
            HardyOriginWarning,
            stacklevel=2,
        )
        if p.profile.is_zero:
            return 0.0
        return abs(p.profile(p.profile.breakpoints[0])) if p.profile.breakpoints[0] == 0.0 else 0.0
    total = 0.0
    for l, rr, v in p.profile.cells():
        lo, hi = max(l, 0.0), min(rr, r)
        if hi > lo:
            total += abs(v) * (hi**n - lo**n)
    return total / r**n
