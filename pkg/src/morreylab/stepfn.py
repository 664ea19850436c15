"""Compactly supported piecewise-constant functions with exact arithmetic.

A :class:`StepFunction` is determined by a strictly increasing breakpoint
sequence ``x0 < x1 < ... < xm`` and one value per cell ``(x_i, x_{i+1})``;
the function vanishes outside ``[x0, xm]``.  Every operation here (integral,
measure, rearrangement) is a finite exact sum, so downstream operators can
be evaluated without discretization error.

Values at breakpoints are irrelevant to all integral/measure operations;
pointwise evaluation at a breakpoint returns the right cell's value by fiat.
"""

from __future__ import annotations

import bisect
import json
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterator, Sequence

import numpy as np

__all__ = [
    "Interval",
    "StepFunction",
    "EnvelopePair",
    "integrate",
    "average",
    "combine",
    "pos_neg_parts",
    "distribution",
    "rearrangement",
    "double_star",
]


@dataclass(frozen=True)
class Interval:
    """Nonempty open interval (the one-dimensional cube)."""

    left: float
    right: float

    def __post_init__(self) -> None:
        left, right = float(self.left), float(self.right)
        if not (math.isfinite(left) and math.isfinite(right)):
            raise ValueError("interval endpoints must be finite")
        if not left < right:
            raise ValueError(f"empty interval: ({left}, {right})")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)

    @property
    def length(self) -> float:
        return self.right - self.left

    def contains(self, x: float) -> bool:
        """Closed containment; endpoint membership is measure-irrelevant."""
        return self.left <= x <= self.right

    def expanded(self, margin: float) -> "Interval":
        return Interval(self.left - margin, self.right + margin)

    def as_tuple(self) -> tuple[float, float]:
        return (self.left, self.right)


def _canonical(breakpoints: list[float], values: list[float]) -> tuple[tuple[float, ...], tuple[float, ...]]:
    # merge adjacent cells sharing a value, then trim zero-valued boundary cells
    bp: list[float] = [breakpoints[0]]
    vals: list[float] = []
    for i, v in enumerate(values):
        if vals and v == vals[-1]:
            bp[-1] = breakpoints[i + 1]
        else:
            vals.append(v)
            bp.append(breakpoints[i + 1])
    while vals and vals[0] == 0.0:
        vals.pop(0)
        bp.pop(0)
    while vals and vals[-1] == 0.0:
        vals.pop()
        bp.pop()
    if not vals:
        return (0.0,), ()
    return tuple(bp), tuple(vals)


@dataclass(frozen=True, init=False)
class StepFunction:
    """Canonical piecewise-constant function; immutable and hashable.

    Canonical form: no two adjacent cells share a value and no boundary cell
    is zero.  The zero function is represented by a single breakpoint and no
    cells.
    """

    breakpoints: tuple[float, ...]
    values: tuple[float, ...]

    def __init__(self, breakpoints: Sequence[float], values: Sequence[float]):
        bp = [float(b) for b in breakpoints]
        vals = [float(v) for v in values]
        if not bp:
            bp = [0.0]
        if len(vals) != len(bp) - 1:
            raise ValueError("values must have one entry per cell")
        for b in bp:
            if not math.isfinite(b):
                raise ValueError("breakpoints must be finite")
        for v in vals:
            if not math.isfinite(v):
                raise ValueError("values must be finite")
        for a, b in zip(bp, bp[1:]):
            if not a < b:
                raise ValueError("breakpoints must be strictly increasing")
        cbp, cvals = _canonical(bp, vals)
        object.__setattr__(self, "breakpoints", cbp)
        object.__setattr__(self, "values", cvals)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls) -> "StepFunction":
        return cls((0.0,), ())

    @classmethod
    def indicator(cls, left: float, right: float, height: float = 1.0) -> "StepFunction":
        return cls((left, right), (height,))

    # -- basic queries ------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.values

    @property
    def num_cells(self) -> int:
        return len(self.values)

    def support_hull(self) -> Interval | None:
        """Smallest interval containing the support; None for the zero function."""
        if self.is_zero:
            return None
        return Interval(self.breakpoints[0], self.breakpoints[-1])

    def support_measure(self) -> float:
        return math.fsum(
            (r - l) for l, r, v in self.cells() if v != 0.0
        )

    def cells(self) -> Iterator[tuple[float, float, float]]:
        for i, v in enumerate(self.values):
            yield self.breakpoints[i], self.breakpoints[i + 1], v

    def __call__(self, x: float) -> float:
        i = bisect.bisect_right(self.breakpoints, x) - 1
        if i < 0 or i >= len(self.values):
            return 0.0
        return self.values[i]

    def sup_abs(self) -> float:
        return max((abs(v) for v in self.values), default=0.0)

    # -- derived functions --------------------------------------------

    def abs(self) -> "StepFunction":
        return StepFunction(self.breakpoints, tuple(abs(v) for v in self.values))

    def scale(self, c: float) -> "StepFunction":
        if c == 0.0 or self.is_zero:
            return StepFunction.zero()
        return StepFunction(self.breakpoints, tuple(c * v for v in self.values))

    def dilate(self, s: float) -> "StepFunction":
        """x -> f(x / s) for s > 0 (support stretches by s)."""
        if s <= 0:
            raise ValueError("dilation factor must be positive")
        if self.is_zero:
            return self
        return StepFunction(tuple(b * s for b in self.breakpoints), self.values)

    def translate(self, dx: float) -> "StepFunction":
        if self.is_zero:
            return self
        return StepFunction(tuple(b + dx for b in self.breakpoints), self.values)

    def restrict(self, window: Interval) -> "StepFunction":
        """Pointwise product with the indicator of ``window``."""
        bp: list[float] = []
        vals: list[float] = []
        for l, r, v in self.cells():
            lo, hi = max(l, window.left), min(r, window.right)
            if hi <= lo:
                continue
            if not bp:
                bp.append(lo)
            vals.append(v)
            bp.append(hi)
        if not vals:
            return StepFunction.zero()
        return StepFunction(bp, vals)

    # -- cached numeric arrays (hot paths) -----------------------------

    @cached_property
    def _abs_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(breakpoints, |value| per cell, prefix integrals of |f|)."""
        b = np.asarray(self.breakpoints, dtype=float)
        w = np.abs(np.asarray(self.values, dtype=float))
        prefix = np.concatenate(([0.0], np.cumsum(w * np.diff(b)))) if len(w) else np.zeros(1)
        return b, w, prefix

    # -- interchange formats -------------------------------------------

    def to_json_obj(self) -> dict:
        return {"breakpoints": list(self.breakpoints), "values": list(self.values)}

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj())

    @classmethod
    def from_json_obj(cls, obj: dict) -> "StepFunction":
        bp = obj.get("breakpoints", [])
        vals = obj.get("values", [])
        if not bp and not vals:
            return cls.zero()
        return cls(bp, vals)

    @classmethod
    def from_json(cls, text: str) -> "StepFunction":
        return cls.from_json_obj(json.loads(text))

    def to_csv_text(self) -> str:
        # one row per breakpoint; second column carries the following cell's
        # value, empty on the final row
        lines = []
        for i, b in enumerate(self.breakpoints):
            v = f"{self.values[i]:.17g}" if i < len(self.values) else ""
            lines.append(f"{b:.17g},{v}")
        return "\n".join(lines) + "\n"

    @classmethod
    def from_csv_text(cls, text: str) -> "StepFunction":
        bp: list[float] = []
        vals: list[float] = []
        rows = [ln for ln in text.splitlines() if ln.strip()]
        for lineno, ln in enumerate(rows, start=1):
            parts = ln.split(",")
            if len(parts) != 2:
                raise ValueError(f"line {lineno}: expected 'breakpoint,value', got {ln!r}")
            try:
                bp.append(float(parts[0]))
            except ValueError as exc:
                raise ValueError(f"line {lineno}: bad breakpoint {parts[0]!r}") from exc
            cell = parts[1].strip()
            if lineno < len(rows):
                try:
                    vals.append(float(cell))
                except ValueError as exc:
                    raise ValueError(f"line {lineno}: bad value {cell!r}") from exc
            elif cell:
                raise ValueError(f"line {lineno}: final row must leave the value empty")
        if not bp:
            return cls.zero()
        return cls(bp, vals)

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        if self.is_zero:
            return "StepFunction.zero()"
        cells = " + ".join(f"{v:g}*chi[{l:g},{r:g}]" for l, r, v in self.cells())
        return f"StepFunction({cells})"


@dataclass(frozen=True)
class EnvelopePair:
    """Certified two-sided step-function bracket for a non-step function.

    ``lower <= upper`` holds pointwise (checked on the common breakpoint
    refinement; the two sides are stored canonically, so their breakpoint
    sequences may differ after merging of equal adjacent cells).
    """

    lower: StepFunction
    upper: StepFunction

    def __post_init__(self) -> None:
        pts = sorted(set(self.lower.breakpoints) | set(self.upper.breakpoints))
        for a, b in zip(pts, pts[1:]):
            mid = 0.5 * (a + b)
            lo, hi = self.lower(mid), self.upper(mid)
            if lo > hi + 1e-9 * max(1.0, abs(hi)):
                raise ValueError(f"envelope order violated on ({a}, {b}): {lo} > {hi}")

    def to_json_obj(self) -> dict:
        return {"lower": self.lower.to_json_obj(), "upper": self.upper.to_json_obj()}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "EnvelopePair":
        return cls(
            StepFunction.from_json_obj(obj["lower"]),
            StepFunction.from_json_obj(obj["upper"]),
        )


# ---------------------------------------------------------------------------
# exact operations


def integrate(f: StepFunction, interval: Interval) -> float:
    """Exact integral of ``f`` over ``interval`` as a finite sum of overlaps."""
    parts = []
    for l, r, v in f.cells():
        lo, hi = max(l, interval.left), min(r, interval.right)
        if hi > lo:
            parts.append(v * (hi - lo))
    return math.fsum(parts)


def average(f: StepFunction, interval: Interval) -> float:
    """Mean value of ``f`` over ``interval``."""
    return integrate(f, interval) / interval.length


def combine(
    f: StepFunction, g: StepFunction, op: Callable[[float, float], float]
) -> StepFunction:
    """Pointwise binary ``op`` of two step functions on the merged breakpoints.

    ``op(0, 0)`` must be 0, otherwise the result is not compactly supported.
    """
    if op(0.0, 0.0) != 0.0:
        raise ValueError("op(0, 0) must be 0 for a compactly supported result")
    pts = sorted(set(f.breakpoints) | set(g.breakpoints))
    if len(pts) < 2:
        return StepFunction.zero()
    vals = [op(f(l), g(l)) for l in pts[:-1]]
    return StepFunction(pts, vals)


def pos_neg_parts(b: StepFunction) -> tuple[StepFunction, StepFunction]:
    """Splits b = b_plus - b_minus with both parts nonnegative."""
    plus = StepFunction(b.breakpoints, tuple(max(v, 0.0) for v in b.values))
    minus = StepFunction(b.breakpoints, tuple(max(-v, 0.0) for v in b.values))
    return plus, minus


def distribution(f: StepFunction, s: float) -> float:
    """Lebesgue measure of {x : |f(x)| > s} for s >= 0."""
    if s < 0:
        raise ValueError("distribution defined for s >= 0")
    return math.fsum((r - l) for l, r, v in f.cells() if abs(v) > s)


def rearrangement(f: StepFunction) -> StepFunction:
    """Nonincreasing rearrangement of |f| on [0, |supp f|]."""
    pieces = sorted(
        ((abs(v), r - l) for l, r, v in f.cells() if v != 0.0), reverse=True
    )
    if not pieces:
        return StepFunction.zero()
    bp = [0.0]
    vals = []
    for height, length in pieces:
        vals.append(height)
        bp.append(bp[-1] + length)
    return StepFunction(bp, vals)


def double_star(f: StepFunction, t: float) -> float:
    """Running average (1/t) * int_0^t f*(s) ds of the rearrangement."""
    if t <= 0:
        raise ValueError("double_star requires t > 0")
    fstar = rearrangement(f)
    return integrate(fstar, Interval(0.0, t)) / t


# ---------------------------------------------------------------------------
# vectorized helpers shared by the operator modules


def prefix_at(b: np.ndarray, w: np.ndarray, prefix: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Prefix integral of the weighted cells at arbitrary points (vectorized)."""
    x = np.asarray(x, dtype=float)
    if len(w) == 0:
        return np.zeros_like(x)
    idx = np.clip(np.searchsorted(b, x, side="right") - 1, 0, len(w) - 1)
    out = prefix[idx] + w[idx] * (np.clip(x, b[0], b[-1]) - b[idx])
    return out


def batch_abs_integrals(f: StepFunction, lefts: np.ndarray, rights: np.ndarray) -> np.ndarray:
    """Integrals of |f| over many intervals at once."""
    b, w, prefix = f._abs_arrays
    return prefix_at(b, w, prefix, rights) - prefix_at(b, w, prefix, lefts)
