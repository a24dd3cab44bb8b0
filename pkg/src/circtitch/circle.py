"""Points and closed arcs on the circle R/Z, measured in turns.

One turn is 2*pi radians, so pi corresponds to 1/2 and 2*pi/n to 1/n.  All
angles are exact rationals.  An :class:`Arc` keeps its start as a rational
*lift* (not necessarily in [0, 1)) because the support arithmetic compares
infima and suprema as real numbers; membership tests always work mod 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple, Optional

__all__ = [
    "Angle",
    "Arc",
    "Orbit",
    "angle",
    "arc_contains",
    "arc_sum",
    "lift_into",
    "minimal_covering_arc",
    "relift",
    "rn_orbit",
]

Angle = Fraction


def angle(x) -> Fraction:
    """Reduce a rational number of turns into [0, 1)."""
    return Fraction(x) % 1


@dataclass(frozen=True)
class Arc:
    """Closed arc ``[start, start + length]`` with ``0 <= length < 1``."""

    start: Fraction
    length: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "start", Fraction(self.start))
        object.__setattr__(self, "length", Fraction(self.length))
        if not 0 <= self.length < 1:
            raise ValueError(f"arc length must lie in [0, 1), got {self.length}")

    @classmethod
    def between(cls, lo, hi) -> Arc:
        return cls(Fraction(lo), Fraction(hi) - Fraction(lo))

    @property
    def inf(self) -> Fraction:
        return self.start

    @property
    def sup(self) -> Fraction:
        return self.start + self.length

    def is_point(self) -> bool:
        return self.length == 0

    def normalized(self) -> Arc:
        return Arc(self.start % 1, self.length)

    def shifted(self, y) -> Arc:
        return Arc(self.start + Fraction(y), self.length)

    def contains(self, x, mode: str = "closed") -> bool:
        return arc_contains(self, x, mode)

    def __str__(self):
        if self.is_point():
            return f"{{{self.start}}}"
        return f"[{self.start}, {self.sup}]"


def arc_contains(a: Arc, x, mode: str = "closed") -> bool:
    """True iff some lift of ``x`` lies in ``a`` (closed) or its interior (open)."""
    d = (Fraction(x) - a.start) % 1
    if mode == "closed":
        return d <= a.length
    if mode == "open":
        return 0 < d < a.length
    raise ValueError(f"mode must be 'closed' or 'open', got {mode!r}")


def arc_sum(i: Arc, j: Arc) -> Arc:
    """Minkowski sum of two arcs; the start is the sum of the two lifts."""
    if i.length + j.length >= 1:
        raise ValueError(f"arc sum wraps the circle: |I| + |J| = {i.length + j.length}")
    return Arc(i.start + j.start, i.length + j.length)


class Orbit(NamedTuple):
    arcs: tuple[Arc, ...]
    disjoint: bool


def rn_orbit(i: Arc, n: int) -> Orbit:
    """The n rotates of ``i`` by k/n turns and whether they are pairwise disjoint."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    arcs = tuple(Arc((i.start + Fraction(k, n)) % 1, i.length) for k in range(n))
    return Orbit(arcs, i.length < Fraction(1, n))


def minimal_covering_arc(points: Iterable, n: int) -> Arc:
    """Shortest closed arc I with every point in the union of its n rotates.

    Points are projected to residues mod 1/n; the returned arc is the
    complement of the largest cyclic gap between residues, with start in
    [0, 1/n).  Equal largest gaps are resolved toward the smallest start.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    period = Fraction(1, n)
    residues = sorted({Fraction(p) % period for p in points})
    if not residues:
        raise ValueError("minimal covering arc of an empty point set")
    if len(residues) == 1:
        return Arc(residues[0])
    best = None
    for k, r in enumerate(residues):
        nxt = residues[(k + 1) % len(residues)]
        gap = (nxt - r) % period
        # arc runs from the residue after the gap round to the one before it
        key = (-gap, nxt)
        if best is None or key < best[0]:
            best = (key, nxt, period - gap)
    _, start, length = best
    return Arc(start, length)


def lift_into(x, window: Arc, n: int = 1) -> Optional[Fraction]:
    """The lift x + k/n + m (k in Z_n, m in Z) lying in the closed window, if any.

    With ``|window| < 1/n`` the lift is unique.
    """
    x = Fraction(x)
    for k in range(n):
        y = x + Fraction(k, n)
        y += math.ceil(window.inf - y)
        if y <= window.sup:
            return y
    return None


def relift(a: Arc, n: int, lo, hi) -> Optional[Arc]:
    """A rotate of ``a`` by k/n + m turns lying inside the open interval (lo, hi)."""
    lo, hi = Fraction(lo), Fraction(hi)
    for k in range(n):
        s = a.start + Fraction(k, n)
        s += math.floor(lo - s) + 1
        if s + a.length < hi:
            return Arc(s, a.length)
    return None
