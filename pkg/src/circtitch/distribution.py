"""Finite sums of delta derivatives on the circle with cyclotomic coefficients.

A :class:`Distribution` is a sparse map ``(location, order) -> coefficient``
standing for ``sum c * delta^(order)_location``.  Locations are angles in
turns, reduced into [0, 1).  All coefficients share one cyclotomic field
order, the least common multiple of the orders that went in.

Sign conventions follow the pairing with test functions:
``<delta^(p)_x, phi> = (-1)^p phi^(p)(x)``, so convolution adds locations and
orders, and the reflection ``f(-w)`` picks up a factor ``(-1)^p``.
"""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, Optional

from .circle import Arc, arc_contains, lift_into
from .cyclotomic import CycloNumber, root_of_unity

__all__ = [
    "Distribution",
    "components",
    "convolve",
    "convolve_power",
    "delta",
    "fourier_coeff",
    "inf_supp_within",
    "reflect",
    "restrict",
    "shift",
    "sup_supp_within",
    "symmetrize",
]


class Distribution:
    """Immutable finite combination of delta derivatives.

    ``terms`` maps ``(angle, order)`` to a coefficient (int, Fraction or
    :class:`CycloNumber`).  Angles are reduced mod 1, repeated keys are
    summed, and zero coefficients are dropped.
    """

    __slots__ = ("_terms", "field_order")

    def __init__(self, terms: Mapping | Iterable = (), field_order: int = 1):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict = {}
        order = field_order
        for (x, p), c in items:
            if not isinstance(p, int) or p < 0:
                raise ValueError(f"derivative order must be a nonnegative integer, got {p!r}")
            c = CycloNumber.coerce(c)
            order = math.lcm(order, c.order)
            key = (Fraction(x) % 1, p)
            acc[key] = acc[key] + c if key in acc else c
        self.field_order = order
        self._terms = {k: c.promote(order) for k, c in acc.items() if c}

    @classmethod
    def _wrap(cls, terms: dict, field_order: int) -> Distribution:
        # trusted: keys normalized, coefficients nonzero and of order field_order
        d = object.__new__(cls)
        d._terms = terms
        d.field_order = field_order
        return d

    @classmethod
    def zero(cls, field_order: int = 1) -> Distribution:
        return cls._wrap({}, field_order)

    # -- access -------------------------------------------------------------

    def items(self) -> list:
        """Terms sorted by (angle, order)."""
        return sorted(self._terms.items(), key=lambda kv: kv[0])

    def __iter__(self) -> Iterator:
        return iter(self.items())

    def __len__(self):
        return len(self._terms)

    def coeff(self, x, order: int = 0) -> CycloNumber:
        c = self._terms.get((Fraction(x) % 1, order))
        return c if c is not None else CycloNumber.coerce(0).promote(self.field_order)

    def support(self) -> list[Fraction]:
        return sorted({x for x, _ in self._terms})

    def max_order(self) -> int:
        return max((p for _, p in self._terms), default=0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def with_field_order(self, order: int) -> Distribution:
        if order == self.field_order:
            return self
        return Distribution._wrap({k: c.promote(order) for k, c in self._terms.items()}, order)

    # -- linear structure -----------------------------------------------------

    def _combine(self, other: Distribution, sign: int) -> Distribution:
        order = math.lcm(self.field_order, other.field_order)
        a = self.with_field_order(order)._terms
        b = other.with_field_order(order)._terms
        out = dict(a)
        for k, c in b.items():
            c = c if sign > 0 else -c
            if k not in out:
                out[k] = c
                continue
            s = out[k] + c
            if s:
                out[k] = s
            else:
                del out[k]
        return Distribution._wrap(out, order)

    def __add__(self, other):
        if not isinstance(other, Distribution):
            return NotImplemented
        return self._combine(other, 1)

    def __sub__(self, other):
        if not isinstance(other, Distribution):
            return NotImplemented
        return self._combine(other, -1)

    def __neg__(self):
        return Distribution._wrap({k: -c for k, c in self._terms.items()}, self.field_order)

    def __mul__(self, scalar):
        if isinstance(scalar, Distribution):
            return NotImplemented
        if not isinstance(scalar, (Rational, CycloNumber)):
            return NotImplemented
        s = CycloNumber.coerce(scalar)
        order = math.lcm(self.field_order, s.order)
        s = s.promote(order)
        if not s:
            return Distribution.zero(order)
        terms = {k: c.promote(order) * s for k, c in self._terms.items()}
        return Distribution._wrap(terms, order)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / CycloNumber.coerce(scalar))

    def __eq__(self, other):
        if not isinstance(other, Distribution):
            return NotImplemented
        return self._terms.keys() == other._terms.keys() and all(
            c == other._terms[k] for k, c in self._terms.items())

    __hash__ = None

    def __repr__(self):
        if not self._terms:
            return "Distribution(0)"
        parts = []
        for (x, p), c in self.items():
            d = "delta" + "'" * p if p <= 3 else f"delta^({p})"
            parts.append(f"({c})*{d}[{x}]")
        return "Distribution(" + " + ".join(parts) + ")"


def delta(x, order: int = 0, coeff=1) -> Distribution:
    """``coeff * delta^(order)`` at angle ``x`` (turns)."""
    return Distribution({(x, order): coeff})


def shift(f: Distribution, y) -> Distribution:
    """The rotation S_y: (S_y f)(w) = f(w - y); moves every location by +y."""
    y = Fraction(y)
    if y % 1 == 0:
        return f
    return Distribution._wrap({((x + y) % 1, p): c for (x, p), c in f._terms.items()},
                              f.field_order)


def reflect(f: Distribution) -> Distribution:
    """The pullback f(-w): (x, p, c) -> (-x, p, (-1)^p c)."""
    return Distribution._wrap({((-x) % 1, p): (-c if p % 2 else c)
                               for (x, p), c in f._terms.items()}, f.field_order)


def convolve(f: Distribution, g: Distribution) -> Distribution:
    order = math.lcm(f.field_order, g.field_order)
    a = f.with_field_order(order)._terms
    b = g.with_field_order(order)._terms
    out: dict = {}
    for (x, p), c in a.items():
        for (y, q), d in b.items():
            key = ((x + y) % 1, p + q)
            prod = c * d
            out[key] = out[key] + prod if key in out else prod
    return Distribution._wrap({k: c for k, c in out.items() if c}, order)


def convolve_power(f: Distribution, p: int) -> Distribution:
    """The p-fold convolution f * ... * f, by repeated squaring."""
    if p < 1:
        raise ValueError(f"convolution power must be positive, got {p}")
    result = None
    base = f
    while p:
        if p & 1:
            result = base if result is None else convolve(result, base)
        p >>= 1
        if p:
            base = convolve(base, base)
    return result


def restrict(f: Distribution, w: Arc, mode: str = "closed") -> Distribution:
    """Keep the terms located in the arc ``w`` (closed or open)."""
    return Distribution._wrap({k: c for k, c in f._terms.items() if arc_contains(w, k[0], mode)},
                              f.field_order)


def symmetrize(f: Distribution, n: int, alpha) -> Distribution:
    """sum_{k in Z_n} alpha^k S_{k/n} f; alpha must be an n-th root of unity."""
    alpha = CycloNumber.coerce(alpha)
    if alpha ** n != 1:
        raise ValueError(f"symmetrize needs alpha^n = 1, got alpha = {alpha}, n = {n}")
    out = Distribution.zero(f.field_order)
    weight = CycloNumber.coerce(1)
    for k in range(n):
        out = out + shift(f, Fraction(k, n)) * weight
        weight = weight * alpha
    return out


def components(f: Distribution, i: Arc, n: int) -> list[Distribution]:
    """The pieces f_j = (S_{j/n} f)|_i, j in Z_n, of f on R_n(i)."""
    if i.length >= Fraction(1, n):
        raise ValueError(f"component arc must be shorter than 1/{n}, got {i.length}")
    for x in f.support():
        if lift_into(x, i, n) is None:
            raise ValueError(f"support point {x} lies outside R_{n}({i})")
    return [restrict(shift(f, Fraction(j, n)), i, "closed") for j in range(n)]


def inf_supp_within(f: Distribution, window: Arc) -> Optional[Fraction]:
    """Smallest lift in ``window`` of a support point of f on the open window.

    Returns None (standing for +infinity) when f vanishes there.
    """
    lifts = [lift_into(x, window) for x in restrict(f, window, "open").support()]
    return min(lifts, default=None)


def sup_supp_within(f: Distribution, window: Arc) -> Optional[Fraction]:
    """Largest lift in ``window`` of a support point of f on the open window.

    Returns None (standing for -infinity) when f vanishes there.
    """
    lifts = [lift_into(x, window) for x in restrict(f, window, "open").support()]
    return max(lifts, default=None)


def fourier_order(f: Distribution) -> int:
    """Smallest field order holding every Fourier coefficient of f."""
    order = math.lcm(4, f.field_order)
    for x in f.support():
        order = math.lcm(order, x.denominator)
    return order


def fourier_coeff(f: Distribution, m: int, order: Optional[int] = None) -> CycloNumber:
    """<f, e^{-i m w}> = sum c (i m)^p e^{-i m x}, exactly in Q(zeta_order)."""
    order = fourier_order(f) if order is None else order
    if order % fourier_order(f):
        raise ValueError(f"field order {order} too small for the Fourier coefficients of f")
    total = CycloNumber.coerce(0).promote(order)
    for (x, p), c in f._terms.items():
        # i^p * m^p * exp(-2 pi i m x)
        e = (p * (order // 4) - m * x.numerator * (order // x.denominator)) % order
        total = total + c.promote(order) * root_of_unity(e, order) * (m ** p)
    return total
