"""Exact arithmetic in cyclotomic fields Q(zeta_N).

An element of Q(zeta_N) is stored as its coefficient vector in the power
basis 1, zeta, ..., zeta^(phi(N)-1), i.e. as a polynomial in zeta reduced
modulo the N-th cyclotomic polynomial.  That form is unique, so equality and
zero tests are plain coefficient comparisons.

Elements of different orders mix freely: both operands are promoted to the
least common multiple of their orders first.
"""

from __future__ import annotations

import functools
import math
from fractions import Fraction
from numbers import Rational

__all__ = [
    "CycloNumber",
    "cyclotomic_polynomial",
    "cyclo_is_zero",
    "determinant",
    "euler_phi",
    "root_of_unity",
]


def _poly_divexact(num, den):
    # exact division of integer polynomials (low degree first), den monic
    num = list(num)
    dd = len(den) - 1
    out = [0] * (len(num) - dd)
    for i in range(len(out) - 1, -1, -1):
        c = num[i + dd]
        out[i] = c
        if c:
            for k, d in enumerate(den):
                num[i + k] -= c * d
    if any(num[:dd]):
        raise ArithmeticError("inexact polynomial division")
    return out


@functools.lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Return the coefficients of Phi_n, lowest degree first.

    >>> cyclotomic_polynomial(12)
    (1, 0, -1, 0, 1)
    """
    if n < 1:
        raise ValueError(f"cyclotomic order must be positive, got {n}")
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, cyclotomic_polynomial(d))
    return tuple(poly)


@functools.lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


@functools.lru_cache(maxsize=None)
def _moebius(n: int) -> int:
    result, m, p = 1, n, 2
    while p * p <= m:
        if m % p == 0:
            m //= p
            if m % p == 0:
                return 0
            result = -result
        p += 1
    return -result if m > 1 else result


@functools.lru_cache(maxsize=None)
def _phi_taps(n: int) -> tuple[tuple[int, int], ...]:
    # nonzero lower coefficients of Phi_n, as (degree, coeff)
    phi = cyclotomic_polynomial(n)
    return tuple((k, c) for k, c in enumerate(phi[:-1]) if c)


def _normalize(c):
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _reduce(poly, n: int) -> tuple:
    """Reduce a coefficient list modulo Phi_n (in place on a copy)."""
    deg = euler_phi(n)
    poly = list(poly)
    if len(poly) <= deg:
        poly.extend([0] * (deg - len(poly)))
        return tuple(_normalize(c) for c in poly)
    taps = _phi_taps(n)
    for top in range(len(poly) - 1, deg - 1, -1):
        c = poly[top]
        if c:
            base = top - deg
            for k, d in taps:
                poly[base + k] -= c * d
    return tuple(_normalize(c) for c in poly[:deg])


@functools.lru_cache(maxsize=4096)
def _monomial(e: int, n: int) -> tuple:
    poly = [0] * (e % n) + [1]
    return _reduce(poly, n)


class CycloNumber:
    """Element of the cyclotomic field Q(zeta_order).

    ``coeffs`` may be any sequence of rationals; it is read as a polynomial
    in zeta_order and reduced on construction.
    """

    __slots__ = ("order", "coeffs")

    def __init__(self, coeffs=(), order: int = 1):
        if order < 1:
            raise ValueError(f"field order must be positive, got {order}")
        if isinstance(coeffs, Rational):
            coeffs = (coeffs,)
        self.order = order
        self.coeffs = _reduce([Fraction(c) if not isinstance(c, int) else c
                               for c in coeffs], order)

    @classmethod
    def _raw(cls, coeffs: tuple, order: int) -> CycloNumber:
        z = object.__new__(cls)
        z.order = order
        z.coeffs = coeffs
        return z

    @classmethod
    def coerce(cls, value) -> CycloNumber:
        if isinstance(value, CycloNumber):
            return value
        if isinstance(value, Rational):
            return cls._raw((_normalize(Fraction(value)),), 1)
        raise TypeError(f"cannot convert {type(value).__name__} to CycloNumber")

    # -- field structure -------------------------------------------------

    def promote(self, order: int) -> CycloNumber:
        """Embed into Q(zeta_order); ``self.order`` must divide ``order``."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"cannot promote order {self.order} to {order}")
        step = order // self.order
        poly = [0] * ((len(self.coeffs) - 1) * step + 1)
        for k, c in enumerate(self.coeffs):
            poly[k * step] = c
        return CycloNumber._raw(_reduce(poly, order), order)

    def demote(self, order: int) -> CycloNumber:
        """Express the value in the subfield Q(zeta_order).

        Raises ValueError if ``order`` does not divide ``self.order`` or the
        value does not lie in the subfield.
        """
        if order == self.order:
            return self
        if self.order % order:
            raise ValueError(f"order {order} does not divide {self.order}")
        step = self.order // order
        dim = euler_phi(order)
        # columns: images of zeta_order^k, k < dim, in the big basis
        cols = [_monomial(k * step, self.order) for k in range(dim)]
        rows = len(self.coeffs)
        mat = [[Fraction(cols[k][r]) for k in range(dim)] + [Fraction(self.coeffs[r])]
               for r in range(rows)]
        pivots = []
        r = 0
        for col in range(dim):
            piv = next((i for i in range(r, rows) if mat[i][col]), None)
            if piv is None:
                continue
            mat[r], mat[piv] = mat[piv], mat[r]
            inv = 1 / mat[r][col]
            mat[r] = [v * inv for v in mat[r]]
            for i in range(rows):
                if i != r and mat[i][col]:
                    f = mat[i][col]
                    mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
            pivots.append(col)
            r += 1
        if any(mat[i][dim] for i in range(r, rows)):
            raise ValueError(f"value does not lie in Q(zeta_{order})")
        sol = [0] * dim
        for i, col in enumerate(pivots):
            sol[col] = mat[i][dim]
        return CycloNumber(sol, order)

    def _common(self, other):
        other = CycloNumber.coerce(other)
        if other.order == self.order:
            return self, other
        n = math.lcm(self.order, other.order)
        return self.promote(n), other.promote(n)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def conjugate(self) -> CycloNumber:
        n = self.order
        poly = [0] * n
        for k, c in enumerate(self.coeffs):
            poly[(-k) % n] += c
        return CycloNumber._raw(_reduce(poly, n), n)

    def inverse(self) -> CycloNumber:
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        s = _poly_inverse_mod(list(self.coeffs), list(cyclotomic_polynomial(self.order)))
        return CycloNumber(s, self.order)

    def trace(self) -> Fraction:
        """Normalized trace Tr(z)/phi(N); independent of the field order."""
        n = self.order
        total = Fraction(0)
        for k, c in enumerate(self.coeffs):
            if c:
                m = n // math.gcd(k, n)
                total += c * Fraction(_moebius(m), euler_phi(m))
        return total

    # -- operators ---------------------------------------------------------

    def __add__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return CycloNumber._raw(tuple(_normalize(x + y) for x, y in zip(a.coeffs, b.coeffs)),
                                a.order)

    __radd__ = __add__

    def __neg__(self):
        return CycloNumber._raw(tuple(-c for c in self.coeffs), self.order)

    def __sub__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return CycloNumber._raw(tuple(_normalize(x - y) for x, y in zip(a.coeffs, b.coeffs)),
                                a.order)

    def __rsub__(self, other):
        return -self + other

    def __mul__(self, other):
        if isinstance(other, Rational):
            if not other:
                return CycloNumber._raw((0,) * len(self.coeffs), self.order)
            return CycloNumber._raw(tuple(_normalize(c * other) for c in self.coeffs),
                                    self.order)
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        if len(a.coeffs) == 1:
            return CycloNumber._raw((_normalize(a.coeffs[0] * b.coeffs[0]),), a.order)
        prod = [0] * (2 * len(a.coeffs) - 1)
        bc = [(j, y) for j, y in enumerate(b.coeffs) if y]
        for i, x in enumerate(a.coeffs):
            if x:
                for j, y in bc:
                    prod[i + j] += x * y
        return CycloNumber._raw(_reduce(prod, a.order), a.order)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Rational):
            if not other:
                raise ZeroDivisionError("division by zero in cyclotomic field")
            return self * (1 / Fraction(other))
        try:
            return self * CycloNumber.coerce(other).inverse()
        except TypeError:
            return NotImplemented

    def __rtruediv__(self, other):
        return CycloNumber.coerce(other) * self.inverse()

    def __pow__(self, e: int):
        if not isinstance(e, int):
            return NotImplemented
        base = self if e >= 0 else self.inverse()
        e = abs(e)
        result = CycloNumber._raw(_monomial(0, self.order), self.order)
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return a.coeffs == b.coeffs

    def __hash__(self):
        # equal values in different orders share the normalized trace
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash(("cyclo", self.trace()))

    def __bool__(self):
        return not self.is_zero()

    def __complex__(self):
        zeta = complex(math.cos(2 * math.pi / self.order), math.sin(2 * math.pi / self.order))
        return sum(float(c) * zeta ** k for k, c in enumerate(self.coeffs))

    def __repr__(self):
        return f"CycloNumber({str(self)!r})"

    def __str__(self):
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = Fraction(self.coeffs[k])
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                gen = f"z({self.order})" + (f"^{k}" if k > 1 else "")
                body = gen if mag == 1 else f"{mag}*{gen}"
            parts.append((sign, body))
        if not parts:
            return "0"
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _poly_trim(p):
    while p and not p[-1]:
        p.pop()
    return p


def _poly_divmod(a, b):
    a = [Fraction(x) for x in a]
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = Fraction(b[-1])
    while len(_poly_trim(a)) >= len(b):
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for k, d in enumerate(b):
            a[shift + k] -= c * d
    return q, a


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [0] * (n - len(a))
    b = list(b) + [0] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


def _poly_inverse_mod(a, m):
    """Return s with s*a = 1 mod m by the extended Euclidean algorithm."""
    r0, r1 = _poly_trim(list(m)), _poly_trim([Fraction(x) for x in a])
    s0, s1 = [], [Fraction(1)]
    while r1:
        q, r = _poly_divmod(r0, r1)
        r0, r1 = r1, _poly_trim(r)
        s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
    if len(r0) != 1:
        raise ZeroDivisionError("element is not invertible")
    inv = 1 / r0[0]
    return [c * inv for c in s0]


def root_of_unity(k: int, n: int, order: int | None = None) -> CycloNumber:
    """Return zeta_n^k as an element of Q(zeta_order) (default order n)."""
    if n < 1:
        raise ValueError(f"root order must be positive, got {n}")
    order = n if order is None else order
    if order % n:
        raise ValueError(f"zeta_{n} does not lie in Q(zeta_{order})")
    return CycloNumber._raw(_monomial((k * (order // n)) % order, order), order)


def cyclo_is_zero(z: CycloNumber) -> bool:
    return CycloNumber.coerce(z).is_zero()


def determinant(rows) -> CycloNumber:
    """Exact determinant of a square matrix over a cyclotomic field (Gaussian elimination)."""
    mat = [[CycloNumber.coerce(v) for v in row] for row in rows]
    size = len(mat)
    det = CycloNumber.coerce(1)
    for col in range(size):
        piv = next((r for r in range(col, size) if mat[r][col]), None)
        if piv is None:
            return CycloNumber.coerce(0) * det
        if piv != col:
            mat[col], mat[piv] = mat[piv], mat[col]
            det = -det
        pivot = mat[col][col]
        det = det * pivot
        inv = pivot.inverse()
        for r in range(col + 1, size):
            if mat[r][col]:
                factor = mat[r][col] * inv
                mat[r] = [a - factor * b for a, b in zip(mat[r], mat[col])]
    return det
