"""Independent verification of the engine's results.

Nothing here calls the engine's shift / restrict / symmetrize / hull /
certificate code.  The oracle works on raw ``(angle, order) -> coefficient``
maps with its own loops:

* convolution by the naive double loop, cross-checked through Fourier
  coefficients, computed in the group ring Q[x]/(x^M - 1) and only reduced
  modulo Phi_M when the two sides differ as group-ring elements;
* support facts by brute-force enumeration of lifts.

Every comparison is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .cyclotomic import CycloNumber
from .distribution import Distribution, convolve

__all__ = [
    "OracleVerdict",
    "check_convolution",
    "check_support_theorems",
    "naive_convolution",
]


@dataclass(frozen=True)
class OracleVerdict:
    """Outcome of one oracle check.

    On failure ``counterexample`` holds what is needed to reproduce it and
    ``failing_mode`` the first Fourier mode that disagreed (if any).
    """

    name: str
    passed: bool
    m_max: int = 0
    failing_mode: Optional[int] = None
    detail: str = ""
    counterexample: Optional[dict] = None

    def to_dict(self) -> dict:
        out = {"name": self.name, "passed": self.passed, "m_max": self.m_max,
               "failing_mode": self.failing_mode, "detail": self.detail}
        return out


def _terms(f: Distribution) -> dict:
    return {k: c for k, c in f.items()}


def _accumulate(out: dict, key, c):
    if key in out:
        s = out[key] + c
        if s:
            out[key] = s
        else:
            del out[key]
    elif c:
        out[key] = c


def naive_convolution(f: Distribution, g: Distribution) -> dict:
    out: dict = {}
    for (x, p), c in f.items():
        for (y, q), d in g.items():
            _accumulate(out, ((x + y) % 1, p + q), c * d)
    return out


def _rotsum(terms: dict, n: int, alpha: CycloNumber) -> dict:
    # sum_k alpha^k (term map rotated by k/n)
    out: dict = {}
    w = CycloNumber.coerce(1)
    for k in range(n):
        for (x, p), c in terms.items():
            _accumulate(out, ((x + Fraction(k, n)) % 1, p), c * w)
        w = w * alpha
    return out


def _lift_open(x: Fraction, lo: Fraction, hi: Fraction) -> Optional[Fraction]:
    y = x + math.floor(lo - x) + 1
    return y if y < hi else None


def _lift_closed(x: Fraction, lo: Fraction, hi: Fraction, n: int = 1) -> Optional[Fraction]:
    for k in range(n):
        y = x + Fraction(k, n)
        y += math.ceil(lo - y)
        if y <= hi:
            return y
    return None


def _locations(terms: dict) -> set:
    return {x for x, _ in terms}


def _min_cover_length(points, n: int) -> Fraction:
    period = Fraction(1, n)
    res = {x % period for x in points}
    return min(max((r - s) % period for r in res) for s in res)


# -- Fourier side ---------------------------------------------------------


def _coeff_ring(c: CycloNumber, M: int) -> dict:
    step = M // c.order
    return {k * step: v for k, v in enumerate(c.coeffs) if v}


def _fourier_ring(terms: dict, m: int, M: int) -> dict:
    out: dict = {}
    for (x, p), c in terms.items():
        shift = (p * (M // 4) - m * x.numerator * (M // x.denominator)) % M
        scale = m ** p
        if not scale:
            continue
        for e, v in _coeff_ring(c, M).items():
            _accumulate(out, (e + shift) % M, v * scale)
    return out


def _ring_mul(a: dict, b: dict, M: int) -> dict:
    out: dict = {}
    for e1, v1 in a.items():
        for e2, v2 in b.items():
            _accumulate(out, (e1 + e2) % M, v1 * v2)
    return out


def _ring_equal(a: dict, b: dict, M: int) -> bool:
    if a == b:
        return True
    diff = [0] * M
    for e, v in a.items():
        diff[e] += v
    for e, v in b.items():
        diff[e] -= v
    return CycloNumber(diff, M).is_zero()


def _field_order(*dists: Distribution) -> int:
    M = 4
    for d in dists:
        M = math.lcm(M, d.field_order)
        for (x, _), _c in d.items():
            M = math.lcm(M, x.denominator)
    return M


def check_convolution(f: Distribution, g: Distribution, m_max: int = 16,
                      product: Optional[Distribution] = None) -> OracleVerdict:
    """Check the engine's f*g against the naive double loop and, mode by mode
    for |m| <= m_max, against the product of Fourier coefficients."""
    if m_max < 1:
        raise ValueError(f"m_max must be at least 1, got {m_max}")
    h = convolve(f, g) if product is None else product
    naive = naive_convolution(f, g)
    engine = _terms(h)
    cex = {"f": f, "g": g}
    if naive.keys() != engine.keys() or any(naive[k] != engine[k] for k in naive):
        return OracleVerdict("convolution", False, m_max, None,
                             "engine product differs from naive double loop", cex)
    M = _field_order(f, g, h)
    tf, tg = _terms(f), _terms(g)
    for m in range(-m_max, m_max + 1):
        lhs = _fourier_ring(engine, m, M)
        rhs = _ring_mul(_fourier_ring(tf, m, M), _fourier_ring(tg, m, M), M)
        if not _ring_equal(lhs, rhs, M):
            return OracleVerdict("convolution", False, m_max, m,
                                 "Fourier coefficient of f*g is not the product", cex)
    return OracleVerdict("convolution", True, m_max)


# -- support theorems -------------------------------------------------------


def _fail(name, detail, **cex) -> OracleVerdict:
    return OracleVerdict(name, False, detail=detail, counterexample=cex)


def _check_hull(terms: dict, arc, n: int) -> Optional[str]:
    pts = _locations(terms)
    if any(_lift_closed(x, arc.inf, arc.sup, n) is None for x in pts):
        return f"support not covered by R_{n}({arc})"
    if arc.length != _min_cover_length(pts, n):
        return f"arc {arc} is not minimal"
    return None


def _check_pair(report, f: Distribution, g: Distribution) -> OracleVerdict:
    name = "pair"
    n = report.n
    tf, tg = _terms(f), _terms(g)
    for terms, arc in ((tf, report.I), (tg, report.J)):
        err = _check_hull(terms, arc, n)
        if err:
            return _fail(name, err, f=f, g=g, n=n)
    h = naive_convolution(f, g)
    if not h:
        if report.K is not None:
            return _fail(name, "engine reports K but f*g = 0", f=f, g=g, n=n)
        return OracleVerdict(name, True)
    if report.K is None:
        return _fail(name, "engine reports annihilation but f*g != 0", f=f, g=g, n=n)
    lo = report.I.inf + report.J.inf
    hi = report.I.sup + report.J.sup
    lifts = [_lift_closed(x, lo, hi, n) for x in _locations(h)]
    if any(y is None for y in lifts):
        return _fail(name, "supp f*g escapes R_n(I+J)", f=f, g=g, n=n)
    k_lo, k_hi = min(lifts), max(lifts)
    if (report.K.inf, report.K.sup) != (k_lo, k_hi):
        return _fail(name, f"K mismatch: engine {report.K}, oracle [{k_lo}, {k_hi}]", f=f, g=g, n=n)
    lam, rho = k_lo - lo, hi - k_hi
    if report.lam_max != lam or report.rho != rho:
        return _fail(name, f"gap mismatch: oracle lambda {lam}, rho {rho}", f=f, g=g, n=n)

    expected = set()
    if report.lam > 0:
        expected |= {"alpha.f", "alpha.g", "beta.f", "beta.g"}
    if rho > 0:
        expected |= {"alpha_sup.f", "alpha_sup.g", "beta_sup.f", "beta_sup.g"}
    if {c.name for c in report.certificates} != expected:
        return _fail(name, "certificate set incomplete", f=f, g=g, n=n)
    for a, b in ((report.alpha, report.beta), (report.alpha_sup, report.beta_sup)):
        if a is None and b is None:
            continue
        if a is None or b is None or a == b or a ** n != 1 or b ** n != 1:
            return _fail(name, "certificate roots invalid", f=f, g=g, n=n)

    if report.lam is not None and not (report.lam == 0 == lam or 0 < report.lam <= lam):
        return _fail(name, f"requested lambda {report.lam} outside (0, {lam}]", f=f, g=g, n=n)
    period = Fraction(1, n)
    arcs = {"f": report.I, "g": report.J}
    for cert in report.certificates:
        a = arcs[cert.subject]
        if cert.name.startswith("alpha_sup") or cert.name.startswith("beta_sup"):
            want = (a.sup - rho, a.inf + period)
        else:
            want = (a.sup - period, a.inf + report.lam)
        if (cert.window.inf, cert.window.sup) != want:
            return _fail(name, f"certificate {cert.name} uses the wrong window", f=f, g=g, n=n)

    for cert in report.certificates:
        terms = tf if cert.subject == "f" else tg
        sym = _rotsum(terms, n, cert.root)
        w = cert.window
        inside = [y for y in (_lift_open(x, w.inf, w.sup) for x in _locations(sym)) if y is not None]
        if cert.claim == "vanishes":
            ok = not inside
        elif cert.claim == "inf":
            ok = bool(inside) and min(inside) == cert.value
        else:
            ok = bool(inside) and max(inside) == cert.value
        if not ok:
            return _fail(name, f"certificate {cert.name} does not hold", f=f, g=g, n=n)
    if report.lam > 0 and not (report.alpha is not None and report.beta is not None):
        return _fail(name, "lambda > 0 without certificates", f=f, g=g, n=n)
    return OracleVerdict(name, True)


def _check_power(K, f: Distribution, n: int, p: int) -> OracleVerdict:
    name = "power"
    tf = _terms(f)
    pts = sorted(_locations(tf))
    period = Fraction(1, n)
    length = _min_cover_length(pts, n)
    start = min(s % period for s in pts
                if max((r - s) % period for r in pts) == length)
    h = tf
    for _ in range(p - 1):
        h = _naive_terms(h, tf)
    lo, hi = p * start, p * (start + length)
    lifts = [_lift_closed(x, lo, hi, n) for x in _locations(h)]
    if not lifts or any(y is None for y in lifts):
        return _fail(name, "supp f^{*p} escapes R_n(pI)", f=f, n=n, p=p)
    if (min(lifts), max(lifts)) != (lo, hi):
        return _fail(name, f"oracle K = [{min(lifts)}, {max(lifts)}] is not pI", f=f, n=n, p=p)
    if (K.inf, K.sup) != (lo, hi):
        return _fail(name, f"engine K = {K} differs from oracle [{lo}, {hi}]", f=f, n=n, p=p)
    return OracleVerdict(name, True)


def _naive_terms(a: dict, b: dict) -> dict:
    out: dict = {}
    for (x, p), c in a.items():
        for (y, q), d in b.items():
            _accumulate(out, ((x + y) % 1, p + q), c * d)
    return out


def _check_reflection(dec, f: Distribution) -> OracleVerdict:
    name = "reflection"
    tf = _terms(f)
    tfs = {((-x) % 1, p): (-c if p % 2 else c) for (x, p), c in tf.items()}
    half = Fraction(1, 2)
    if not _locations(_naive_terms(tf, tfs)) <= {0, half}:
        if dec is not None:
            return _fail(name, "engine decomposed an inapplicable instance", f=f)
        return OracleVerdict(name, True, detail="not applicable")
    if dec is None:
        return _fail(name, "engine declined an applicable instance", f=f)
    I = dec.I
    if not (-Fraction(1, 4) < I.inf and I.sup < Fraction(1, 4)):
        return _fail(name, f"I = {I} is not inside (-1/4, 1/4)", f=f)
    err = _check_hull(tf, I, 2)
    if err:
        return _fail(name, err, f=f)
    four = {I.inf % 1, I.sup % 1, (I.inf + half) % 1, (I.sup + half) % 1}
    if not _locations(tf) <= four:
        return _fail(name, "support is not inside the four endpoint points", f=f)
    tmu, tnu = _terms(dec.mu), _terms(dec.nu)
    if len(_locations(tmu)) > 1 or len(_locations(tnu)) > 1:
        return _fail(name, "mu or nu not point-supported", f=f)
    rebuilt: dict = {}
    for terms, sign in ((tmu, 1), (tnu, -1)):
        for (x, p), c in terms.items():
            _accumulate(rebuilt, (x, p), c)
            _accumulate(rebuilt, ((x + half) % 1, p), c * sign)
    if rebuilt.keys() != tf.keys() or any(rebuilt[k] != tf[k] for k in tf):
        return _fail(name, "mu + S mu + nu - S nu does not rebuild f", f=f)
    return OracleVerdict(name, True)


def _check_lemma(alpha: CycloNumber, comps, n: int) -> OracleVerdict:
    name = "lemma"
    if alpha ** n != 1:
        return _fail(name, "alpha is not an n-th root of unity", n=n)
    pts = sorted({x for c in comps for x in _locations(_terms(c))})
    length = _min_cover_length(pts, 1)
    start = min(s for s in pts if max((r - s) % 1 for r in pts) == length)
    total: dict = {}
    w = CycloNumber.coerce(1)
    for c in comps:
        for key, v in _terms(c).items():
            _accumulate(total, key, v * w)
        w = w * alpha
    if not total:
        return _fail(name, "weighted sum vanishes", n=n)
    lift = lambda x: _lift_closed(x, start, start + length)
    got = min(lift(x) for x in _locations(total))
    want = min(lift(x) for x in pts)
    if got != want:
        return _fail(name, f"inf of weighted sum {got} != min inf {want}", n=n)
    return OracleVerdict(name, True)


def _check_corollary(verdict, f: Distribution, g: Distribution) -> OracleVerdict:
    name = "corollary_n2"
    pair = _check_pair(verdict.report, f, g)
    if not pair.passed:
        return pair
    report = verdict.report
    half = Fraction(1, 2)
    tf, tg = _terms(f), _terms(g)
    rhs = False
    for a in (1, -1):
        F, G = dict(tf), dict(tg)
        for (x, p), c in tf.items():
            _accumulate(F, ((x + half) % 1, p), c * a)
        for (x, p), c in tg.items():
            _accumulate(G, ((x + half) % 1, p), c * -a)

        def first(terms, arc):
            ys = [_lift_closed(x, arc.inf, arc.sup) for x in _locations(terms)]
            ys = [y for y in ys if y is not None]
            return min(ys) - arc.inf if ys else None

        lf, lg = first(F, report.I), first(G, report.J)
        finite = [v for v in (lf, lg) if v is not None]
        if not finite or min(finite) > 0:
            rhs = True
    if report.K is None:
        if verdict.lhs is not None:
            return _fail(name, "annihilation not flagged", f=f, g=g)
        return OracleVerdict(name, True)
    lhs = report.lam_max > 0
    if verdict.lhs != lhs or verdict.rhs != rhs or lhs != rhs:
        return _fail(name, f"oracle sides: lambda > 0 {lhs}, symmetry {rhs}", f=f, g=g)
    return OracleVerdict(name, True)


def check_support_theorems(result, *inputs, n: Optional[int] = None,
                           p: Optional[int] = None) -> OracleVerdict:
    """Recompute the support facts behind an analyzer result by brute force.

    Dispatches on the result type:

    * ``TitchmarshReport`` with inputs ``(f, g)``;
    * ``CorollaryVerdict`` with inputs ``(f, g)``;
    * ``Decomposition`` (or None for "not applicable") with input ``(f,)``;
    * an ``Arc`` returned by the power analyzer, input ``(f,)``, keywords n, p;
    * a ``CycloNumber`` from the root selector ``lemma_alpha``, inputs ``(components,)``, keyword n.
    """
    from .circle import Arc
    from .titchmarsh import CorollaryVerdict, Decomposition, TitchmarshReport

    if isinstance(result, TitchmarshReport):
        return _check_pair(result, *inputs)
    if isinstance(result, CorollaryVerdict):
        return _check_corollary(result, *inputs)
    if isinstance(result, Decomposition) or (result is None and len(inputs) == 1):
        return _check_reflection(result, *inputs)
    if isinstance(result, Arc):
        return _check_power(result, inputs[0], n, p)
    if isinstance(result, CycloNumber):
        return _check_lemma(result, inputs[0], n)
    raise TypeError(f"no support oracle for {type(result).__name__}")
