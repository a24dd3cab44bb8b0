"""Support analysis of convolutions on the circle.

Given distributions f, g whose supports lie in the rotation orbits R_n(I),
R_n(J) of short arcs, the support of f*g lies in R_n(K) for a subarc K of
I + J.  When K starts strictly after inf I + inf J (a positive gap lambda),
both f and g must carry a root-of-unity symmetry near the start of their
arcs; :func:`analyze_pair` finds those roots (alpha, beta) by enumeration and
records every vanishing / infimum fact it relies on as a certificate.  The
sup side (gap rho at the end of K) is handled the same way.

The module also covers the n = 2 equivalence check, the decomposition of f
when f * f(-.) is supported in {0, 1/2}, and the support of convolution
powers.

Angles are in turns throughout (pi is 1/2).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .circle import Arc, arc_sum, lift_into, minimal_covering_arc, relift
from .cyclotomic import CycloNumber, determinant, root_of_unity
from .distribution import (
    Distribution,
    convolve,
    convolve_power,
    inf_supp_within,
    reflect,
    restrict,
    shift,
    sup_supp_within,
    symmetrize,
)
from .errors import HypothesisViolation, TheoremViolation

__all__ = [
    "Certificate",
    "CorollaryVerdict",
    "Decomposition",
    "TitchmarshReport",
    "analyze_pair",
    "analyze_power",
    "analyze_reflection",
    "check_corollary_n2",
    "lemma_alpha",
    "make_zero_divisors",
    "minimal_hull",
    "root_vandermonde_det",
    "root_vandermonde_product",
]

log = logging.getLogger(__name__)

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


@dataclass(frozen=True)
class Certificate:
    """One verified fact about a symmetrized distribution on an open window.

    ``claim`` is ``"vanishes"``, ``"inf"`` or ``"sup"``; for the last two,
    ``value`` is the lift the infimum / supremum must equal.
    """

    name: str
    subject: str
    root: CycloNumber
    window: Arc
    claim: str
    value: Optional[Fraction] = None
    verified: bool = False


@dataclass(frozen=True)
class TitchmarshReport:
    n: int
    I: Arc
    J: Arc
    K: Optional[Arc]
    lam: Optional[Fraction]
    rho: Optional[Fraction]
    lam_max: Optional[Fraction] = None
    alpha: Optional[CycloNumber] = None
    beta: Optional[CycloNumber] = None
    alpha_sup: Optional[CycloNumber] = None
    beta_sup: Optional[CycloNumber] = None
    certificates: tuple = ()

    @property
    def annihilated(self) -> bool:
        return self.K is None


@dataclass(frozen=True)
class Decomposition:
    """f = mu + S_{1/2} mu + nu - S_{1/2} nu, with mu and nu point-supported."""

    I: Arc
    mu: Distribution
    nu: Distribution
    alpha_case: Optional[int]


@dataclass(frozen=True)
class CorollaryVerdict:
    """Both sides of the n = 2 equivalence, evaluated independently.

    ``lhs`` is None when f * g = 0 (the equivalence is then vacuous).
    """

    report: TitchmarshReport
    lhs: Optional[bool]
    rhs: bool
    alpha: Optional[int]
    lam_rhs: Optional[Fraction]
    if_direction: Optional[bool]
    agree: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "agree", self.lhs is None or self.lhs == self.rhs)

    @property
    def annihilated(self) -> bool:
        return self.lhs is None


def _vanishes(f: Distribution, window: Arc) -> bool:
    return restrict(f, window, "open").is_zero()


def minimal_hull(f: Distribution, n: int, within: Optional[tuple] = None) -> Arc:
    """Shortest closed arc I with supp f in R_n(I).

    ``within=(lo, hi)`` re-lifts the canonical arc by a multiple of 1/n (and
    whole turns) into the open interval (lo, hi); HypothesisViolation if no
    rotate fits.
    """
    if f.is_zero():
        raise HypothesisViolation("minimal hull of the zero distribution is undefined")
    hull = minimal_covering_arc(f.support(), n)
    if within is None:
        return hull
    lifted = relift(hull, n, *within)
    if lifted is None:
        raise HypothesisViolation(f"no rotate of {hull} fits in ({within[0]}, {within[1]})")
    return lifted


def _check_hull(f: Distribution, n: int, arc: Optional[Arc], name: str) -> Arc:
    hull = minimal_hull(f, n)
    if arc is None:
        return hull
    if arc.length != hull.length or any(lift_into(x, arc, n) is None for x in f.support()):
        raise HypothesisViolation(f"{name} = {arc} is not a minimal arc for R_{n}")
    return arc


def _lifts(d: Distribution, arc: Arc) -> list:
    return [lift_into(x, arc) for x in d.support()]


def lemma_alpha(comps: Sequence[Distribution], n: int, arc: Optional[Arc] = None) -> CycloNumber:
    """An n-th root of unity alpha with inf supp sum alpha^j f_j = min_j inf supp f_j.

    The components must live on a common arc (``arc``; by default the
    shortest arc holding all their supports).  At the common infimum a, the
    coefficient vectors across components form a nonzero vector, and the
    Vandermonde matrix of the n-th roots is invertible, so some root leaves a
    nonzero weighted sum there.
    """
    if len(comps) != n:
        raise ValueError(f"expected {n} components, got {len(comps)}")
    points = [x for c in comps for x in c.support()]
    if not points:
        raise HypothesisViolation("lemma_alpha needs a nonzero component")
    arc = minimal_covering_arc(points, 1) if arc is None else arc
    lifts = []
    for c in comps:
        for y in _lifts(c, arc):
            if y is None:
                raise HypothesisViolation(f"component support leaves the arc {arc}")
            lifts.append(y)
    a = min(lifts)
    orders = sorted({p for c in comps for (x, p), _ in c if x == a % 1})
    vectors = {p: [c.coeff(a, p) for c in comps] for p in orders}
    for k in range(n):
        alpha = root_of_unity(k, n)
        for p, vec in vectors.items():
            total = sum((v * alpha ** j for j, v in enumerate(vec)), CycloNumber.coerce(0))
            if total:
                return alpha
    raise TheoremViolation(f"no {n}-th root of unity keeps the infimum {a}",
                           instance={"components": list(comps), "n": n})


def _search_root(n, pred) -> Optional[CycloNumber]:
    for k in range(n):
        alpha = root_of_unity(k, n)
        if pred(alpha):
            return alpha
    return None


def _certify(cert: Certificate, f: Distribution, g: Distribution, n: int) -> Certificate:
    subject = f if cert.subject == "f" else g
    sym = symmetrize(subject, n, cert.root)
    if cert.claim == "vanishes":
        ok = _vanishes(sym, cert.window)
    elif cert.claim == "inf":
        ok = inf_supp_within(sym, cert.window) == cert.value
    else:
        ok = sup_supp_within(sym, cert.window) == cert.value
    return Certificate(cert.name, cert.subject, cert.root, cert.window, cert.claim,
                       cert.value, ok)


def analyze_pair(f: Distribution, g: Distribution, n: int, *,
                 I: Optional[Arc] = None, J: Optional[Arc] = None,
                 lam: Optional[Fraction] = None) -> TitchmarshReport:
    """Locate supp f*g inside R_n(I + J) and certify the symmetries behind any gap.

    I and J default to the canonical minimal hulls; explicit minimal arcs may
    be passed instead.  ``lam`` optionally requests certificates for a smaller
    gap than the largest one (0 < lam <= lam_max).
    """
    if n < 1:
        raise HypothesisViolation(f"n must be positive, got {n}", bound="n >= 1")
    if f.is_zero() or g.is_zero():
        raise HypothesisViolation("f and g must be nonzero")
    I = _check_hull(f, n, I, "I")
    J = _check_hull(g, n, J, "J")
    period = Fraction(1, n)
    if I.length + J.length >= period:
        raise HypothesisViolation(
            f"|I| + |J| = {I.length + J.length} is not below 1/{n}", bound="|I| + |J| < 1/n")

    h = convolve(f, g)
    if h.is_zero():
        return TitchmarshReport(n, I, J, None, None, None)

    S = arc_sum(I, J)
    lifts = [lift_into(x, S, n) for x in h.support()]
    if any(y is None for y in lifts):
        raise TheoremViolation("supp f*g is not inside R_n(I + J)",
                               instance={"f": f, "g": g, "n": n})
    K = Arc.between(min(lifts), max(lifts))
    lam_max = K.inf - S.inf
    rho = S.sup - K.sup
    if lam is not None:
        lam = Fraction(lam)
        if not 0 < lam <= lam_max:
            raise HypothesisViolation(f"requested lambda {lam} outside (0, {lam_max}]")
    else:
        lam = lam_max

    certs = []
    alpha = beta = alpha_sup = beta_sup = None
    if lam > 0:
        wf = Arc.between(I.sup - period, I.inf + lam)
        wg = Arc.between(J.sup - period, J.inf + lam)
        alpha = _search_root(n, lambda a: _vanishes(symmetrize(f, n, a), wf)
                             and inf_supp_within(symmetrize(g, n, a), wg) == J.inf)
        beta = _search_root(n, lambda b: _vanishes(symmetrize(g, n, b), wg)
                            and inf_supp_within(symmetrize(f, n, b), wf) == I.inf)
        if alpha is None or beta is None:
            raise TheoremViolation(f"lambda = {lam} > 0 but no certificate root found",
                                   instance={"f": f, "g": g, "n": n})
        certs += [
            Certificate("alpha.f", "f", alpha, wf, "vanishes"),
            Certificate("alpha.g", "g", alpha, wg, "inf", J.inf),
            Certificate("beta.f", "f", beta, wf, "inf", I.inf),
            Certificate("beta.g", "g", beta, wg, "vanishes"),
        ]
    if rho > 0:
        wf = Arc.between(I.sup - rho, I.inf + period)
        wg = Arc.between(J.sup - rho, J.inf + period)
        alpha_sup = _search_root(n, lambda a: _vanishes(symmetrize(f, n, a), wf)
                                 and sup_supp_within(symmetrize(g, n, a), wg) == J.sup)
        beta_sup = _search_root(n, lambda b: _vanishes(symmetrize(g, n, b), wg)
                                and sup_supp_within(symmetrize(f, n, b), wf) == I.sup)
        if alpha_sup is None or beta_sup is None:
            raise TheoremViolation(f"rho = {rho} > 0 but no certificate root found",
                                   instance={"f": f, "g": g, "n": n})
        certs += [
            Certificate("alpha_sup.f", "f", alpha_sup, wf, "vanishes"),
            Certificate("alpha_sup.g", "g", alpha_sup, wg, "sup", J.sup),
            Certificate("beta_sup.f", "f", beta_sup, wf, "sup", I.sup),
            Certificate("beta_sup.g", "g", beta_sup, wg, "vanishes"),
        ]

    certs = tuple(_certify(c, f, g, n) for c in certs)
    if not all(c.verified for c in certs):
        raise TheoremViolation("certificate failed re-verification",
                               instance={"f": f, "g": g, "n": n})
    if (alpha is not None and alpha == beta) or (alpha_sup is not None and alpha_sup == beta_sup):
        raise TheoremViolation("certificate roots coincide", instance={"f": f, "g": g, "n": n})
    if lam_max < 0 or rho < 0 or lam_max + rho != I.length + J.length - K.length:
        raise TheoremViolation("inconsistent support gaps", instance={"f": f, "g": g, "n": n})
    return TitchmarshReport(n, I, J, K, lam, rho, lam_max, alpha, beta, alpha_sup, beta_sup, certs)


def check_corollary_n2(f: Distribution, g: Distribution) -> CorollaryVerdict:
    """Evaluate both sides of the n = 2 equivalence for (f, g).

    Left: the gap lambda from :func:`analyze_pair` is positive.  Right: for
    some a = +-1 and some lambda' > 0, f + a S_{1/2} f vanishes on
    (sup I - 1/2, inf I + lambda') and g - a S_{1/2} g on
    (sup J - 1/2, inf J + lambda').  For the right side the largest such
    lambda' is reported, and the convolution f*g is checked to vanish on
    (sup I + sup J - 1/2, inf I + inf J + lambda').
    """
    report = analyze_pair(f, g, 2)
    I, J = report.I, report.J

    def gap(d: Distribution, arc: Arc):
        # distance from inf arc to the first support point on that copy
        ys = _lifts(restrict(d, arc), arc)
        return min(ys) - arc.inf if ys else None

    best_alpha, best = None, Fraction(0)
    unbounded = None
    for a in (1, -1):
        lf = gap(f + shift(f, HALF) * a, I)
        lg = gap(g - shift(g, HALF) * a, J)
        if lf is None and lg is None:
            unbounded = a
            continue
        lam_a = min(x for x in (lf, lg) if x is not None)
        if lam_a > best:
            best_alpha, best = a, lam_a

    if_direction = None
    if best_alpha is not None:
        window = Arc.between(I.sup + J.sup - HALF, I.inf + J.inf + best)
        if_direction = _vanishes(convolve(f, g), window)
        if not if_direction:
            raise TheoremViolation("convolution does not vanish on the lambda' window",
                                   instance={"f": f, "g": g, "n": 2})
    rhs = best_alpha is not None or unbounded is not None
    lhs = None if report.annihilated else report.lam > 0
    verdict = CorollaryVerdict(report, lhs, rhs,
                               best_alpha if best_alpha is not None else unbounded,
                               best if best_alpha is not None else None, if_direction)
    if not verdict.agree:
        raise TheoremViolation(f"n = 2 equivalence fails: lambda > 0 is {lhs}, symmetry is {rhs}",
                               instance={"f": f, "g": g, "n": 2})
    return verdict


def analyze_reflection(f: Distribution, conjugate: bool = False) -> Optional[Decomposition]:
    """Decompose f when supp f * f(-.) lies in {0, 1/2}.

    Requires the minimal R_2 hull of f to re-lift into (-1/4, 1/4) with
    length below 1/4.  Returns None when supp f * f(-.) is not inside
    {0, 1/2}.  ``conjugate`` uses conj(f(-w)) as the reflection.
    """
    if f.is_zero():
        raise HypothesisViolation("f must be nonzero")
    hull = minimal_hull(f, 2)
    if hull.length >= QUARTER:
        raise HypothesisViolation(f"|I| = {hull.length} is not below 1/4", bound="|I| < 1/4")
    I = minimal_hull(f, 2, within=(-QUARTER, QUARTER))

    fs = reflect(f)
    if conjugate:
        fs = Distribution({k: c.conjugate() for k, c in fs}, fs.field_order)
    if any(x not in (0, HALF) for x in convolve(f, fs).support()):
        return None

    allowed = {I.inf % 1, I.sup % 1, (I.inf + HALF) % 1, (I.sup + HALF) % 1}
    if not set(f.support()) <= allowed:
        raise TheoremViolation("support is not inside the four endpoint points",
                               instance={"f": f})

    Sf = shift(f, HALF)
    if I.is_point():
        mu = restrict((f + Sf) / 2, I)
        nu = restrict((f - Sf) / 2, I)
        alpha_case = None
    else:
        alpha_case = None
        for a in (1, -1):
            if (_vanishes(f + Sf * a, Arc.between(I.sup - HALF, I.sup))
                    and _vanishes(f - Sf * a, Arc.between(I.inf, I.inf + HALF))):
                alpha_case = a
                break
        if alpha_case is None:
            raise TheoremViolation("no sign case fits the reflection windows", instance={"f": f})
        upper = restrict(f, Arc.between(I.inf, QUARTER), "open")
        lower = restrict(f, Arc.between(-QUARTER, I.sup), "open")
        mu, nu = (upper, lower) if alpha_case == 1 else (lower, upper)

    if len(mu.support()) > 1 or len(nu.support()) > 1:
        raise TheoremViolation("mu or nu is not supported at a point", instance={"f": f})
    if mu + shift(mu, HALF) + nu - shift(nu, HALF) != f:
        raise TheoremViolation("decomposition does not reconstruct f", instance={"f": f})
    return Decomposition(I, mu, nu, alpha_case)


def analyze_power(f: Distribution, n: int, p: int) -> Arc:
    """The smallest K inside pI with supp f^{*p} in R_n(K); always equals pI."""
    if p < 1 or n < 1:
        raise HypothesisViolation(f"need n >= 1 and p >= 1, got n = {n}, p = {p}")
    I = minimal_hull(f, n)
    if I.length * p * n >= 1:
        raise HypothesisViolation(f"|I| = {I.length} is not below 1/({p}*{n})",
                                  bound="|I| < 1/(pn)")
    pI = I
    for _ in range(p - 1):
        pI = arc_sum(pI, I)
    h = convolve_power(f, p)
    lifts = [lift_into(x, pI, n) for x in h.support()]
    if not lifts or any(y is None for y in lifts):
        raise TheoremViolation("supp f^{*p} is not inside R_n(pI)",
                               instance={"f": f, "n": n, "p": p})
    K = Arc.between(min(lifts), max(lifts))
    if K != pI:
        raise TheoremViolation(f"K = {K} differs from pI = {pI}",
                               instance={"f": f, "n": n, "p": p})
    return K


def make_zero_divisors(f: Distribution, g: Distribution) -> tuple[Distribution, Distribution]:
    """(f + S_{1/2} f, g - S_{1/2} g), whose convolution is zero."""
    return f + shift(f, HALF), g - shift(g, HALF)


def root_vandermonde_det(n: int) -> CycloNumber:
    """det [gamma^(j m)] over rows m = 1..n, columns j = 0..n-1, gamma = zeta_n.

    Nonzero because the nodes gamma^1, ..., gamma^n are distinct; this is what
    makes the component decomposition along an R_n orbit unique.
    """
    return determinant([[root_of_unity(j * m, n) for j in range(n)] for m in range(1, n + 1)])


def root_vandermonde_product(n: int) -> CycloNumber:
    """prod over 1 <= j < k <= n of (gamma^k - gamma^j)."""
    out = CycloNumber.coerce(1)
    for k in range(1, n + 1):
        for j in range(1, k):
            out = out * (root_of_unity(k, n) - root_of_unity(j, n))
    return out
