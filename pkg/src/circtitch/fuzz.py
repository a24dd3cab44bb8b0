"""Randomized falsification suites.

Each suite draws instances from a seeded generator, runs the engine, and
cross-checks the result with :mod:`circtitch.oracle`.  Any engine
``TheoremViolation`` or oracle disagreement is a failure; the failing
instance is shrunk term by term before it is reported.

Trials are seeded individually from ``(seed, suite, n, p, index)``, so a run
is reproducible and independent of evaluation order.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from .cyclotomic import CycloNumber, root_of_unity
from .distribution import Distribution, convolve, delta, reflect, shift, symmetrize
from .errors import HypothesisViolation, TheoremViolation
from .oracle import check_convolution, check_support_theorems
from .titchmarsh import (
    analyze_pair,
    analyze_power,
    analyze_reflection,
    check_corollary_n2,
    lemma_alpha,
    make_zero_divisors,
    root_vandermonde_det,
    root_vandermonde_product,
)

__all__ = [
    "DEFAULT_SUITES",
    "FuzzOptions",
    "SuiteResult",
    "run_suite",
    "shrink",
    "vandermonde_suite",
]

GRID = 12  # pair instances put angles on multiples of 1/(GRID * n)


@dataclass
class FuzzOptions:
    max_points: int = 8
    max_order: int = 3
    mix: float = 0.5  # share of symmetry-seeded instances in the pair suites
    m_max: int = 16
    oracle: bool = True


@dataclass
class SuiteResult:
    suite: str
    n: Optional[int] = None
    p: Optional[int] = None
    trials: int = 0
    skipped: int = 0
    hits: int = 0
    failure: Optional[dict] = None
    message: str = ""
    seconds: float = field(default=0.0, compare=False)

    @property
    def ok(self) -> bool:
        return self.failure is None

    def line(self) -> str:
        tag = self.suite
        if self.n is not None:
            tag += f" n={self.n}"
        if self.p is not None:
            tag += f" p={self.p}"
        status = "ok" if self.ok else f"VIOLATION: {self.message}"
        return (f"{tag}: {self.trials} trials, {self.skipped} skipped, "
                f"{self.hits} interesting, {status}")


class OracleFailure(AssertionError):
    pass


# -- generators -------------------------------------------------------------


def _coeff(rng: random.Random, n: int = 1):
    r = rng.random()
    if r < 0.7:
        return rng.choice([-3, -2, -1, 1, 2, 3])
    if r < 0.85:
        return Fraction(rng.choice([-3, -1, 1, 2, 5]), rng.choice([2, 3, 7]))
    if r < 0.95:
        re, im = rng.randint(-2, 2), rng.choice([-2, -1, 1, 2])
        return root_of_unity(1, 4) * im + re
    return root_of_unity(rng.randrange(max(n, 1)), max(n, 1)) * rng.choice([-2, -1, 1, 2])


def _on_arc(rng, start: Fraction, units: int, den: int, n: int, npoints: int,
            max_order: int) -> Distribution:
    """Random atoms over the n rotates of [start, start + units/den], both ends used.

    Redrawn until nonzero (coinciding atoms can cancel).
    """
    while True:
        f = _draw_on_arc(rng, start, units, den, n, npoints, max_order)
        if not f.is_zero():
            return f


def _draw_on_arc(rng, start, units, den, n, npoints, max_order) -> Distribution:
    if units == 0:
        offsets = [0] * max(npoints, 1)
    else:
        offsets = [0, units] + [rng.randint(0, units) for _ in range(npoints - 2)]
    terms = []
    for off in offsets:
        x = start + Fraction(off, den) + Fraction(rng.randrange(n), n)
        terms.append(((x, rng.randint(0, max_order)), _coeff(rng, n)))
    return Distribution(terms)


def random_distribution(rng, max_points: int, max_order: int, den: int = 48) -> Distribution:
    k = rng.randint(1, max_points)
    return Distribution([((Fraction(rng.randrange(den), den), rng.randint(0, max_order)),
                          _coeff(rng)) for _ in range(k)])


def generic_pair(rng, n: int, opts: FuzzOptions) -> dict:
    den = n * GRID
    ell = rng.randint(0, GRID - 2)
    m = rng.randint(0, GRID - 2 - ell)
    f = _on_arc(rng, Fraction(rng.randrange(den), den), ell, den, n,
                rng.randint(1, opts.max_points), opts.max_order)
    g = _on_arc(rng, Fraction(rng.randrange(den), den), m, den, n,
                rng.randint(1, opts.max_points), opts.max_order)
    return {"f": f, "g": g, "n": n}


def seeded_pair(rng, n: int, opts: FuzzOptions) -> dict:
    """A pair built so that f and g cancel under different root symmetries at
    the start of their arcs, which forces a positive inf-side gap."""
    den = n * GRID
    ell = rng.randint(1, GRID - 3)
    m = rng.randint(1, GRID - 2 - ell)
    lam0 = rng.randint(1, min(ell, m))
    s = rng.randrange(n)
    t = (s + rng.randrange(1, n)) % n
    alpha, beta = root_of_unity(s, n), root_of_unity(t, n)
    pts = max(opts.max_points // 2, 1)

    starts = []

    def side(root, units):
        a = Fraction(rng.randrange(den), den)
        starts.append(a)
        low = _on_arc(rng, a, lam0 - 1, den, 1, rng.randint(1, pts), opts.max_order)
        # the low part sits on an arc shorter than 1/n, so its symmetrization is nonzero
        out = symmetrize(low, n, root)
        if rng.random() < 0.7:
            out = out + _on_arc(rng, a + Fraction(lam0, den), units - lam0, den, n,
                                rng.randint(1, pts), opts.max_order)
        return out

    f = side(beta, ell)
    g = side(alpha, m)
    return {"f": f, "g": g, "n": n, "lam0": Fraction(lam0, den), "starts": tuple(starts)}


def lemma_family(rng, n: int, opts: FuzzOptions) -> dict:
    den = 48
    start = Fraction(rng.randrange(den), den)
    span = rng.randint(0, 10)
    comps = [dict() for _ in range(n)]
    npts = rng.randint(1, 6)
    for _ in range(npts):
        x = (start + Fraction(rng.randint(0, span), den)) % 1
        key = (x, rng.randint(0, opts.max_order))
        comps[rng.randrange(n)][key] = _coeff(rng, n)
    if rng.random() < 0.5:
        # leading vector c * zeta^(j t) cancels under every root except zeta^(-t)
        key = (start % 1, rng.randint(0, opts.max_order))
        t, c = rng.randrange(n), rng.choice([-2, -1, 1, 3])
        for j in range(n):
            comps[j][key] = root_of_unity(j * t, n) * c
    return {"components": [Distribution(c) for c in comps], "n": n}


def reflection_instance(rng, opts: FuzzOptions) -> dict:
    den = 64
    a = rng.randint(-15, 15)
    b = rng.randint(max(-15, a - 15), min(15, a + 15))

    def point(x):
        orders = rng.sample(range(opts.max_order + 1), rng.randint(1, min(2, opts.max_order + 1)))
        return Distribution([((Fraction(x, den), p), _coeff(rng)) for p in orders])

    r = rng.random()
    mu = point(a) if r > 0.1 else Distribution()
    nu = point(b) if r < 0.1 or r > 0.2 else Distribution()
    half = Fraction(1, 2)
    f = mu + shift(mu, half) + nu - shift(nu, half)
    return {"f": f, "mu": mu, "nu": nu}


def power_instance(rng, n: int, p: int, opts: FuzzOptions) -> dict:
    den = n * p * 8
    f = _on_arc(rng, Fraction(rng.randrange(den), den), rng.randint(0, 7), den, n,
                rng.randint(1, min(opts.max_points, 6)), opts.max_order)
    return {"f": f, "n": n, "p": p}


# -- checks -----------------------------------------------------------------


def _oracle(verdict):
    if not verdict.passed:
        raise OracleFailure(f"oracle {verdict.name}: {verdict.detail}")


def check_zero_divisor(inst: dict, opts: FuzzOptions) -> bool:
    a, b = make_zero_divisors(inst["f"], inst["g"])
    h = convolve(a, b)
    if not h.is_zero():
        raise TheoremViolation("(f + S f) * (g - S g) is not zero")
    if opts.oracle:
        _oracle(check_convolution(a, b, opts.m_max, product=h))
    return not a.is_zero() and not b.is_zero()


def check_lemma(inst: dict, opts: FuzzOptions) -> bool:
    comps, n = inst["components"], inst["n"]
    alpha = lemma_alpha(comps, n)
    total = Distribution()
    for j, c in enumerate(comps):
        total = total + c * alpha ** j
    if total.is_zero():
        raise TheoremViolation("weighted component sum vanishes")
    if opts.oracle:
        _oracle(check_support_theorems(alpha, comps, n=n))
        assembled = Distribution()
        for j, c in enumerate(comps):
            assembled = assembled + shift(c, Fraction(-j, n))
        _oracle(check_convolution(assembled, assembled, opts.m_max))
    return alpha != 1


def check_pair(inst: dict, opts: FuzzOptions) -> bool:
    f, g, n = inst["f"], inst["g"], inst["n"]
    report = analyze_pair(f, g, n)
    lam0 = inst.get("lam0")
    if lam0 is not None and not report.annihilated:
        # converse construction: the seeded cancellation must show up as a gap
        # whenever the hulls start where the template put them
        if report.lam_max < lam0 and _seed_hulls_match(inst, report):
            raise TheoremViolation(f"seeded gap {lam0} not reflected (lambda = {report.lam_max})")
    if opts.oracle:
        _oracle(check_convolution(f, g, opts.m_max))
        _oracle(check_support_theorems(report, f, g))
    return not report.annihilated and report.lam > 0


def _seed_hulls_match(inst, report) -> bool:
    starts = inst.get("starts")
    if starts is None:
        return False
    n = Fraction(1, inst["n"])
    return report.I.inf == starts[0] % n and report.J.inf == starts[1] % n


def check_corollary(inst: dict, opts: FuzzOptions) -> bool:
    f, g = inst["f"], inst["g"]
    verdict = check_corollary_n2(f, g)
    if convolve(f, g).is_zero() != verdict.annihilated or (
            verdict.annihilated and verdict.report.lam is not None):
        raise TheoremViolation("annihilation not flagged as such")
    if not verdict.annihilated and verdict.lhs and verdict.lam_rhs != verdict.report.lam_max:
        raise TheoremViolation(f"symmetry gap {verdict.lam_rhs} != lambda {verdict.report.lam_max}")
    if opts.oracle:
        _oracle(check_convolution(f, g, opts.m_max))
        _oracle(check_support_theorems(verdict, f, g))
    return bool(verdict.lhs)


def check_reflection(inst: dict, opts: FuzzOptions) -> bool:
    f = inst["f"]
    dec = analyze_reflection(f)
    if dec is None:
        raise TheoremViolation("assembled decomposition rejected as not applicable")
    if opts.oracle:
        _oracle(check_convolution(f, reflect(f), opts.m_max))
        _oracle(check_support_theorems(dec, f))
    return not dec.I.is_point()


def check_power(inst: dict, opts: FuzzOptions) -> bool:
    f, n, p = inst["f"], inst["n"], inst["p"]
    K = analyze_power(f, n, p)
    if opts.oracle:
        _oracle(check_convolution(f, f, opts.m_max))
        _oracle(check_support_theorems(K, f, n=n, p=p))
    return not K.is_point()


# -- suites -----------------------------------------------------------------


def _gen_pair(rng, n, opts):
    return seeded_pair(rng, n, opts) if rng.random() < opts.mix else generic_pair(rng, n, opts)


SUITES: dict[str, tuple[Callable, Callable]] = {
    "zero_divisor": (lambda rng, n, p, o: {"f": random_distribution(rng, o.max_points, o.max_order),
                                           "g": random_distribution(rng, o.max_points, o.max_order)},
                     check_zero_divisor),
    "lemma": (lambda rng, n, p, o: lemma_family(rng, n, o), check_lemma),
    "pair": (lambda rng, n, p, o: _gen_pair(rng, n, o), check_pair),
    "corollary_n2": (lambda rng, n, p, o: _gen_pair(rng, 2, o), check_corollary),
    "reflection": (lambda rng, n, p, o: reflection_instance(rng, o), check_reflection),
    "power": (lambda rng, n, p, o: power_instance(rng, n, p, o), check_power),
}

# (suite, n values, p values) of the default run
DEFAULT_SUITES = [
    ("zero_divisor", [None], [None]),
    ("lemma", [2, 3, 4, 6, 8], [None]),
    ("pair", [2, 3, 4], [None]),
    ("corollary_n2", [2], [None]),
    ("reflection", [None], [None]),
    ("power", [2, 3], [2, 3, 4]),
]


def _fails(check, inst, opts) -> Optional[str]:
    try:
        check(inst, opts)
    except HypothesisViolation:
        return None
    except (TheoremViolation, OracleFailure) as exc:
        return str(exc) or type(exc).__name__
    return None


TEMPLATE_KEYS = ("lam0", "starts")  # describe the seeded template; void once a term is dropped


def shrink(check, inst: dict, opts: FuzzOptions) -> dict:
    """Drop single terms from the instance's distributions while it still fails."""
    keys = [k for k, v in inst.items() if isinstance(v, Distribution)]
    changed = True
    while changed:
        changed = False
        for k in keys:
            for term in inst[k].items():
                smaller = Distribution([t for t in inst[k].items() if t[0] != term[0]],
                                       inst[k].field_order)
                if smaller.is_zero():
                    continue
                trial = {key: v for key, v in inst.items() if key not in TEMPLATE_KEYS}
                trial[k] = smaller
                if _fails(check, trial, opts):
                    inst, changed = trial, True
                    break
            if changed:
                break
    return inst


def run_suite(name: str, seed: int, count: int, n: Optional[int] = None,
              p: Optional[int] = None, opts: Optional[FuzzOptions] = None,
              instances: Optional[Callable] = None) -> SuiteResult:
    """Run ``count`` trials of one suite.  ``instances`` overrides the generator."""
    opts = opts or FuzzOptions()
    gen, check = SUITES[name]
    gen = instances or gen
    result = SuiteResult(name, n, p)
    t0 = time.perf_counter()
    for index in range(count):
        rng = random.Random(f"{seed}/{name}/{n}/{p}/{index}")
        inst = gen(rng, n, p, opts)
        try:
            hit = check(inst, opts)
        except HypothesisViolation:
            result.skipped += 1
            continue
        except (TheoremViolation, OracleFailure) as exc:
            result.trials += 1
            result.failure = shrink(check, inst, opts)
            result.message = f"trial {index}: {_fails(check, result.failure, opts) or exc}"
            break
        result.trials += 1
        result.hits += bool(hit)
    result.seconds = time.perf_counter() - t0
    return result


def vandermonde_suite(max_n: int = 12) -> SuiteResult:
    result = SuiteResult("vandermonde", max_n)
    for n in range(1, max_n + 1):
        det = root_vandermonde_det(n)
        result.trials += 1
        if det.is_zero() or det != root_vandermonde_product(n):
            result.failure = {"n": n}
            result.message = f"Vandermonde determinant check fails for n = {n}"
            break
        result.hits += 1
    return result
