"""Command-line front end.

    circtitch convolve FILE [FILE ...] [--output OUT]
    circtitch analyze FILE [FILE2] --mode pair|reflection|power [--n N] [--p P]
    circtitch fuzz [--seed S] [--count C] [--n 2,3] [--suite NAME ...]
    circtitch selftest

Exit codes: 0 ok, 2 input error, 3 hypothesis violation, 4 theorem or oracle
violation.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from .circle import Arc
from .distribution import Distribution, convolve, delta
from .errors import HypothesisViolation, InputError, TheoremViolation
from .fuzz import DEFAULT_SUITES, SUITES, FuzzOptions, run_suite, vandermonde_suite
from .oracle import check_convolution, check_support_theorems
from .serialize import (
    dist_to_json,
    dumps,
    format_angle,
    load_instance,
    render_text,
    report_to_json,
)
from .titchmarsh import analyze_pair, analyze_power, analyze_reflection, check_corollary_n2

EXIT_OK, EXIT_INPUT, EXIT_HYPOTHESIS, EXIT_VIOLATION = 0, 2, 3, 4


def _read(path: str) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"{path}: {exc.strerror}") from None
    return load_instance(text, path)


def _gather(paths) -> dict:
    """Merge one or two instance files: a second file supplies g from its f."""
    inst = _read(paths[0])
    if len(paths) > 1:
        other = _read(paths[1])
        if "g" in inst:
            raise InputError(f"{paths[0]}: has 'g' but a second file was also given")
        inst["g"] = other["f"]
    return inst


def _emit(text: str, output) -> None:
    if output:
        Path(output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_convolve(paths, output=None) -> int:
    """Convolve every distribution found in the files (f, then g, file by file)."""
    out = delta(0)
    for path in paths:
        inst = _read(path)
        out = convolve(out, inst["f"])
        if "g" in inst:
            out = convolve(out, inst["g"])
    _emit(dumps(dist_to_json(out)), output)
    return EXIT_OK


def cmd_analyze(paths, n=None, mode=None, p=None, m_max=16, output=None,
                fmt="json", conjugate=False) -> int:
    inst = _gather(paths)
    mode = mode or inst.get("mode", "pair")
    n = n if n is not None else inst.get("n")
    p = p if p is not None else inst.get("p")
    f = inst["f"]
    if mode == "pair":
        if "g" not in inst:
            raise InputError(f"{paths[0]}: mode 'pair' needs a second distribution 'g'")
        g = inst["g"]
        if n is None:
            raise InputError("n: mode 'pair' needs --n")
        result = check_corollary_n2(f, g) if n == 2 else analyze_pair(f, g, n)
        verdicts = [check_convolution(f, g, m_max), check_support_theorems(result, f, g)]
        report = report_to_json(result)
    elif mode == "reflection":
        result = analyze_reflection(f, conjugate=conjugate)
        verdicts = [check_support_theorems(result, f)]
        report = report_to_json(result)
    else:
        if n is None or p is None:
            raise InputError("n, p: mode 'power' needs --n and --p")
        result = analyze_power(f, n, p)
        verdicts = [check_convolution(f, f, m_max), check_support_theorems(result, f, n=n, p=p)]
        report = report_to_json(result, n=n, p=p)
    report["oracle"] = [v.to_dict() for v in verdicts]
    _emit(dumps(report) if fmt == "json" else render_text(report), output)
    return EXIT_OK if all(v.passed for v in verdicts) else EXIT_VIOLATION


def _plain(value):
    # make a fuzz instance JSON-friendly
    if isinstance(value, Distribution):
        return dist_to_json(value)
    if isinstance(value, Fraction):
        return format_angle(value)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    return value


def _plan(ns, ps, suites):
    for name, n_values, p_values in DEFAULT_SUITES:
        if suites and name not in suites:
            continue
        if ns is not None and n_values != [None]:
            n_values = [n for n in ns if name != "corollary_n2" or n == 2]
        if ps is not None and p_values != [None]:
            p_values = ps
        for n in n_values:
            for p in p_values:
                yield name, n, p


def cmd_fuzz(seed=1, count=100, ns=None, ps=None, suites=None, opts=None,
             output="counterexample.json", log=None) -> int:
    log = log or sys.stdout
    opts = opts or FuzzOptions()
    total = 0
    for name, n, p in _plan(ns, ps, suites):
        result = run_suite(name, seed, count, n, p, opts)
        total += result.trials
        print(result.line(), file=log)
        if not result.ok:
            mode = {"pair": "pair", "corollary_n2": "pair", "reflection": "reflection",
                    "power": "power"}.get(name)
            body = {k: _plain(v) for k, v in result.failure.items()}
            body.update(suite=name, seed=seed, message=result.message)
            if mode:
                body["mode"] = mode
            Path(output).write_text(dumps(body), encoding="utf-8")
            print(f"THEOREM-VIOLATION in {name}; counterexample written to {output}", file=log)
            return EXIT_VIOLATION
    if not suites or "vandermonde" in suites:
        result = vandermonde_suite()
        total += result.trials
        print(result.line(), file=log)
        if not result.ok:
            Path(output).write_text(dumps(dict(result.failure, suite="vandermonde")),
                                    encoding="utf-8")
            return EXIT_VIOLATION
    print(f"fuzz seed={seed}: {total} trials, no violations", file=log)
    return EXIT_OK


def _selftest_cases():
    half = Fraction(1, 2)
    f = delta(0) - delta(half)
    g = delta(0) + delta(half) + delta(Fraction(1, 8)) - delta(Fraction(5, 8))
    rep = analyze_pair(f, g, 2)
    yield ("worked pair: lambda = 1/8, alpha = 1, beta = -1",
           rep.lam == Fraction(1, 8) and rep.alpha == 1 and rep.beta == -1,
           [check_convolution(f, g), check_support_theorems(rep, f, g)])
    a, b = delta(0) + delta(half), delta(0) - delta(half)
    yield "zero divisors: (d_0 + d_1/2) * (d_0 - d_1/2) = 0", convolve(a, b).is_zero(), \
        [check_convolution(a, b)]
    mu, nu = delta(Fraction(1, 16)), delta(Fraction(15, 16))
    four = delta(Fraction(1, 16)) + delta(Fraction(9, 16)) + delta(Fraction(15, 16)) \
        - delta(Fraction(7, 16))
    dec = analyze_reflection(four)
    yield ("reflection: mu = d_1/16, nu = d_15/16",
           dec is not None and dec.mu == mu and dec.nu == nu,
           [check_support_theorems(dec, four)])
    h = delta(0) + delta(Fraction(1, 32)) + delta(half)
    K = analyze_power(h, 2, 3)
    yield "power: K = 3I = [0, 3/32]", K == Arc(Fraction(0), Fraction(3, 32)), \
        [check_support_theorems(K, h, n=2, p=3)]


def cmd_selftest(log=None) -> int:
    log = log or sys.stdout
    status = EXIT_OK
    for label, ok, verdicts in _selftest_cases():
        ok = ok and all(v.passed for v in verdicts)
        print(f"[{'pass' if ok else 'FAIL'}] {label}", file=log)
        if not ok:
            status = EXIT_VIOLATION
    if cmd_fuzz(seed=1, count=10, output="selftest-counterexample.json", log=log):
        status = EXIT_VIOLATION
    return status


def _int_list(text: str) -> list[int]:
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if not values or min(values) < 1:
        raise argparse.ArgumentTypeError(f"expected positive integers, got {text!r}")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="circtitch",
                                     description="Exact convolution support analysis on the circle.")
    sub = parser.add_subparsers(dest="command", required=True)

    conv = sub.add_parser("convolve", help="write f*g in canonical form")
    conv.add_argument("paths", nargs="+", metavar="FILE")
    conv.add_argument("--output", "-o")

    an = sub.add_parser("analyze", help="run a support analyzer with certificates")
    an.add_argument("paths", nargs="+", metavar="FILE")
    an.add_argument("--mode", choices=["pair", "reflection", "power"])
    an.add_argument("--n", type=int)
    an.add_argument("--p", type=int)
    an.add_argument("--m-max", type=int, default=16)
    an.add_argument("--conjugate", action="store_true",
                    help="reflection mode: use the conjugated reflection")
    an.add_argument("--format", choices=["json", "text"], default="json")
    an.add_argument("--output", "-o")

    fz = sub.add_parser("fuzz", help="randomized falsification run")
    fz.add_argument("--seed", type=int, default=1)
    fz.add_argument("--count", type=int, default=100)
    fz.add_argument("--n", type=_int_list, help="comma-separated n values")
    fz.add_argument("--p", type=_int_list, help="comma-separated p values (power suite)")
    fz.add_argument("--suite", action="append", choices=sorted(SUITES) + ["vandermonde"])
    fz.add_argument("--max-points", type=int, default=8)
    fz.add_argument("--max-order", type=int, default=3)
    fz.add_argument("--mix", type=float, default=0.5,
                    help="share of symmetry-seeded pair instances")
    fz.add_argument("--m-max", type=int, default=16)
    fz.add_argument("--output", "-o", default="counterexample.json")

    sub.add_parser("selftest", help="worked examples plus a short fuzz run")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "convolve":
            return cmd_convolve(args.paths, args.output)
        if args.command == "analyze":
            if len(args.paths) > 2:
                raise InputError("analyze takes one or two files")
            return cmd_analyze(args.paths, args.n, args.mode, args.p, args.m_max,
                               args.output, args.format, args.conjugate)
        if args.command == "fuzz":
            opts = FuzzOptions(args.max_points, args.max_order, args.mix, args.m_max)
            return cmd_fuzz(args.seed, args.count, args.n, args.p, args.suite, opts, args.output)
        return cmd_selftest()
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HypothesisViolation as exc:
        bound = f" (bound: {exc.bound})" if exc.bound else ""
        print(f"hypothesis violation: {exc}{bound}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except TheoremViolation as exc:
        print(f"THEOREM-VIOLATION: {exc}", file=sys.stderr)
        return EXIT_VIOLATION


if __name__ == "__main__":
    sys.exit(main())
