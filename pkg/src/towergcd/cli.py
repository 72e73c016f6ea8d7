"""Command-line front end.

    towergcd gcd --ext 'a^2-2' --ext 'b^2-3' --var x 'x^2+...' 'x^2+...'
    towergcd divide --ext 'a^2-2' --var x A B
    towergcd norm --ext 'z^5-2' 'z+5'
    towergcd classify --ext 'z^5-2' --var x 'x^2-1' '(z+5)*x-z-5' --below 100
    towergcd bench --n 10 --engines modular,pff --csv out.csv

Exit codes: 0 success, 1 usage or parse error, 2 zero divisor found,
3 division failed.
"""

import argparse
import csv
import json
import logging
import re
import signal
import sys
import time
from contextlib import contextmanager

import gmpy2

from .expr import ParseError, format_poly, parse_poly
from .ffgcd import monic_ea_char0, pff_gcd
from .modgcd import Gcd, GcdFailure, GcdOptions, ZeroDivisorChar0, classify_prime, modular_gcd, trial_divide
from .tower import ZeroDivisorFound, make_ring, monic, norm

EXIT_OK, EXIT_USAGE, EXIT_ZERO_DIVISOR, EXIT_NOT_DIVISIBLE = 0, 1, 2, 3
ENGINES = ("modular", "pff", "monic-ea")

_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")

# the degree-24 benchmark field and its three quadratics
BENCH_EXTS = ("a^8-40*a^6+352*a^4-960*a^2+576", "b^3-11*b-13")
BENCH_G = "x^2+123*b*x+a*x/13+531*a^3-199"
BENCH_A = "x^2+a*x/12+123*b-25*a^3+251"
BENCH_B = "x^2+b/21+123*a*x+17*a^3-173"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_tower(exts, var=None):
    """Ring from ``--ext`` strings, each 'name: poly' or a poly whose one new
    symbol is the extension variable."""
    names, polys = [], []
    for e in exts:
        if ":" in e:
            name, poly = (s.strip() for s in e.split(":", 1))
        else:
            new = [s for s in dict.fromkeys(_IDENT.findall(e)) if s not in names]
            if len(new) != 1:
                raise UsageError(f"cannot infer the variable of extension {e!r}; write 'name: poly'")
            name, poly = new[0], e
        names.append(name)
        polys.append(poly)
    if var is not None:
        names.append(var)
    try:
        return make_ring(0, names, polys)
    except ParseError:
        raise
    except ValueError as e:
        raise UsageError(str(e)) from None


def _engine_gcd(engine, f1, f2, opts):
    """Uniform (kind, poly, level, primes_used) over the three engines."""
    if engine == "modular":
        out = modular_gcd(f1, f2, opts)
        used = out.stats.primes_used if out.stats else 0
        if isinstance(out, Gcd):
            return "gcd", out.g, None, used
        if isinstance(out, ZeroDivisorChar0):
            return "zero-divisor", out.factor, out.level, used
        return "failure", None, None, used
    try:
        if engine == "pff":
            g = monic(pff_gcd(f1, f2))
        elif engine == "monic-ea":
            g = monic_ea_char0(f1, f2)
        else:
            raise UsageError(f"unknown engine {engine!r}")
    except ZeroDivisorFound as e:
        return "zero-divisor", e.factor, e.level, None
    return "gcd", g, None, None


def _options(args):
    return GcdOptions(
        prime_bits=args.prime_bits,
        seed=args.seed,
        cofactor_mode=args.cofactor,
        precheck_prime=args.precheck_prime,
        schedule=args.schedule,
        ratrecon=args.ratrecon,
    )


def cmd_gcd(args):
    ring = build_tower(args.ext, args.var)
    f1, f2 = parse_poly(args.f1, ring), parse_poly(args.f2, ring)
    t0 = time.perf_counter()
    kind, poly, level, used = _engine_gcd(args.engine, f1, f2, _options(args))
    record = {
        "engine": args.engine,
        "outcome": kind,
        "result": format_poly(poly) if poly is not None else None,
        "level": level,
        "primes_used": used,
        "seconds": round(time.perf_counter() - t0, 6),
    }
    if args.json:
        print(json.dumps(record))
    elif kind == "gcd":
        print(record["result"])
    elif kind == "zero-divisor":
        print(f"zero divisor: {record['result']} divides m_{level}")
    else:
        print("failed")
    logging.getLogger("towergcd").info("record %s", json.dumps(record))
    if kind == "zero-divisor":
        return EXIT_ZERO_DIVISOR
    return EXIT_OK if kind == "gcd" else EXIT_USAGE


def cmd_divide(args):
    ring = build_tower(args.ext, args.var)
    A, B = parse_poly(args.a, ring), parse_poly(args.b, ring)
    try:
        Q = trial_divide(A, B)
    except ValueError as e:
        raise UsageError(str(e)) from None
    if Q is None:
        print("failed")
        return EXIT_NOT_DIVISIBLE
    print(format_poly(Q))
    return EXIT_OK


def cmd_norm(args):
    ring = build_tower(args.ext)
    a = parse_poly(args.a, ring)
    print(format_poly(norm(a, args.down_to)))
    return EXIT_OK


def cmd_classify(args):
    ring = build_tower(args.ext, args.var)
    f1, f2 = parse_poly(args.f1, ring), parse_poly(args.f2, ring)
    out = modular_gcd(f1, f2)
    g = out.g if isinstance(out, Gcd) else None
    if g is None:
        raise UsageError("classification needs inputs over a field")
    primes = args.primes or [p for p in range(2, args.below) if gmpy2.is_prime(p)]
    for p in primes:
        kind, image = classify_prime(f1, f2, p, g)
        if kind == "fail":
            extra = f"  factor {image.factor} of m_{image.level}"
        elif image is not None:
            extra = f"  image {image}"
        else:
            extra = ""
        print(f"{p}\t{kind}{extra}")
    return EXIT_OK


class _Timeout(Exception):
    pass


@contextmanager
def _time_limit(seconds):
    if not seconds or not hasattr(signal, "SIGALRM"):
        yield
        return

    def handler(signum, frame):
        raise _Timeout()

    old = signal.signal(signal.SIGALRM, handler)
    signal.setitimer(signal.ITIMER_REAL, seconds)
    try:
        yield
    finally:
        signal.setitimer(signal.ITIMER_REAL, 0)
        signal.signal(signal.SIGALRM, old)


def bench_problem(n, k):
    """(ring, f1, f2, expected gcd) for the benchmark family."""
    ring = make_ring(0, ["a", "b", "x"], list(BENCH_EXTS))
    g, a, b = (parse_poly(s, ring) for s in (BENCH_G, BENCH_A, BENCH_B))
    f1 = g**k * a ** (n - k)
    f2 = g**k * b ** (n - k)
    return ring, f1, f2, monic(g**k)


def run_bench(n, ks, engines, opts=None, timeout=None):
    rows = []
    opts = opts or GcdOptions()
    for k in ks:
        ring, f1, f2, expected = bench_problem(n, k)
        for engine in engines:
            t0 = time.perf_counter()
            try:
                with _time_limit(timeout):
                    kind, g, _, used = _engine_gcd(engine, f1, f2, opts)
            except _Timeout:
                rows.append({"k": k, "engine": engine, "seconds": "NA", "primes_used": "NA", "verified": "NA"})
                continue
            secs = time.perf_counter() - t0
            rows.append(
                {
                    "k": k,
                    "engine": engine,
                    "seconds": f"{secs:.3f}",
                    "primes_used": used if used is not None else "",
                    "verified": kind == "gcd" and g == expected,
                }
            )
    return rows


BENCH_FIELDS = ["k", "engine", "seconds", "primes_used", "verified"]


def cmd_bench(args):
    if args.n < 1:
        raise UsageError("n must be >= 1")
    ks = _parse_range(args.k, args.n)
    engines = [e.strip() for e in args.engines.split(",") if e.strip()]
    bad = [e for e in engines if e not in ENGINES]
    if bad:
        raise UsageError(f"unknown engine(s) {bad}")
    rows = run_bench(args.n, ks, engines, _options(args), args.timeout)
    print(f"{'k':>3} {'engine':>9} {'seconds':>9} {'primes':>6} verified")
    for r in rows:
        print(f"{r['k']:>3} {r['engine']:>9} {r['seconds']:>9} {r['primes_used']!s:>6} {r['verified']}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=BENCH_FIELDS)
            w.writeheader()
            w.writerows(rows)
    return EXIT_OK


def _parse_range(text, n):
    if text is None:
        return list(range(n + 1))
    out = []
    for part in text.split(","):
        if ".." in part:
            lo, hi = part.split("..")
            out.extend(range(int(lo), int(hi) + 1))
        else:
            out.append(int(part))
    if any(not 0 <= k <= n for k in out):
        raise UsageError(f"k must lie in 0..{n}")
    return out


def _add_gcd_options(p):
    p.add_argument("--engine", choices=ENGINES, default="modular")
    p.add_argument("--prime-bits", type=int, default=31)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--cofactor", action="store_true", help="also reconstruct the smaller cofactor")
    p.add_argument("--precheck-prime", type=int, default=None, help="reserved prime for a division pre-test")
    p.add_argument("--schedule", choices=("every", "fib"), default="every")
    p.add_argument("--ratrecon", choices=("mqrr", "wang"), default="mqrr")


def make_parser():
    ap = _Parser(prog="towergcd", description="gcds over algebraic number field towers")
    ap.add_argument("--verbose", "-v", action="store_true", help="log every prime")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def tower_args(p, main=True):
        p.add_argument("--ext", action="append", default=[], help="extension polynomial, innermost first")
        if main:
            p.add_argument("--var", default="x", help="main variable (default x)")

    p = sub.add_parser("gcd", help="monic gcd of two polynomials")
    tower_args(p)
    _add_gcd_options(p)
    p.add_argument("--json", action="store_true", help="print a JSON record")
    p.add_argument("f1")
    p.add_argument("f2")
    p.set_defaults(func=cmd_gcd)

    p = sub.add_parser("divide", help="exact division A/B")
    tower_args(p)
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(func=cmd_divide)

    p = sub.add_parser("norm", help="norm of a field element")
    tower_args(p, main=False)
    p.add_argument("--down-to", type=int, default=0)
    p.add_argument("a")
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("classify", help="classify primes for a gcd problem")
    tower_args(p)
    p.add_argument("--below", type=int, default=100)
    p.add_argument("--primes", type=int, nargs="*")
    p.add_argument("f1")
    p.add_argument("f2")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("bench", help="run the degree-24 benchmark family")
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--k", default=None, help="e.g. 0..10 or 1,3,5")
    p.add_argument("--engines", default="modular")
    p.add_argument("--csv", default=None)
    p.add_argument("--timeout", type=float, default=None, help="seconds per cell; NA when exceeded")
    _add_gcd_options(p)
    p.set_defaults(func=cmd_bench)
    return ap


def main(argv=None):
    ap = make_parser()
    args = ap.parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (ParseError, UsageError, ValueError) as e:
        print(f"towergcd: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
