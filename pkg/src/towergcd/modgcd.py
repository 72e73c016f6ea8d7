"""Modular gcd over a number-field tower.

Images of the gcd are computed modulo random word-sized primes, combined
by Chinese remaindering, lifted to Q by rational reconstruction and then
certified by exact trial division.  When the tower is not a field the
driver may instead return a non-trivial factor of one of the extension
polynomials.
"""

import logging
import time
from dataclasses import dataclass, field
from typing import Optional, Union

import gmpy2
from gmpy2 import mpq

from .modp import ModRing, NotReducible, monic_ea_mod_p, reduce_mod_p
from .primes import PrimeStream, is_lc_bad
from .reconstruct import (
    CrtAccumulator,
    crt_add_image,
    default_mqrr_threshold,
    fibonacci_counts,
    reconstruct_poly,
)
from .tower import RPoly, ZeroDivisorFound, _rational_content, _trim, invert_char0, semi_associate

__all__ = [
    "GcdOptions",
    "GcdStats",
    "Gcd",
    "ZeroDivisorChar0",
    "GcdFailure",
    "ModularGcd",
    "modular_gcd",
    "trial_divide",
    "classify_prime",
]

log = logging.getLogger("towergcd")


@dataclass(frozen=True)
class GcdOptions:
    prime_bits: int = 31
    seed: int = 0
    cofactor_mode: bool = False
    precheck_prime: Optional[int] = None
    schedule: str = "every"  # or "fib"
    ratrecon: str = "mqrr"  # or "wang"
    mqrr_bits: int = 20
    max_primes: Optional[int] = None

    def __post_init__(self):
        if not 10 <= self.prime_bits <= 62:
            raise ValueError("prime_bits must lie in [10, 62]")
        if self.schedule not in ("every", "fib"):
            raise ValueError("schedule is 'every' or 'fib'")
        if self.ratrecon not in ("mqrr", "wang"):
            raise ValueError("ratrecon is 'mqrr' or 'wang'")


@dataclass
class GcdStats:
    good: int = 0  # images that entered the accumulator
    unlucky: int = 0
    fail: int = 0
    lc_bad: int = 0
    reconstructions: int = 0
    trial_divisions: int = 0
    prechecks_rejected: int = 0
    seconds: float = 0.0
    primes: list = field(default_factory=list)  # (p, kind)

    @property
    def primes_used(self):
        """Primes on which a modular gcd was attempted."""
        return self.good + self.unlucky + self.fail


@dataclass(frozen=True)
class Gcd:
    g: RPoly
    stats: GcdStats = field(compare=False, default=None)


@dataclass(frozen=True)
class ZeroDivisorChar0:
    level: int
    factor: RPoly
    stats: GcdStats = field(compare=False, default=None)


@dataclass(frozen=True)
class GcdFailure:
    reason: str
    stats: GcdStats = field(compare=False, default=None)


GcdOutcome = Union[Gcd, ZeroDivisorChar0, GcdFailure]


# ---------------------------------------------------------------------------
# fraction-free trial division


def _map_level(data, lev, target, fn):
    if lev == target:
        return fn(data)
    return _trim([_map_level(c, lev - 1, target, fn) if c else c for c in data])


def _nodes_at(data, lev, target, out):
    if lev == target:
        out.append(data)
        return
    for c in data:
        if c:
            _nodes_at(c, lev - 1, target, out)


def _ff_reduce(ring, r, lev, s):
    """Reduce every z_j-degree of raw integral data below d_j, z_n first.

    Each round multiplies r by the least integer making the cancellation
    exact; the multipliers are folded into s.  Returns (r, s).
    """
    ar = ring.arith
    for j in range(ring.n, 0, -1):
        m = ring.extensions[j - 1]
        d = len(m) - 1
        lj = ring.denominators[j - 1]
        while True:
            nodes = []
            _nodes_at(r, lev, j, nodes)
            k = max((len(P) - 1 for P in nodes), default=-1)
            if k < d:
                break
            g = gmpy2.mpz(0)
            for P in nodes:
                if len(P) - 1 == k:
                    g = gmpy2.gcd(g, _rational_content(P[k], j - 1).numerator)
            g = gmpy2.gcd(g, lj)
            mult = lj // g
            if mult != 1:
                r = ar.scale(r, mpq(mult), lev)
                s *= mult
            inv_l = mpq(1, lj)

            def cancel(P, k=k, m=m, d=d, inv_l=inv_l):
                if len(P) - 1 != k:
                    return P
                t = ar.scale(P[k], inv_l, j - 1)
                out = list(P)
                base = k - d
                for i in range(d):
                    if m[i]:
                        out[base + i] = ar.sub(out[base + i], ar.mul_raw(t, m[i], j - 1), j - 1)
                out[k] = ar.zero(j - 1)
                return _trim(out)

            r = _map_level(r, lev, j, cancel)
    return r, s


def trial_divide(A, B):
    """Q with A == B*Q exactly, or None when B does not divide A.

    Fraction-free long division; lc(B) must be rational.
    """
    if A.ring != B.ring:
        raise ValueError("ring mismatch")
    ring = A.ring
    if ring.characteristic:
        raise ValueError("trial_divide needs characteristic 0")
    if ring.main is None:
        raise ValueError("expected polynomials in the main variable")
    if not B.data:
        raise ZeroDivisionError("division by zero polynomial")
    ar = ring.arith
    lev = ring.nlevels
    sub_lev = lev - 1
    if ar.scalar_of(B.data[-1], sub_lev) is None:
        raise ValueError("divisor needs a rational leading coefficient")
    if not A.data:
        return A
    ia = _rational_content(A.data, lev)
    ib = _rational_content(B.data, lev)
    a = ar.scale(A.data, 1 / ia, lev)
    b = ar.scale(B.data, 1 / ib, lev)
    lb = ar.scalar_of(b[-1], sub_lev)
    if lb < 0:
        b, ib, lb = ar.neg(b, lev), -ib, -lb
    lb = lb.numerator
    db = len(b) - 1
    if len(a) - 1 < db:
        return None
    fast = ring.l_star == 1
    s = gmpy2.mpz(1)
    r = a
    q = [ar.zero(sub_lev)] * (len(a) - db)
    while r and len(r) - 1 >= db:
        k = len(r) - 1 - db
        lr = r[-1]
        g = gmpy2.gcd(_rational_content(lr, sub_lev).numerator, lb)
        mult = lb // g
        s *= mult
        t = ar.scale(lr, mpq(1, g), sub_lev) if g != 1 else lr
        q[k] = ar.add(q[k], ar.scale(t, mpq(1, s), sub_lev), sub_lev)
        if mult != 1:
            r = ar.scale(r, mpq(mult), lev)
        if fast:
            tb = ar.coef_scale(b, t, lev)
        else:
            tb = _trim([ar.mul_raw(t, c, sub_lev) if c else c for c in b])
        r = ar.sub(r, (ar.zero(sub_lev),) * k + tb, lev)
        if r and not fast:
            r, s = _ff_reduce(ring, r, lev, s)
    if r:
        return None
    return RPoly(ring, ar.scale(_trim(q), ia / ib, lev))


# ---------------------------------------------------------------------------
# the driver


def _fib_window(count):
    """Reports to combine when a class reaches ``count`` members, or 0."""
    prev = 0
    for f in fibonacci_counts():
        if f == count:
            return max(prev, 1)
        if f > count:
            return 0
        prev = f


class ModularGcd:
    """Stateful driver; ``run`` loops over primes until an outcome appears.

    ``step`` processes one prime and ``feed_image`` / ``feed_report``
    accept externally computed images, which is how per-prime work can be
    farmed out.
    """

    def __init__(self, f1, f2, opts=None):
        opts = opts or GcdOptions()
        if f1.ring != f2.ring:
            raise ValueError("ring mismatch")
        ring = f1.ring
        if ring.characteristic:
            raise ValueError("modular_gcd needs characteristic 0")
        if ring.main is None:
            raise ValueError("expected polynomials in the main variable")
        self.ring = ring
        self.opts = opts
        self.f1, _ = semi_associate(f1)
        self.f2, _ = semi_associate(f2)
        self.stream = PrimeStream(opts.prime_bits, opts.seed, opts.precheck_prime)
        self.stats = GcdStats()
        self.acc = CrtAccumulator(ring)
        self.deg = None
        self._fib = set()
        self._last_h = None
        # the cofactor of the lower-degree input
        self._cof_of = 1 if self.f1.degree() <= self.f2.degree() else 2
        self.cof_acc = CrtAccumulator(ring)
        self._last_c = None
        self.reports = {}
        self._t0 = time.perf_counter()

    # -- helpers ----------------------------------------------------------

    def _done(self, outcome):
        self.stats.seconds = time.perf_counter() - self._t0
        return outcome

    def _should_reconstruct(self, k):
        if self.opts.schedule == "every":
            return True
        return _fib_window(k) > 0

    def _ratrecon_args(self, m):
        if self.opts.ratrecon == "mqrr":
            return "mqrr", default_mqrr_threshold(m, self.opts.mqrr_bits)
        return "wang", None

    def _precheck(self, h):
        q = self.opts.precheck_prime
        if q is None or self.ring.l_star % q == 0:
            return True
        try:
            R = ModRing.of(self.ring, q)
            hq = reduce_mod_p(h, R)
            for f in (self.f1, self.f2):
                fq = reduce_mod_p(f, R)
                _, rem = R.arith.divrem(fq.data, hq.data, R.nlevels)
                if rem:
                    return False
        except (NotReducible, ZeroDivisorFound):
            return True
        return True

    def _certify(self, h):
        if h == self._last_h:
            return None
        self._last_h = h
        if not self._precheck(h):
            self.stats.prechecks_rejected += 1
            log.debug("precheck prime rejects candidate")
            return None
        self.stats.trial_divisions += 1
        if trial_divide(self.f1, h) is None or trial_divide(self.f2, h) is None:
            log.debug("trial division failed")
            return None
        return self._done(Gcd(h, self.stats))

    def _certify_cofactor(self, c):
        """Recover h from a reconstructed cofactor c of the smaller input."""
        if c == self._last_c:
            return None
        self._last_c = c
        f = self.f1 if self._cof_of == 1 else self.f2
        other = self.f2 if self._cof_of == 1 else self.f1
        ring = self.ring
        ar = ring.arith
        lev = ring.nlevels
        try:
            u = invert_char0(c.lc())
        except ZeroDivisorFound:
            return None
        cm = ar.coef_scale(c.data, u.data, lev)
        quo, rem = ar.divrem(f.data, cm, lev)
        if rem or not quo:
            return None
        try:
            h = RPoly(ring, ar.monic(quo, lev))
        except ZeroDivisorFound:
            return None
        self.stats.trial_divisions += 1
        if trial_divide(other, h) is None:
            return None
        return self._done(Gcd(h, self.stats))

    # -- per-prime --------------------------------------------------------

    def step(self):
        p = self.stream.next()
        f1, f2 = self.f1, self.f2
        if is_lc_bad(p, f1, f2, self.ring):
            if self.ring.l_star % p == 0 or is_lc_bad(p, f2, f1, self.ring):
                self.stats.lc_bad += 1
                self.stats.primes.append((p, "lc-bad"))
                log.debug("p=%d lc-bad", p)
                return None
            f1, f2 = f2, f1
        R = ModRing.of(self.ring, p)
        a, b = reduce_mod_p(f1, R), reduce_mod_p(f2, R)
        try:
            d = monic_ea_mod_p(a, b)
        except ZeroDivisorFound as e:
            return self.feed_report(p, e)
        return self.feed_image(p, d)

    def feed_image(self, p, d):
        """Steps after the modular gcd: pruning, CRT, reconstruction, checks."""
        st = self.stats
        deg = d.degree()
        if deg == 0:
            st.good += 1
            st.primes.append((p, "good"))
            log.debug("p=%d image is 1", p)
            return self._done(Gcd(self.ring.one(), st))
        if self.deg is not None and deg > self.deg:
            st.unlucky += 1
            st.primes.append((p, "unlucky"))
            log.debug("p=%d unlucky (degree %d > %d)", p, deg, self.deg)
            return None
        if self.deg is None or deg < self.deg:
            if self.deg is not None:
                log.debug("p=%d lower degree %d; earlier images were unlucky", p, deg)
                st.unlucky += st.good
                st.good = 0
                st.primes = [(q, "unlucky" if k == "good" else k) for q, k in st.primes]
            self.deg = deg
            self.acc = CrtAccumulator(self.ring)
            self.cof_acc = CrtAccumulator(self.ring)
            self._last_h = self._last_c = None
        st.good += 1
        st.primes.append((p, "good"))
        self.acc = crt_add_image(self.acc, d, p)
        if self.opts.cofactor_mode:
            R = d.ring
            f = self.f1 if self._cof_of == 1 else self.f2
            cof, _ = R.arith.divrem(reduce_mod_p(f, R).data, d.data, R.nlevels)
            self.cof_acc = crt_add_image(self.cof_acc, RPoly(R, cof), p)
        if not self._should_reconstruct(self.acc.k):
            return None
        mode, T = self._ratrecon_args(self.acc.m)
        st.reconstructions += 1
        h, self.acc = reconstruct_poly(self.acc, mode, T)
        log.debug("p=%d k=%d reconstruction %s", p, self.acc.k, "ok" if h is not None else "failed")
        if h is not None:
            out = self._certify(h)
            if out is not None:
                return out
        if self.opts.cofactor_mode:
            c, self.cof_acc = reconstruct_poly(self.cof_acc, mode, T)
            if c is not None:
                return self._certify_cofactor(c)
        return None

    def feed_report(self, p, e):
        """Collect a zero-divisor report; try to lift its class to Q."""
        st = self.stats
        st.fail += 1
        st.primes.append((p, "fail"))
        key = (e.level, e.factor.degree())
        log.debug("p=%d fail: level %d factor %s", p, e.level, e.factor)
        reps = self.reports.setdefault(key, [])
        reps.append((p, e.factor))
        window = _fib_window(len(reps))
        if not window:
            return None
        level = e.level
        target = self.ring.level_ring(level)
        acc = CrtAccumulator(target)
        for q, fac in reps[-window:]:
            acc = crt_add_image(acc, fac, q)
        mode, T = self._ratrecon_args(acc.m)
        F, _ = reconstruct_poly(acc, mode, T)
        if F is None:
            return None
        m = RPoly(target, self.ring.monic_extensions[level - 1])
        ar = target.arith
        _, rem = ar.divrem(m.data, F.data, level)
        if rem:
            return None
        log.debug("factor %s of m_%d certified", F, level)
        return self._done(ZeroDivisorChar0(level, F, st))

    def run(self):
        limit = self.opts.max_primes
        while True:
            if limit is not None and len(self.stats.primes) >= limit:
                return self._done(GcdFailure(f"no result after {limit} primes", self.stats))
            out = self.step()
            if out is not None:
                return out


def modular_gcd(f1, f2, opts=None):
    """Monic gcd of f1 and f2 in L[x], or a factor of some m_i."""
    if f1.ring != f2.ring:
        raise ValueError("ring mismatch")
    if not f1.data and not f2.data:
        raise ValueError("gcd(0, 0) is undefined")
    if not f1.data or not f2.data:
        f = f1 if f1.data else f2
        ring = f.ring
        try:
            return Gcd(RPoly(ring, ring.arith.monic(f.data, ring.nlevels)), GcdStats())
        except ZeroDivisorFound as e:
            return ZeroDivisorChar0(e.level, e.factor, GcdStats())
    return ModularGcd(f1, f2, opts).run()


def classify_prime(f1, f2, p, g=None):
    """Return (kind, image) for prime p: lc-bad, fail, unlucky or good.

    ``g`` is the monic gcd in characteristic 0; it is computed when omitted.
    For a fail prime the image is the ZeroDivisorFound report.
    """
    ring = f1.ring
    f1s, f2s = semi_associate(f1)[0], semi_associate(f2)[0]
    if is_lc_bad(p, f1s, f2s, ring):
        if ring.l_star % p == 0 or is_lc_bad(p, f2s, f1s, ring):
            return "lc-bad", None
        f1s, f2s = f2s, f1s
    R = ModRing.of(ring, p)
    try:
        d = monic_ea_mod_p(reduce_mod_p(f1s, R), reduce_mod_p(f2s, R))
    except ZeroDivisorFound as e:
        return "fail", e
    if g is None:
        out = modular_gcd(f1, f2)
        if not isinstance(out, Gcd):
            raise ValueError("inputs have no gcd over this tower")
        g = out.g
    try:
        gp = reduce_mod_p(g, R)
    except NotReducible:
        return "unlucky", d
    return ("good" if d == gp else "unlucky"), d
