"""Chinese remaindering of mod-p images and rational reconstruction.

Images are flattened into dense integer vectors: one block of D entries per
coefficient of the main variable, each block laid out over the power basis
z_1^e_1 ... z_n^e_n with 0 <= e_i < d_i.
"""

from dataclasses import dataclass, field, replace

import gmpy2
from gmpy2 import mpq, mpz

from .tower import RPoly, _trim

__all__ = [
    "CrtAccumulator",
    "crt_add_image",
    "ratrecon",
    "reconstruct_poly",
    "default_mqrr_threshold",
    "fibonacci_counts",
]


def _flatten(data, lev, degrees, out):
    """Append the leaves of a level-``lev`` field element, padded to the box."""
    if lev == 0:
        out.append(data if data else 0)
        return
    d = degrees[lev - 1]
    width = 1
    for e in degrees[: lev - 1]:
        width *= e
    for i in range(d):
        if i < len(data) and data[i]:
            _flatten(data[i], lev - 1, degrees, out)
        else:
            out.extend([0] * width)


def _unflatten(vec, start, lev, degrees):
    if lev == 0:
        return vec[start]
    d = degrees[lev - 1]
    width = 1
    for e in degrees[: lev - 1]:
        width *= e
    return _trim([_unflatten(vec, start + i * width, lev - 1, degrees) for i in range(d)])


def _block(degrees):
    b = 1
    for e in degrees:
        b *= e
    return b


@dataclass(frozen=True)
class CrtAccumulator:
    """Combined image c (mod m) of a polynomial over the tower.

    ``ring`` is the characteristic-0 target.  ``c`` holds symmetric-range
    integers, ``primes`` the moduli combined so far.
    """

    ring: object
    degree: int = -1
    c: tuple = ()
    m: object = mpz(1)
    k: int = 0
    failed_at: object = None
    primes: tuple = ()
    _known: tuple = field(default=(), repr=False, compare=False)

    @property
    def shape(self):
        return self.degree

    def flatten(self, f):
        """Integer vector of an image over this accumulator's tower shape."""
        ring = self.ring
        if f.ring.variables != ring.variables:
            raise ValueError("tower mismatch")
        out = []
        if ring.main is None:
            _flatten(f.data, ring.nlevels, ring.degrees, out)
            return out
        for coef in f.data:
            _flatten(coef, ring.n, ring.degrees, out)
        return out


def crt_add_image(acc, d, p):
    """Combine the image ``d`` (over F_p) into ``acc``; returns a new accumulator."""
    ring = acc.ring
    if ring.main is not None:
        deg = len(d.data) - 1
    else:
        deg = 0
    vec = acc.flatten(d)
    if acc.k == 0:
        half = p // 2
        c = tuple(mpz(v - p if v > half else v) for v in vec)
        return replace(acc, degree=deg, c=c, m=mpz(p), k=1, failed_at=None, primes=(p,), _known=())
    if acc.m % p == 0:
        raise ValueError(f"prime {p} already used")
    if deg != acc.degree:
        raise ValueError(f"image degree {deg} does not match accumulator degree {acc.degree}")
    m = acc.m
    minv = int(gmpy2.invert(m % p, p))
    mp = m * p
    half = mp // 2
    out = []
    for ci, di in zip(acc.c, vec):
        delta = (di - ci) % p
        if delta:
            v = delta * minv % p
            ci = ci + m * v
            if ci > half:
                ci -= mp
        out.append(ci)
    return replace(acc, c=tuple(out), m=mp, k=acc.k + 1, primes=acc.primes + (p,))


def default_mqrr_threshold(m, bits=20):
    """Acceptance threshold 2^bits * ceil(log2 m) for the maximal quotient."""
    return (1 << bits) * max(1, int(m - 1).bit_length())


def ratrecon(u, m, mode="wang", T=None):
    """n/d with n = d*u (mod m) and small |n|, d; None when none is found."""
    u = mpz(u) % m
    m = mpz(m)
    if mode == "wang":
        return _wang(u, m)
    if mode == "mqrr":
        if T is None:
            T = default_mqrr_threshold(m)
        return _mqrr(u, m, T)
    raise ValueError(f"unknown reconstruction mode {mode!r}")


def _wang(u, m):
    N = gmpy2.isqrt(m // 2)
    r0, r1 = m, u
    t0, t1 = mpz(0), mpz(1)
    while r1 > N:
        q, r = gmpy2.f_divmod(r0, r1)
        r0, r1 = r1, r
        t0, t1 = t1, t0 - q * t1
    if not t1 or abs(t1) > N or gmpy2.gcd(r1, t1) != 1:
        return None
    if t1 < 0:
        r1, t1 = -r1, -t1
    return mpq(r1, t1)


def _mqrr(u, m, T):
    if not u:
        return mpq(0) if m > T else None
    n = d = mpz(0)
    r0, r1 = m, u
    t0, t1 = mpz(0), mpz(1)
    while r1 and r0 > T:
        q, r = gmpy2.f_divmod(r0, r1)
        if q > T:
            n, d, T = r1, t1, q
        r0, r1 = r1, r
        t0, t1 = t1, t0 - q * t1
    if not d or gmpy2.gcd(n, d) != 1 or gmpy2.gcd(d, m) != 1:
        return None
    if d < 0:
        n, d = -n, -d
    return mpq(n, d)


def reconstruct_poly(acc, mode="wang", T=None):
    """Rational reconstruction of every coefficient of ``acc``.

    Returns ``(poly, acc')`` where ``poly`` is an RPoly over ``acc.ring`` or
    None.  On failure ``acc'.failed_at`` records the first failing index; a
    later call re-checks the values found before it with one multiplication
    each and resumes the scan there.
    """
    if acc.k < 1:
        raise ValueError("empty accumulator")
    m = acc.m
    if mode == "mqrr" and T is None:
        T = default_mqrr_threshold(m)
    known = list(acc._known)
    start = 0
    for i, val in enumerate(known):
        if (val.denominator * acc.c[i] - val.numerator) % m:
            break
        start = i + 1
    known = known[:start]
    for i in range(start, len(acc.c)):
        val = ratrecon(acc.c[i], m, mode, T)
        if val is None:
            return None, replace(acc, failed_at=i, _known=tuple(known))
        known.append(val)
    return _build(acc, known), replace(acc, failed_at=None, _known=tuple(known))


def _build(acc, vec):
    ring = acc.ring
    if ring.main is None:
        return RPoly(ring, _unflatten(vec, 0, ring.nlevels, ring.degrees))
    B = _block(ring.degrees)
    coeffs = [_unflatten(vec, j * B, ring.n, ring.degrees) for j in range(acc.degree + 1)]
    return RPoly(ring, _trim(coeffs))


def fibonacci_counts():
    """1, 2, 3, 5, 8, 13, ..."""
    a, b = 1, 2
    while True:
        yield a
        a, b = b, a + b
