"""Non-modular gcds in characteristic 0.

``pff_gcd`` is a primitive fraction-free Euclidean algorithm: leading
coefficients are made integral with quasi-inverses, remainders come from
Z-primitive pseudo-division, and integer contents are stripped every round.
``monic_ea_char0`` is the plain monic Euclidean algorithm with exact
rationals.  Both raise ZeroDivisorFound when the tower is not a field and
the computation runs into a zero divisor.

When some extension polynomial is not integral, reduction by the monic m_i
brings in fractions; everything stays exact and contents are then taken
over Q, so the identities below hold unchanged.
"""

from dataclasses import dataclass

import gmpy2
from gmpy2 import mpq

from .tower import RPoly, ZeroDivisorFound, _rational_content, _trim, height, semi_associate

__all__ = [
    "QuasiInverse",
    "quasi_inverse",
    "prim_pseudo_divrem",
    "pff_gcd",
    "monic_ea_char0",
]


@dataclass(frozen=True)
class QuasiInverse:
    """v*u == r with den(v) == 1 and r a positive integer."""

    v: RPoly
    r: int


def _joint_content(ar, pairs):
    """Positive rational gcd of all leaves of the given (data, lev) pairs."""
    num = gmpy2.mpz(0)
    den = gmpy2.mpz(1)
    for data, lev in pairs:
        if not data:
            continue
        c = _rational_content(data, lev)
        num = gmpy2.gcd(num, c.numerator)
        den = gmpy2.lcm(den, c.denominator)
    return mpq(num, den) if num else mpq(1)


def _strip(ar, lev, *items):
    c = _joint_content(ar, [(x, lev) for x in items])
    if c == 1:
        return items
    inv = 1 / c
    return tuple(ar.scale(x, inv, lev) if x else x for x in items)


def _pseudo_divrem(ar, A, B, lev):
    """Z-primitive pseudo-division of level-``lev`` polynomials.

    ``B`` must have a rational leading coefficient.  Returns (r, mu, q) with
    mu*A == B*q + r.
    """
    if not B:
        raise ZeroDivisionError("pseudo-division by zero")
    sub_lev = lev - 1
    lb = ar.scalar_of(B[-1], sub_lev)
    if lb is None:
        raise ValueError("divisor needs a rational leading coefficient")
    # scale the divisor so its leading coefficient is a positive integer
    s = mpq(1)
    if lb.denominator != 1 or lb < 0:
        s = mpq(lb.denominator * (1 if lb > 0 else -1))
        B = ar.scale(B, s, lev)
        lb = lb * s
    lb = lb.numerator
    db = len(B) - 1
    r = A
    mu = gmpy2.mpz(1)
    q = [ar.zero(sub_lev)] * max(0, len(A) - db)
    while r and len(r) - 1 >= db:
        k = len(r) - 1 - db
        lr = r[-1]
        g = gmpy2.gcd(_rational_content(lr, sub_lev).numerator, lb)
        mult = lb // g
        t = ar.scale(lr, mpq(1, g), sub_lev) if g != 1 else lr
        if mult != 1:
            r = ar.scale(r, mpq(mult), lev)
            q = [ar.scale(c, mpq(mult), sub_lev) if c else c for c in q]
            mu *= mult
        q[k] = ar.add(q[k], t, sub_lev)
        tb = ar.coef_scale(B, t, lev)
        shifted = (ar.zero(sub_lev),) * k + tb
        r = ar.sub(r, shifted, lev)
    q = _trim(q)
    if s != 1:
        q = ar.scale(q, s, lev) if q else q
    return r, int(mu), q


def prim_pseudo_divrem(A, B):
    """(r, mu, q) with mu*A == B*q + r, mu the smallest multipliers needed.

    Works in the top variable of the ring of A and B.
    """
    if A.ring != B.ring:
        raise ValueError("ring mismatch")
    if not B.data:
        raise ZeroDivisionError("pseudo-division by zero")
    ring = A.ring
    lev = ring.nlevels
    ar = ring.arith if ring.main is not None else ring.level_ring(lev).arith
    r, mu, q = _pseudo_divrem(ar, A.data, B.data, lev)
    return RPoly(ring, r), mu, RPoly(ring, q)


def _qinv(ring, u, lev):
    """Raw quasi-inverse of a nonzero level-``lev`` element of ``ring``.

    Returns (v, r) with v*u == r for a nonzero rational r.
    """
    if lev == 0:
        return mpq(u.denominator), u.numerator
    ar = ring.arith
    c = _rational_content(u, lev)
    u = ar.scale(u, 1 / c, lev)
    P = ring.level_ring(lev).arith
    sub_lev = lev - 1
    r0, r1 = ring.extensions[lev - 1], u
    t0, t1 = (), (ar.one(sub_lev),)
    while len(r1) > 1:
        iv, _ = _qinv(ring, r1[-1], sub_lev)
        r1 = P.coef_scale(r1, iv, lev)
        t1 = P.coef_scale(t1, iv, lev)
        r1, t1 = _strip(P, lev, r1, t1)
        pr, mu, pq = _pseudo_divrem(P, r0, r1, lev)
        if not pr:
            lc = P.scalar_of(r1[-1], sub_lev)
            factor = P.scale(r1, 1 / lc, lev)
            raise ZeroDivisorFound(lev, RPoly(ring.level_ring(lev), factor))
        t_new = P.sub(P.scale(t0, mpq(mu), lev), P.mul(pq, t1, lev), lev)
        r0, r1, t0, t1 = r1, pr, t1, t_new
        r1, t1 = _strip(P, lev, r1, t1)
    v, r = _qinv(ring, r1[0], sub_lev)
    t1 = ar.reduce(P.coef_scale(t1, v, lev), lev)
    return t1, mpq(r) * c


def _normalize_qinv(ar, v, r, lev):
    """Scale (v, r) so den(v) == 1, r is a positive integer and
    gcd(ic(v), r) == 1."""
    c = _rational_content(v, lev)
    r = r / c
    k = mpq(r.denominator) / c
    if r < 0:
        k = -k
    return ar.scale(v, k, lev), abs(int(r.numerator))


def quasi_inverse(u):
    """QuasiInverse (v, r) of a nonzero tower element; raises ZeroDivisorFound."""
    if u.ring.characteristic:
        raise ValueError("quasi_inverse needs characteristic 0")
    ring = u.ring
    data = u.data
    if ring.main is not None:
        if len(data) > 1:
            raise ValueError("not a field element")
        data = data[0] if data else ()
        ring = ring.base
    if not data:
        raise ZeroDivisionError("quasi-inverse of zero")
    lev = ring.nlevels
    v, r = _qinv(ring, data, lev)
    v, r = _normalize_qinv(ring.arith, v, r, lev)
    return QuasiInverse(u.ring.embed(RPoly(ring, v)), r)


def _pp(ar, f, lev):
    c = _rational_content(f, lev)
    return ar.scale(f, 1 / c, lev) if c != 1 else f


def pff_gcd(f1, f2, trace=None):
    """Z-primitive associate of the monic gcd of f1 and f2 in L[x].

    If ``trace`` is a list, the height of every remainder is appended to it.
    """
    if f1.ring != f2.ring:
        raise ValueError("ring mismatch")
    ring = f1.ring
    if ring.characteristic:
        raise ValueError("pff_gcd needs characteristic 0")
    if ring.main is None:
        raise ValueError("expected polynomials in the main variable")
    if not f1.data and not f2.data:
        raise ValueError("gcd(0, 0) is undefined")
    ar = ring.arith
    base = ring.base
    lev = ring.nlevels
    sub_lev = lev - 1
    r0, r1 = semi_associate(f1)[0].data, semi_associate(f2)[0].data
    if not r1:
        r0, r1 = r1, r0
    if r0 and len(r0) < len(r1):
        r0, r1 = r1, r0
    while True:
        v, _ = _qinv(base, r1[-1], sub_lev)
        r1 = _pp(ar, ar.coef_scale(r1, v, lev), lev)
        if ar.scalar_of(r1[-1], sub_lev) < 0:
            r1 = ar.neg(r1, lev)
        if not r0:
            return RPoly(ring, r1)
        pr, _, _ = _pseudo_divrem(ar, r0, r1, lev)
        if not pr:
            return RPoly(ring, r1)
        r0, r1 = r1, _pp(ar, pr, lev)
        if trace is not None:
            trace.append(height(RPoly(ring, r1)))


def monic_ea_char0(f1, f2):
    """Monic gcd by the Euclidean algorithm over L with exact rationals."""
    if f1.ring != f2.ring:
        raise ValueError("ring mismatch")
    ring = f1.ring
    if ring.characteristic:
        raise ValueError("monic_ea_char0 needs characteristic 0")
    if ring.main is None:
        raise ValueError("expected polynomials in the main variable")
    ar = ring.arith
    n = ring.n

    def is_unit(c):
        return bool(ar.norm(c, n, 0))

    return RPoly(ring, ar.monic_ea(f1.data, f2.data, ring.nlevels, is_unit))
