"""Seeded prime streams and the lc-bad test."""

import random

import gmpy2

from .tower import denom_of, semi_associate

__all__ = ["PrimeStream", "PrimePoolExhausted", "next_prime", "is_lc_bad"]

_SIEVE_LIMIT_BITS = 20


class PrimePoolExhausted(RuntimeError):
    pass


class PrimeStream:
    """Distinct random primes p with 2^(bits-1) < p < 2^bits.

    The sequence depends only on ``seed``.  ``reserved`` is never emitted.
    """

    def __init__(self, bit_length=31, seed=0, reserved=None):
        if not 2 <= bit_length <= 62:
            raise ValueError("bit_length must lie in [2, 62]")
        self.bit_length = bit_length
        self.seed = seed
        self.reserved = reserved
        self.emitted = 0
        self._rng = random.Random(seed)
        self._seen = set()
        self._pool = None
        if bit_length <= _SIEVE_LIMIT_BITS:
            lo, hi = 1 << (bit_length - 1), 1 << bit_length
            pool = [q for q in range(lo + 1, hi) if gmpy2.is_prime(q) and q != reserved]
            self._rng.shuffle(pool)
            self._pool = pool

    def __iter__(self):
        return self

    def __next__(self):
        return self.next()

    def next(self):
        if self._pool is not None:
            if not self._pool:
                raise PrimePoolExhausted(f"no {self.bit_length}-bit primes left")
            p = self._pool.pop()
        else:
            lo, hi = (1 << (self.bit_length - 1)) + 1, (1 << self.bit_length) - 1
            rng = self._rng
            while True:
                p = rng.randrange(lo, hi) | 1
                if p not in self._seen and p != self.reserved and gmpy2.is_prime(p):
                    break
            self._seen.add(p)
        self.emitted += 1
        return p


def next_prime(s):
    return s.next()


def _integer_leaves_mod_zero(data, lev, p):
    if lev == 0:
        return data.numerator % p == 0
    return all(_integer_leaves_mod_zero(c, lev - 1, p) for c in data if c)


def is_lc_bad(p, f1, f2, ring=None):
    """True when p divides den(f1), den(f2) or some l_i, or when the leading
    coefficient of the semi-associate of f2 vanishes mod p."""
    ring = ring or f1.ring
    if ring.l_star % p == 0:
        return True
    if denom_of(f1) % p == 0 or denom_of(f2) % p == 0:
        return True
    if not f2.data:
        return False
    f2s, _ = semi_associate(f2)
    lc = f2s.data[-1]
    return _integer_leaves_mod_zero(lc, ring.nlevels - 1, p)
