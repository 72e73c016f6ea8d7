"""The tower modulo a word-sized prime: reduction, inverses, norms and the
monic Euclidean algorithm over the (possibly non-field) ring R_p/pR_p."""

from dataclasses import dataclass

from .tower import RingSpec, RPoly, ZeroDivisorFound, _mpq_mod, _trim

__all__ = [
    "ModRing",
    "NotReducible",
    "ZeroDivisorFound",
    "reduce_mod_p",
    "inv_mod_p",
    "norm_mod_p",
    "monic_ea_mod_p",
]


class NotReducible(ArithmeticError):
    """p divides a denominator, so the element has no image mod p."""


@dataclass(frozen=True, eq=False)
class ModRing(RingSpec):
    """Image of a characteristic-0 tower mod p, with every m_i made monic."""

    source: RingSpec = None

    @classmethod
    def of(cls, ring, p):
        if ring.characteristic:
            raise ValueError("source ring must have characteristic 0")
        cached = ring._cache.get(("mod", p))
        if cached is not None:
            return cached
        if ring.l_star % p == 0:
            raise ValueError(f"p={p} divides l_* = {ring.l_star} (lc-bad prime)")
        exts = tuple(_reduce_data(m, i + 1, p) for i, m in enumerate(ring.monic_extensions))
        R = cls(p, ring.variables, exts, (1,) * len(exts), exts, source=ring)
        ring._cache[("mod", p)] = R
        return R

    @property
    def p(self):
        return self.characteristic


def _reduce_data(data, lev, p):
    if lev == 0:
        try:
            return _mpq_mod(data, p)
        except ZeroDivisionError:
            raise NotReducible(f"{p} divides a denominator") from None
    if lev == 1:
        return _trim([_mpq_mod_checked(c, p) for c in data])
    return _trim([_reduce_data(c, lev - 1, p) if c else () for c in data])


def _mpq_mod_checked(c, p):
    try:
        return _mpq_mod(c, p)
    except ZeroDivisionError:
        raise NotReducible(f"{p} divides a denominator") from None


def reduce_mod_p(f, R):
    """Image of a characteristic-0 element in R; raises NotReducible."""
    src = f.ring
    if src.characteristic or src.variables != R.variables or src.monic_extensions != R.source.monic_extensions:
        raise ValueError("tower mismatch")
    return RPoly(R, _reduce_data(f.data, src.nlevels, R.p))


def _field_data(a):
    ring = a.ring
    if ring.main is not None:
        if len(a.data) > 1:
            raise ValueError("expected a field element")
        return ring.base, (a.data[0] if a.data else ())
    return ring, a.data


def inv_mod_p(a):
    """Inverse by recursive extended Euclid; raises ZeroDivisorFound."""
    ring, data = _field_data(a)
    if not data:
        raise ZeroDivisionError("inverse of zero")
    inv = ring.arith.inv(data, ring.nlevels)
    return a.ring.embed(RPoly(ring, inv))


def norm_mod_p(a):
    """Full norm down to F_p; nonzero exactly when a is a unit."""
    ring, data = _field_data(a)
    return ring.arith.norm(data, ring.nlevels, 0)


def _unit_test(ring):
    ar = ring.arith
    lev = ring.n

    def is_unit(c):
        return bool(ar.norm(c, lev, 0))

    return is_unit


def monic_ea_mod_p(f1, f2):
    """Monic gcd of f1, f2 over R_p/pR_p.

    A constant remainder is replaced by 1 only once its norm certifies it
    is a unit.  Raises ZeroDivisorFound when an inversion fails (fail prime).
    """
    ring = f1.ring
    if f2.ring != ring:
        raise ValueError("ring mismatch")
    if ring.main is None:
        raise ValueError("expected polynomials in the main variable")
    lev = ring.nlevels
    g = ring.arith.monic_ea(f1.data, f2.data, lev, _unit_test(ring))
    return RPoly(ring, g)
