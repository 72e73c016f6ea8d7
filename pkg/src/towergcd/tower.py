"""Number-field towers Q(a_1, ..., a_n) and polynomials over them.

Elements are stored recursively dense.  A level-0 element is a scalar: an
``mpq`` in characteristic 0, a Python ``int`` in ``[0, p)`` in characteristic
p.  A level-k element is a tuple of level-(k-1) elements indexed by the
exponent of the k-th variable, with no trailing zeros.  The zero of every
non-scalar level is the empty tuple, so ``not a`` tests for zero at any level.

Levels 1..n are the extension variables z_1..z_n and are kept reduced modulo
the monic minimal polynomials m_1..m_n.  A ring may carry one further free
variable (the main variable x) above them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce as _fold

import gmpy2
from gmpy2 import mpq

__all__ = [
    "RingSpec",
    "RPoly",
    "ZeroDivisorFound",
    "make_ring",
    "arith",
    "denom_of",
    "height",
    "semi_associate",
    "icontent_pp",
    "norm",
    "invert_char0",
    "monic",
]

ZERO = ()


class ZeroDivisorFound(ArithmeticError):
    """Raised when an inversion meets a zero divisor.

    ``factor`` is a monic, non-trivial divisor of the ``level``-th extension
    polynomial, as a polynomial in z_level over the sub-tower below it.
    """

    def __init__(self, level, factor):
        self.level = level
        self.factor = factor
        super().__init__(f"zero divisor at level {level}: factor {factor}")


def _trim(seq):
    n = len(seq)
    while n and not seq[n - 1]:
        n -= 1
    return tuple(seq[:n])


# ---------------------------------------------------------------------------
# recursive dense engine


class _Arith:
    """Arithmetic on raw data for one ring.

    ``p == 0`` selects rational leaves.  ``exts[i-1]`` is the monic m_i as raw
    level-i data.  Methods take an explicit ``lev`` giving the level of their
    operands.
    """

    def __init__(self, ring):
        self.ring = ring
        self.p = ring.characteristic
        self.exts = ring.monic_extensions
        self.n = len(self.exts)

    # scalars -------------------------------------------------------------

    def leaf(self, c):
        p = self.p
        if p:
            return int(c) % p if not isinstance(c, mpq) else _mpq_mod(c, p)
        return mpq(c)

    def leaf_inv(self, c):
        if not c:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(c, -1, self.p)
        return 1 / c

    def one(self, lev):
        o = 1 if self.p else mpq(1)
        for _ in range(lev):
            o = (o,)
        return o

    def const(self, c, lev):
        """Embed an already-normalised scalar ``c`` at level ``lev``."""
        if not c:
            return self.zero(lev)
        for _ in range(lev):
            c = (c,)
        return c

    def zero(self, lev):
        if lev:
            return ZERO
        return 0 if self.p else mpq(0)

    @staticmethod
    def scalar_of(a, lev):
        """Return the scalar if ``a`` is constant in every variable, else None."""
        for _ in range(lev):
            if not a:
                return 0
            if len(a) != 1:
                return None
            a = a[0]
        return a

    # additive ------------------------------------------------------------

    def add(self, a, b, lev):
        if lev == 0:
            s = a + b
            return s % self.p if self.p else s
        if not a:
            return b
        if not b:
            return a
        la, lb = len(a), len(b)
        if la < lb:
            a, b, la, lb = b, a, lb, la
        add = self.add
        out = [add(a[i], b[i], lev - 1) for i in range(lb)]
        out.extend(a[lb:])
        return _trim(out) if la == lb else tuple(out)

    def neg(self, a, lev):
        if lev == 0:
            return (-a) % self.p if self.p else -a
        neg = self.neg
        return tuple(neg(c, lev - 1) for c in a)

    def sub(self, a, b, lev):
        if lev == 0:
            s = a - b
            return s % self.p if self.p else s
        if not b:
            return a
        if not a:
            return self.neg(b, lev)
        la, lb = len(a), len(b)
        sub, neg = self.sub, self.neg
        out = [sub(a[i], b[i], lev - 1) for i in range(min(la, lb))]
        if la > lb:
            out.extend(a[lb:])
        elif lb > la:
            out.extend(neg(c, lev - 1) for c in b[la:])
        return _trim(out)

    def scale(self, a, c, lev):
        """Multiply every leaf of ``a`` by the scalar ``c``."""
        if lev == 0:
            s = a * c
            return s % self.p if self.p else s
        if not c or not a:
            return ZERO
        if self.p:
            if lev == 1:
                p = self.p
                return _trim([x * c % p for x in a])
        elif lev == 1:
            return tuple(x * c for x in a)
        scale = self.scale
        return _trim([scale(x, c, lev - 1) for x in a])

    # multiplicative ------------------------------------------------------

    def pmul(self, a, b, lev):
        """Product as polynomials in the level-``lev`` variable (no reduction
        at ``lev``; coefficient products are reduced)."""
        if not a or not b:
            return ZERO
        if lev == 1:
            return self._conv_leaves(a, b)
        sub_lev = lev - 1
        mul, add = self.mul, self.add
        if len(b) == 1:
            b0 = b[0]
            return _trim([mul(x, b0, sub_lev) if x else ZERO for x in a])
        if len(a) == 1:
            a0 = a[0]
            return _trim([mul(a0, y, sub_lev) if y else ZERO for y in b])
        out = [ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add(out[i + j], mul(x, y, sub_lev), sub_lev)
        return _trim(out)

    def _conv_leaves(self, a, b):
        p = self.p
        out = [0 if p else mpq(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        if p:
            return _trim([c % p for c in out])
        return _trim(out)

    def mul(self, a, b, lev):
        if lev == 0:
            s = a * b
            return s % self.p if self.p else s
        if not a or not b:
            return ZERO
        if lev > self.n:
            return self.pmul(a, b, lev)
        if lev == 1:
            return self._mul1(a, b)
        return self.reduce_top(self.pmul(a, b, lev), lev)

    def _mul1(self, a, b):
        # convolution and reduction modulo m_1 over the leaf domain in one pass
        m = self.exts[0]
        d = len(m) - 1
        p = self.p
        out = [0 if p else mpq(0)] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        top = len(out) - 1
        if top >= d:
            mlow = m[:d]
            for k in range(top, d - 1, -1):
                c = out[k]
                if p:
                    c %= p
                if c:
                    base = k - d
                    for j, mj in enumerate(mlow):
                        if mj:
                            out[base + j] -= c * mj
            del out[d:]
        if p:
            return _trim([c % p for c in out])
        return _trim(out)

    def reduce_top(self, a, lev):
        """Remainder of a level-``lev`` polynomial modulo m_lev (coefficients
        already reduced)."""
        m = self.exts[lev - 1]
        d = len(m) - 1
        if len(a) <= d:
            return a
        out = list(a)
        sub_lev = lev - 1
        mul, sub = self.mul, self.sub
        for k in range(len(out) - 1, d - 1, -1):
            c = out[k]
            if c:
                base = k - d
                for j in range(d):
                    mj = m[j]
                    if mj:
                        out[base + j] = sub(out[base + j], mul(c, mj, sub_lev), sub_lev)
        return _trim(out[:d])

    def reduce(self, a, lev):
        """Canonical form of raw data whose z-degrees may exceed d_i."""
        if lev == 0:
            return a % self.p if self.p else a
        if not a:
            return ZERO
        red = self.reduce
        out = _trim([red(c, lev - 1) for c in a])
        if lev <= self.n:
            out = self.reduce_top(out, lev)
        return out

    def mul_raw(self, a, b, lev):
        """Product of raw data with no reduction at any level."""
        if lev == 0:
            s = a * b
            return s % self.p if self.p else s
        if not a or not b:
            return ZERO
        if lev == 1:
            return self._conv_leaves(a, b)
        sub_lev = lev - 1
        out = [ZERO] * (len(a) + len(b) - 1)
        mul_raw, add = self.mul_raw, self.add
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add(out[i + j], mul_raw(x, y, sub_lev), sub_lev)
        return _trim(out)

    def power(self, a, e, lev):
        result = self.one(lev)
        while e:
            if e & 1:
                result = self.mul(result, a, lev)
            e >>= 1
            if e:
                a = self.mul(a, a, lev)
        return result

    # division ------------------------------------------------------------

    def coef_scale(self, a, u, lev):
        """Multiply each coefficient of a level-``lev`` polynomial by the
        level-(lev-1) element ``u``."""
        if lev == 1:
            return self.scale(a, u, 1)
        mul = self.mul
        return _trim([mul(c, u, lev - 1) if c else ZERO for c in a])

    def divrem(self, a, b, lev):
        """Quotient and remainder of polynomials in the level-``lev`` variable;
        ``b`` must be monic."""
        if not b:
            raise ZeroDivisionError("division by zero polynomial")
        db = len(b) - 1
        if len(a) <= db:
            return ZERO, a
        out = list(a)
        q = [None] * (len(out) - db)
        sub_lev = lev - 1
        mul, sub = self.mul, self.sub
        for k in range(len(out) - 1, db - 1, -1):
            c = out[k]
            q[k - db] = c
            if c:
                base = k - db
                for j in range(db):
                    bj = b[j]
                    if bj:
                        out[base + j] = sub(out[base + j], mul(c, bj, sub_lev), sub_lev)
        zero = self.zero(sub_lev)
        return _trim([zero if c is None else c for c in q]), _trim(out[:db])

    def inv(self, a, lev):
        """Inverse of a level-``lev`` element by recursive extended Euclid.

        Raises ZeroDivisorFound when the gcd with some m_i is non-trivial.
        """
        if lev == 0:
            return self.leaf_inv(a)
        if not a:
            raise ZeroDivisionError("inverse of zero")
        sub_lev = lev - 1
        r0, r1 = self.exts[lev - 1], a
        t0, t1 = ZERO, (self.one(sub_lev),)
        while True:
            if len(r1) == 1:
                return self.coef_scale(t1, self.inv(r1[0], sub_lev), lev)
            u = self.inv(r1[-1], sub_lev)
            r1 = self.coef_scale(r1, u, lev)
            t1 = self.coef_scale(t1, u, lev)
            q, r = self.divrem(r0, r1, lev)
            if not r:
                raise ZeroDivisorFound(lev, RPoly(self.ring.level_ring(lev), r1))
            r0, r1, t0, t1 = r1, r, t1, self.sub(t0, self.pmul(q, t1, lev), lev)

    def monic(self, a, lev):
        if not a:
            return a
        lc = a[-1]
        if lc == self.one(lev - 1):
            return a
        return self.coef_scale(a, self.inv(lc, lev - 1), lev)

    def monic_ea(self, f1, f2, lev, unit_test=None):
        """Monic Euclidean algorithm over the ring below ``lev``.

        ``unit_test(c)`` decides whether a constant remainder may be replaced
        by 1 without inverting it.
        """
        r_prev, r = f1, f2
        if not r:
            if not r_prev:
                raise ValueError("gcd(0, 0) is undefined")
            return self.monic(r_prev, lev)
        one = (self.one(lev - 1),)
        while r:
            if len(r) == 1 and unit_test is not None and unit_test(r[0]):
                return one
            r = self.monic(r, lev)
            _, rem = self.divrem(r_prev, r, lev)
            r_prev, r = r, rem
        return r_prev

    # norms ---------------------------------------------------------------

    def resultant_ext(self, a, lev):
        """res_{z_lev}(m_lev, a), an element of level lev-1."""
        sub_lev = lev - 1
        m = self.exts[lev - 1]
        d = len(m) - 1
        if not a:
            return self.zero(sub_lev)
        if len(a) == 1:
            return self.power(a[0], d, sub_lev)
        if sub_lev == 0:
            return self._resultant_field(m, a)
        return self._det(_sylvester(m, a, self.zero(sub_lev)), sub_lev)

    def _resultant_field(self, A, B):
        # Euclidean resultant over the scalar field
        p = self.p
        res = 1 if p else mpq(1)
        while True:
            da, db = len(A) - 1, len(B) - 1
            if db == 0:
                return res * pow(B[0], da, p) % p if p else res * B[0] ** da
            lcinv = self.leaf_inv(B[-1])
            R = list(A)
            for k in range(da, db - 1, -1):
                c = R[k] * lcinv
                if p:
                    c %= p
                if c:
                    for j in range(db + 1):
                        R[k - db + j] -= c * B[j]
                        if p:
                            R[k - db + j] %= p
            R = _trim(R[:db])
            if not R:
                return self.zero(0)
            dr = len(R) - 1
            factor = B[-1] ** (da - dr)
            if (da * db) & 1:
                factor = -factor
            res = res * factor
            if p:
                res %= p
            A, B = B, R

    def _det(self, M, lev):
        """Division-free (Berkowitz) determinant over level ``lev``."""
        add, mul, neg = self.add, self.mul, self.neg
        zero, one = self.zero(lev), self.one(lev)
        n = len(M)

        def dot(u, v):
            s = zero
            for x, y in zip(u, v):
                if x and y:
                    s = add(s, mul(x, y, lev), lev)
            return s

        vect = [one, neg(M[0][0], lev)]
        for r in range(1, n):
            col = [one, neg(M[r][r], lev)]
            row = M[r][:r]
            v = [M[i][r] for i in range(r)]
            for k in range(r):
                col.append(neg(dot(row, v), lev))
                if k < r - 1:
                    v = [dot(M[i][:r], v) for i in range(r)]
            new = []
            for i in range(r + 2):
                s = zero
                for j in range(min(i, r) + 1):
                    s = add(s, mul(col[i - j], vect[j], lev), lev)
                new.append(s)
            vect = new
        det = vect[n]
        return det if n % 2 == 0 else neg(det, lev)

    def norm(self, a, lev, down_to=0):
        while lev > down_to:
            a = self.resultant_ext(a, lev)
            lev -= 1
        return a


def _sylvester(m, a, zero):
    """Sylvester matrix of m and a (coefficient lists, low degree first)."""
    d, e = len(m) - 1, len(a) - 1
    size = d + e
    rows = []
    for i in range(e):
        row = [zero] * size
        for j, c in enumerate(reversed(m)):
            row[i + j] = c
        rows.append(row)
    for i in range(d):
        row = [zero] * size
        for j, c in enumerate(reversed(a)):
            row[i + j] = c
        rows.append(row)
    return rows


def _mpq_mod(c, p):
    den = int(c.denominator) % p
    if not den:
        raise ZeroDivisionError(f"{p} divides the denominator {c.denominator}")
    return int(c.numerator) * pow(den, -1, p) % p


# ---------------------------------------------------------------------------
# rings


@dataclass(frozen=True, eq=False)
class RingSpec:
    """A tower Q(z_1..z_n) (or its image mod p), optionally with a free main
    variable on top.

    ``extensions`` holds the semi-associates m̌_i (integer coefficients,
    leading coefficient l_i) in characteristic 0 and the monic images in
    characteristic p; ``monic_extensions`` always holds the monic m_i.
    """

    characteristic: int
    variables: tuple
    extensions: tuple
    denominators: tuple
    monic_extensions: tuple = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "_cache", {})

    def __eq__(self, other):
        if not isinstance(other, RingSpec):
            return NotImplemented
        return (
            self.characteristic == other.characteristic
            and self.variables == other.variables
            and self.monic_extensions == other.monic_extensions
        )

    def __hash__(self):
        return hash((self.characteristic, self.variables, self.monic_extensions))

    def __getstate__(self):
        state = dict(self.__dict__)
        state["_cache"] = {}
        return state

    def __setstate__(self, state):
        for k, v in state.items():
            object.__setattr__(self, k, v)

    @property
    def n(self):
        return len(self.monic_extensions)

    @property
    def degrees(self):
        return tuple(len(m) - 1 for m in self.monic_extensions)

    @property
    def D(self):
        return _fold(lambda x, y: x * y, self.degrees, 1)

    @property
    def nlevels(self):
        return len(self.variables)

    @property
    def main(self):
        return self.variables[-1] if len(self.variables) > self.n else None

    @property
    def l_star(self):
        return _fold(lambda x, y: x * y, self.denominators, 1)

    @property
    def arith(self):
        ar = self._cache.get("arith")
        if ar is None:
            ar = self._cache["arith"] = _Arith(self)
        return ar

    def _derived(self, key, build):
        r = self._cache.get(key)
        if r is None:
            r = self._cache[key] = build()
        return r

    def sub(self, i):
        """The field part L_i = Q(z_1..z_i) with no main variable."""
        if i == self.n and self.main is None:
            return self
        return self._derived(
            ("sub", i),
            lambda: RingSpec(
                self.characteristic,
                self.variables[:i],
                self.extensions[:i],
                self.denominators[:i],
                self.monic_extensions[:i],
            ),
        )

    @property
    def base(self):
        return self.sub(self.n)

    def over(self, name):
        """Adjoin a free main variable."""
        if self.main is not None:
            raise ValueError("ring already has a main variable")
        if name in self.variables:
            raise ValueError(f"variable {name!r} already declared")
        return self._derived(
            ("over", name),
            lambda: RingSpec(
                self.characteristic,
                self.variables + (name,),
                self.extensions,
                self.denominators,
                self.monic_extensions,
            ),
        )

    def level_ring(self, i):
        """L_{i-1}[z_i]: the ring in which m_i and its factors live."""
        return self._derived(("level", i), lambda: self.sub(i - 1).over(self.variables[i - 1]))

    # constructors --------------------------------------------------------

    def zero(self):
        return RPoly(self, self.arith.zero(self.nlevels))

    def one(self):
        return RPoly(self, self.arith.one(self.nlevels))

    def const(self, c):
        ar = self.arith
        return RPoly(self, ar.const(ar.leaf(c), self.nlevels))

    def gen(self, name):
        """The variable ``name`` as an element of this ring."""
        idx = self.variables.index(name)
        lev = idx + 1
        ar = self.arith
        data = (ar.zero(lev - 1), ar.one(lev - 1))
        if lev <= self.n and self.degrees[idx] == 1:
            data = ar.reduce_top(data, lev)
        for _ in range(self.nlevels - lev):
            data = (data,)
        return RPoly(self, data)

    def embed(self, f):
        """View an element of a sub-tower of this ring as an element here."""
        lev = f.ring.nlevels
        if f.ring.characteristic != self.characteristic or f.ring.variables != self.variables[:lev]:
            raise ValueError("ring mismatch")
        data = f.data
        for _ in range(self.nlevels - lev):
            data = (data,) if data else ZERO
        return RPoly(self, data)

    def __repr__(self):
        from .expr import format_data

        exts = ", ".join(
            format_data(m, self.level_ring(i + 1)) for i, m in enumerate(self.monic_extensions)
        )
        return f"RingSpec(char={self.characteristic}, vars={list(self.variables)}, exts=[{exts}])"


def _is_prime(p):
    return p >= 2 and bool(gmpy2.is_prime(p))


def make_ring(characteristic, variables, extensions):
    """Build a tower from monic extension polynomials.

    ``extensions[i]`` may be a string in the expression grammar, an RPoly over
    the previous level with ``variables[i]`` as its main variable, or a
    coefficient list (low degree first) of scalars for the first level.  A
    trailing variable without an extension becomes the free main variable.
    Irreducibility is not checked.
    """
    from .expr import parse_poly

    p = int(characteristic)
    if p < 0 or (p and not _is_prime(p)):
        raise ValueError(f"characteristic must be 0 or prime, got {characteristic}")
    variables = tuple(str(v) for v in variables)
    if len(set(variables)) != len(variables):
        raise ValueError("variables must be distinct")
    if len(extensions) > len(variables) or len(variables) - len(extensions) > 1:
        raise ValueError("need one extension per variable, plus at most one main variable")

    ring = RingSpec(p, (), (), (), ())
    for i, ext in enumerate(extensions):
        z = variables[i]
        pr = ring.over(z)
        if isinstance(ext, str):
            try:
                f = parse_poly(ext, pr)
            except ValueError as e:
                later = [v for v in variables[i + 1 :] if v in ext]
                if later:
                    raise ValueError(
                        f"extension {i + 1} involves later variable(s) {later}"
                    ) from e
                raise
        elif isinstance(ext, RPoly):
            if ext.ring.variables != pr.variables or ext.ring.characteristic != p:
                raise ValueError(f"extension {i + 1} is not a polynomial in {z} over the sub-tower")
            f = ext
        else:
            f = RPoly(pr, _trim([pr.arith.const(pr.arith.leaf(c), i) for c in ext]))
        data = f.data
        if len(data) < 2:
            raise ValueError(f"extension {i + 1} must have degree >= 1 in {z}")
        if data[-1] != pr.arith.one(i):
            raise ValueError(f"extension {i + 1} must be monic in {z}")
        if p:
            semi, l = data, 1
        else:
            semi_f, r = semi_associate(f)
            semi, l = semi_f.data, int(r)
        ring = RingSpec(
            p,
            ring.variables + (z,),
            ring.extensions + (semi,),
            ring.denominators + (l,),
            ring.monic_extensions + (data,),
        )
    if len(variables) > len(extensions):
        ring = ring.over(variables[-1])
    return ring


# ---------------------------------------------------------------------------
# polynomials


class RPoly:
    """An immutable element of a RingSpec."""

    __slots__ = ("ring", "data")

    def __init__(self, ring, data):
        self.ring = ring
        self.data = data

    def _check(self, other):
        if isinstance(other, RPoly):
            if other.ring is not self.ring and other.ring != self.ring:
                raise ValueError("ring mismatch")
            return other
        if isinstance(other, (int, mpq)) or type(other).__name__ in ("Fraction", "mpz"):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return RPoly(self.ring, self.ring.arith.add(self.data, other.data, self.ring.nlevels))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return RPoly(self.ring, self.ring.arith.sub(self.data, other.data, self.ring.nlevels))

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return RPoly(self.ring, self.ring.arith.neg(self.data, self.ring.nlevels))

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return RPoly(self.ring, self.ring.arith.mul(self.data, other.data, self.ring.nlevels))

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a nonnegative integer")
        return RPoly(self.ring, self.ring.arith.power(self.data, e, self.ring.nlevels))

    def __eq__(self, other):
        if isinstance(other, RPoly):
            return self.ring == other.ring and self.data == other.data
        other = self._check(other)
        if other is NotImplemented:
            return other
        return self.data == other.data

    def __hash__(self):
        return hash((self.ring, self.data))

    def __bool__(self):
        return bool(self.data)

    def is_zero(self):
        return not self.data

    def degree(self):
        """Degree in the top variable; -1 for zero."""
        if self.ring.nlevels == 0:
            return 0 if self.data else -1
        return len(self.data) - 1

    def coeffs(self):
        """Coefficients in the top variable as elements of the ring below."""
        below = self._below()
        return [RPoly(below, c) for c in self.data]

    def lc(self):
        below = self._below()
        if not self.data:
            return below.zero()
        return RPoly(below, self.data[-1])

    def _below(self):
        r = self.ring
        if r.main is not None:
            return r.base
        return r.sub(r.n - 1)

    def scalar(self):
        """The rational value if this is a constant, else None."""
        return self.ring.arith.scalar_of(self.data, self.ring.nlevels)

    def leaves(self):
        return list(_leaves(self.data, self.ring.nlevels))

    def __str__(self):
        from .expr import format_poly

        return format_poly(self)

    def __repr__(self):
        return f"RPoly({self})"


def _leaves(data, lev):
    if lev == 0:
        yield data
        return
    for c in data:
        if c:
            yield from _leaves(c, lev - 1)


def _map_leaves(data, lev, fn):
    if lev == 0:
        return fn(data)
    return _trim([_map_leaves(c, lev - 1, fn) if c else c for c in data])


def arith(op, f, g):
    """Apply ``op`` (add, sub, mul or divrem_by_monic) to two elements."""
    if f.ring != g.ring:
        raise ValueError("ring mismatch")
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "divrem_by_monic":
        ring = f.ring
        lev = ring.nlevels
        if not g.data:
            raise ZeroDivisionError("division by zero polynomial")
        if lev == 0 or g.data[-1] != ring.arith.one(lev - 1):
            raise ValueError("divisor must be monic")
        if lev <= ring.n:
            ring = ring.level_ring(lev)
        q, r = ring.arith.divrem(f.data, g.data, lev)
        return RPoly(f.ring, q), RPoly(f.ring, r)
    raise ValueError(f"unknown operation {op!r}")


def monic(f):
    """lc(f)^-1 f; raises ZeroDivisorFound if lc(f) is not invertible."""
    ring = f.ring
    lev = ring.nlevels
    ar = ring.arith if lev > ring.n else ring.level_ring(lev).arith
    return RPoly(ring, ar.monic(f.data, lev))


# ---------------------------------------------------------------------------
# characteristic-0 invariants


def _require_char0(f):
    if f.ring.characteristic:
        raise ValueError("operation requires characteristic 0")


def denom_of(f):
    """Smallest positive integer d with d*f integral over the power basis."""
    _require_char0(f)
    return int(_fold(gmpy2.lcm, (c.denominator for c in f.leaves()), gmpy2.mpz(1)))


def height(f):
    """Largest absolute numerator or denominator among the coefficients."""
    _require_char0(f)
    h = 0
    for c in f.leaves():
        h = max(h, abs(int(c.numerator)), int(c.denominator))
    return h


def _rational_content(data, lev):
    """gcd of numerators over lcm of denominators, as a positive mpq."""
    num = gmpy2.mpz(0)
    den = gmpy2.mpz(1)
    for c in _leaves(data, lev):
        num = gmpy2.gcd(num, c.numerator)
        den = gmpy2.lcm(den, c.denominator)
    if not num:
        return mpq(1)
    return mpq(num, den)


def semi_associate(f):
    """Return (r*f, r) for the smallest positive rational r with den(r*f) = 1."""
    _require_char0(f)
    if not f.data:
        return f, mpq(1)
    r = 1 / _rational_content(f.data, f.ring.nlevels)
    return RPoly(f.ring, f.ring.arith.scale(f.data, r, f.ring.nlevels)), r


def icontent_pp(f):
    """Integer content and primitive part of an integral element."""
    _require_char0(f)
    if not f.data:
        return 1, f
    lev = f.ring.nlevels
    for c in _leaves(f.data, lev):
        if c.denominator != 1:
            raise ValueError("icontent_pp needs integer coefficients")
    c = _rational_content(f.data, lev)
    return int(c), RPoly(f.ring, f.ring.arith.scale(f.data, 1 / c, lev))


def norm(a, down_to=0):
    """Norm of a field element down to the sub-field L_{down_to}.

    Computed by iterated resultants with the extension polynomials.
    """
    ring = a.ring
    if ring.main is not None:
        if len(a.data) > 1:
            raise ValueError("norm needs a field element, not a polynomial in the main variable")
        a = RPoly(ring.base, a.data[0] if a.data else ZERO)
        ring = ring.base
    lev = ring.nlevels
    return RPoly(ring.sub(down_to), ring.arith.norm(a.data, lev, down_to))


def invert_char0(a):
    """1/a in the tower; raises ZeroDivisorFound on a non-unit."""
    _require_char0(a)
    if not a.data:
        raise ZeroDivisionError("inverse of zero")
    ring = a.ring
    lev = ring.nlevels
    if ring.main is not None:
        if len(a.data) > 1:
            raise ValueError("not a field element")
        return RPoly(ring, (ring.arith.inv(a.data[0], lev - 1),))
    return RPoly(ring, ring.arith.inv(a.data, lev))
