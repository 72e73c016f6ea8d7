"""Shared test towers and random element generators."""

import random

from gmpy2 import mpq

from towergcd import RPoly, make_ring

# every tower here is a field
TOWERS = {
    "cubic": (["z"], ["z^3+3*z^2-46*z+1"]),
    "q23": (["u", "v"], ["u^2-2", "v^2-3"]),
    "q235": (["u", "v", "w"], ["u^2-2", "v^2-3", "w^2-5"]),
    "quartic": (["z"], ["z^4-10*z^2+1"]),
    "cbrt2_omega": (["u", "v"], ["u^3-2", "v^2+v+1"]),
    "i_root4": (["u", "v"], ["u^2+1", "v^4-2"]),
    "frac5": (["z"], ["z^5+z^4+(1/5)*z^3-1/5"]),
    "frac_tower": (["u", "v"], ["u^2-2", "v^2-u/3"]),
    "nested": (["u", "v"], ["u^2+u+1", "v^3-u"]),
}


def tower(name, main="x"):
    names, exts = TOWERS[name]
    return make_ring(0, names + ([main] if main else []), exts)


def rand_rat(rng, height, den=1):
    n = rng.randint(-height, height)
    return mpq(n, rng.randint(1, den)) if den > 1 else mpq(n)


def rand_field_data(rng, ring, height, den=1, density=1.0):
    """Random reduced field element of ``ring`` (its extension levels)."""

    def build(lev):
        if lev == 0:
            return rand_rat(rng, height, den) if rng.random() < density else mpq(0)
        out = [build(lev - 1) for _ in range(ring.degrees[lev - 1])]
        n = len(out)
        while n and not out[n - 1]:
            n -= 1
        return tuple(out[:n])

    return build(ring.n)


def rand_scalar(rng, ring, height=10, den=1, nonzero=True):
    base = ring.base
    while True:
        data = rand_field_data(rng, base, height, den)
        if data or not nonzero:
            return RPoly(base, data)


def rand_poly(rng, ring, deg, height=10, den=1, lc=None):
    """Random polynomial of exact degree ``deg`` in the main variable.

    ``lc`` may be 'rational' to force a rational leading coefficient.
    """
    base = ring.base
    coeffs = [rand_field_data(rng, base, height, den) for _ in range(deg)]
    if lc == "rational":
        c = 0
        while not c:
            c = rand_rat(rng, height, den)
        top = base.const(c).data
    else:
        top = ()
        while not top:
            top = rand_field_data(rng, base, height, den)
    return RPoly(ring, tuple(coeffs) + (top,))


def rng_for(seed):
    return random.Random(seed)


def basis(ring):
    """Power basis of the field part of ``ring`` as RPolys."""
    base = ring.base
    out = [base.one()]
    for name, d in zip(base.variables, base.degrees):
        z = base.gen(name)
        out = [b * z**e for e in range(d) for b in out]
    return out


def coords(a, B):
    """Coordinates of a field element in the basis ``B`` (sympy Rationals)."""
    import sympy

    # the basis is monomial, so coordinates are the leaves in box order
    def walk(data, lev, acc):
        if lev == 0:
            acc.append(data)
            return
        d = a.ring.degrees[lev - 1]
        width = 1
        for e in a.ring.degrees[: lev - 1]:
            width *= e
        for i in range(d):
            if i < len(data) and data[i]:
                walk(data[i], lev - 1, acc)
            else:
                acc.extend([0] * width)

    acc = []
    walk(a.data, a.ring.n, acc)
    return [sympy.Rational(int(c.numerator), int(c.denominator)) if c else sympy.Integer(0) for c in acc]


def matrix_norm(a):
    """Determinant of multiplication by ``a`` on the power basis."""
    import sympy

    B = basis(a.ring)
    cols = [coords(a * b, B) for b in B]
    return sympy.Matrix(cols).T.det()
