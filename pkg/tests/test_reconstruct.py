import random
from dataclasses import replace

import gmpy2
import pytest
from gmpy2 import mpq
from hypothesis import given, settings
from hypothesis import strategies as st

from towergcd import CrtAccumulator, ModRing, crt_add_image, make_ring, parse_poly, ratrecon, reconstruct_poly, reduce_mod_p
from towergcd.primes import PrimeStream
from towergcd.reconstruct import default_mqrr_threshold, fibonacci_counts

P = parse_poly
Q = make_ring(0, ["x"], [])


def image(f, p):
    return reduce_mod_p(f, ModRing.of(f.ring, p))


def test_ratrecon_examples():
    assert ratrecon(17, 35) == mpq(-1, 2)
    assert ratrecon(34, 35) == -1
    assert ratrecon(4, 19) is None
    assert ratrecon(0, 35) == 0
    with pytest.raises(ValueError):
        ratrecon(1, 35, mode="nope")


def test_ratrecon_exhaustive_small():
    # Wang answers agree with brute force over the bound box
    for m in (35, 101, 210, 1009):
        N = int(gmpy2.isqrt(m // 2))
        for u in range(m):
            hits = {
                mpq(n, d)
                for d in range(1, N + 1)
                for n in range(-N, N + 1)
                if (d * u - n) % m == 0 and gmpy2.gcd(n, d) == 1 and gmpy2.gcd(d, m) == 1
            }
            got = ratrecon(u, m)
            if got is None:
                assert not hits
            else:
                assert hits == {got}


def test_crt_scalar():
    acc = crt_add_image(CrtAccumulator(Q), image(Q.const(2), 5), 5)
    acc = crt_add_image(acc, image(Q.const(3), 7), 7)
    assert acc.m == 35 and acc.k == 2 and list(acc.c) == [17]


def test_crt_polynomial_symmetric():
    acc = crt_add_image(CrtAccumulator(Q), image(P("x+3", Q), 5), 5)
    assert (acc.c, acc.m, acc.k) == ((-2, 1), 5, 1)
    acc = crt_add_image(acc, image(P("x+5", Q), 7), 7)
    assert list(acc.c) == [-2, 1] and acc.m == 35
    with pytest.raises(ValueError):
        crt_add_image(acc, image(P("x+5", Q), 7), 7)
    with pytest.raises(ValueError):
        crt_add_image(acc, image(P("x^2", Q), 11), 11)


def test_reconstruct_cubic_field_gcd():
    T = make_ring(0, ["a", "x"], ["a^3+3*a^2-46*a+1"])
    g = P("x - (1/91)*a^2 - (23/91)*a - 50/91", T)
    p = PrimeStream(31, 0).next()
    acc = crt_add_image(CrtAccumulator(T), image(g, p), p)
    h, _ = reconstruct_poly(acc)
    assert h == g
    small = crt_add_image(CrtAccumulator(T), image(g, 101), 101)
    h, small = reconstruct_poly(small)
    assert h is None and small.failed_at is not None


def test_integer_polynomial():
    K = make_ring(0, ["a", "b", "x"], ["a^2-2", "b^2-3"])
    f = P("x + a*b - 17", K)
    # Wang needs |c| <= sqrt(m/2), so m > 2*H^2 rather than 2*H
    for p in (587, 601, 1009):
        acc = crt_add_image(CrtAccumulator(K), image(f, p), p)
        assert reconstruct_poly(acc)[0] == f
    acc = crt_add_image(CrtAccumulator(K), image(f, 37), 37)
    assert reconstruct_poly(acc)[0] != f
    assert list(acc.c)[:2] == [-17, 0]


def test_fibonacci():
    it = fibonacci_counts()
    assert [next(it) for _ in range(9)] == [1, 2, 3, 5, 8, 13, 21, 34, 55]


@given(st.integers(1, 10**6), st.integers(1, 10**6), st.integers(0, 2**32))
@settings(max_examples=300, deadline=None)
def test_wang_round_trip(n, d, seed):
    rng = random.Random(seed)
    s = PrimeStream(31, seed)
    m = s.next() * s.next()
    n = n if rng.random() < 0.5 else -n
    if gmpy2.gcd(n, d) != 1:
        return
    r = mpq(n, d)
    u = n * pow(d, -1, m) % m
    assert ratrecon(u, m) == r
    assert ratrecon(u, m, "mqrr", T=8) == r


@given(st.integers(0, 2**32))
@settings(max_examples=30, deadline=None)
def test_crt_recovers_integer_polynomial(seed):
    rng = random.Random(seed)
    K = make_ring(0, ["a", "x"], ["a^3-a-1"])
    coeffs = [[rng.randint(-10**40, 10**40) for _ in range(3)] for _ in range(4)]
    text = " + ".join(f"({c0} + {c1}*a + {c2}*a^2)*x^{i}" for i, (c0, c1, c2) in enumerate(coeffs))
    f = P(text, K)
    acc = CrtAccumulator(K)
    for p in PrimeStream(31, seed):
        acc = crt_add_image(acc, image(f, p), p)
        if acc.m > 2 * 10**40:
            break
    flat = acc.flatten(f)
    assert list(acc.c) == [int(v) for v in flat]


@given(st.integers(0, 2**32), st.sampled_from(["wang", "mqrr"]))
@settings(max_examples=40, deadline=None)
def test_resume_matches_fresh_scan(seed, mode):
    rng = random.Random(seed)
    K = make_ring(0, ["a", "x"], ["a^2-5"])
    terms = [f"({rng.randint(-9**9, 9**9)}/{rng.randint(1, 9**9)})*a*x^{i}" for i in range(4)]
    f = P(" + ".join(terms) + " + x^4", K)
    acc = CrtAccumulator(K)
    for _, p in zip(range(40), PrimeStream(20, seed)):
        acc = crt_add_image(acc, image(f, p), p)
        h, resumed = reconstruct_poly(acc, mode)
        fresh, _ = reconstruct_poly(replace(acc, failed_at=None, _known=()), mode)
        assert (h is None) == (fresh is None)
        assert h == fresh
        acc = resumed
        if h == f:
            break
    else:
        pytest.fail("never reconstructed")


def test_mqrr_rejects_random_residues():
    rng = random.Random(2024)
    s = PrimeStream(31, 9)
    m = s.next() * s.next()
    T = default_mqrr_threshold(m)
    accepted = sum(ratrecon(rng.randrange(m), m, "mqrr", T) is not None for _ in range(2000))
    assert accepted / 2000 <= 0.01
