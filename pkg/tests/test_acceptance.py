"""Acceptance suite: one test per criterion, each timed against its budget."""

import time

from gmpy2 import mpq

from towergcd import (
    CrtAccumulator,
    Gcd,
    GcdOptions,
    ModRing,
    PrimeStream,
    RPoly,
    ZeroDivisorChar0,
    ZeroDivisorFound,
    classify_prime,
    crt_add_image,
    is_lc_bad,
    make_ring,
    modular_gcd,
    monic,
    monic_ea_char0,
    monic_ea_mod_p,
    parse_poly,
    pff_gcd,
    prim_pseudo_divrem,
    ratrecon,
    reconstruct_poly,
    reduce_mod_p,
    semi_associate,
    trial_divide,
)
from towergcd.cli import bench_problem

from _towers import TOWERS, rand_poly, rng_for, tower

P = parse_poly

# reference good-prime counts per k at n = 10
REFERENCE_GOOD = [1, 2, 3, 4, 5, 6, 7, 8, 10, 11, 12]

# fields with n <= 3 and every d_i <= 4
SMALL_TOWERS = sorted(k for k in TOWERS if k != "frac5")


class Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0


def test_criterion_1_worked_examples(criterion):
    with Timer() as t:
        K = make_ring(0, ["a", "b", "x"], ["a^2-2", "b^2-3"])
        two = modular_gcd(
            P("x^2+(a*b-a-1)*x-a*b-2*b", K), P("x^2+(a*b-4*a+1)*x+a*b-8*b", K)
        )
        ok_two = isinstance(two, Gcd) and two.g == P("x+a*b", K)

        C = make_ring(0, ["a", "x"], ["a^3+3*a^2-46*a+1"])
        cub = modular_gcd(
            P("x^3-2*x^2+(-2*a^2+8*a+2)*x-a^2+11*a-1", C), P("x^3-2*x^2-x+1", C)
        )
        ok_cub = isinstance(cub, Gcd) and cub.g == P("x - (1/91)*a^2 - (23/91)*a - 50/91", C)

        W = make_ring(0, ["a", "b", "w", "x"], ["a^2-2", "b^2-3", "w^2-6"])
        zd = modular_gcd(P("x^2+a*b*x+1", W), P("(w-a*b)*x+1", W))
        ok_zd = False
        if isinstance(zd, ZeroDivisorChar0) and zd.level == 3:
            f = zd.factor
            ar = f.ring.arith
            _, rem = ar.divrem(W.monic_extensions[2], f.data, 3)
            ok_zd = f.degree() == 1 and f.data[-1] == ar.one(2) and not rem
    ok = ok_two and ok_cub and ok_zd and t.seconds < 1
    detail = (
        f"x+ab={ok_two} den91={ok_cub} zero-divisor={ok_zd} "
        f"({zd.factor if ok_zd else zd}) in {t.seconds:.3f}s (< 1s)"
    )
    assert criterion(1, ok, detail)


def test_criterion_2_prime_classification(criterion):
    with Timer() as t:
        R = make_ring(0, ["z", "x"], ["z^5-2"])
        f1, f2 = P("x^2-1", R), P("(z+5)*x-(z+5)", R)
        g = P("x-1", R)
        fails = {p for p in range(2, 100) if _is_prime(p) and classify_prime(f1, f2, p, g)[0] == "fail"}

        S = make_ring(0, ["s", "x"], ["s^2-5"])
        h2 = P("x^2-x-1", S)
        kind, image = classify_prime(P("x^2+(2*s+1)*x+3", S), h2, 2)
        unlucky = kind == "unlucky" and image == reduce_mod_p(P("x^2+x+1", S), ModRing.of(S, 2))
        kind2, _ = classify_prime(P("x^2+s*x+1", S), h2, 2)
    ok = fails == {53, 59} and unlucky and kind2 == "fail" and t.seconds < 1
    detail = (
        f"fail primes < 100 = {sorted(fails)}; p=2 {kind} image {image}; "
        f"p=2 {kind2} for x^2+sqrt5*x+1; {t.seconds:.3f}s (< 1s)"
    )
    assert criterion(2, ok, detail)


def _is_prime(p):
    return p > 1 and all(p % q for q in range(2, int(p**0.5) + 1))


def test_criterion_3_benchmark_family(criterion):
    n = 10
    rows = []
    with Timer() as t:
        for k in range(n + 1):
            _, f1, f2, expected = bench_problem(n, k)
            out = modular_gcd(f1, f2, GcdOptions(prime_bits=31))
            g = out.g if isinstance(out, Gcd) else None
            verified = (
                g == expected
                and trial_divide(f1, g) is not None
                and trial_divide(f2, g) is not None
            )
            good = out.stats.good
            rows.append((k, verified, good, good <= REFERENCE_GOOD[k] + 2))
    ok = all(v and c for _, v, _, c in rows) and t.seconds < 300
    counts = ",".join(str(r[2]) for r in rows)
    detail = (
        f"n=10 k=0..10 verified={all(r[1] for r in rows)} good primes [{counts}] "
        f"vs reference+2; {t.seconds:.1f}s (< 300s)"
    )
    assert criterion(3, ok, detail)


def _instance(rng, name):
    R = tower(name)
    g = rand_poly(rng, R, rng.randint(1, 3), 1000, 3)
    f1 = g * rand_poly(rng, R, rng.randint(0, 3), 1000, 3)
    f2 = g * rand_poly(rng, R, rng.randint(0, 3), 1000, 3)
    return R, f1, f2


def test_criterion_4_oracle_equivalence(criterion):
    rng = rng_for(2024)
    agree = samples = 0
    kinds = {"fail": 0, "higher": 0, "equal": 0}
    bad = []
    with Timer() as t:
        for i in range(120):
            name = SMALL_TOWERS[i % len(SMALL_TOWERS)]
            R, f1, f2 = _instance(rng, name)
            out = modular_gcd(f1, f2, GcdOptions(seed=i))
            g = out.g if isinstance(out, Gcd) else None
            if g is not None and g == monic(pff_gcd(f1, f2)) == monic_ea_char0(f1, f2):
                agree += 1
            else:
                bad.append(("oracle", name, i))
                continue
            f1s, f2s = semi_associate(f1)[0], semi_associate(f2)[0]
            # small primes so that fail and unlucky primes actually occur
            stream = PrimeStream(10 + i % 3, seed=i)
            taken = 0
            while taken < 5:
                p = stream.next()
                if is_lc_bad(p, f1s, f2s, R):
                    continue
                taken += 1
                samples += 1
                Rp = ModRing.of(R, p)
                try:
                    d = monic_ea_mod_p(reduce_mod_p(f1s, Rp), reduce_mod_p(f2s, Rp))
                except ZeroDivisorFound:
                    kinds["fail"] += 1
                    continue
                if d.degree() > g.degree():
                    kinds["higher"] += 1
                elif d.degree() == g.degree() and d == reduce_mod_p(g, Rp):
                    kinds["equal"] += 1
                else:
                    bad.append(("degree", name, i, p))
    ok = agree >= 100 and samples >= 500 and not bad and t.seconds < 120
    detail = (
        f"{agree}/120 instances agree across engines; {samples} prime samples "
        f"(fail {kinds['fail']}, higher degree {kinds['higher']}, equal {kinds['equal']}); "
        f"violations {bad[:3]}; {t.seconds:.1f}s (< 120s)"
    )
    assert criterion(4, ok, detail)


def test_criterion_5_reconstruction(criterion):
    rng = rng_for(5)
    with Timer() as t:
        # 10^4 rationals with |n|, d <= 2^60 pushed through CRT over three
        # 62-bit primes (m > 2^185 > 2 * (2^60)^2) and reconstructed
        Q = make_ring(0, ["x"], [])
        H = 1 << 60
        vals = [mpq(rng.randint(-H, H), rng.randint(1, H)) for _ in range(10**4 - 1)]
        vals.append(mpq(rng.randint(1, H), rng.randint(1, H)))  # nonzero top coefficient
        f = RPoly(Q, tuple(vals))
        acc = CrtAccumulator(Q)
        stream = PrimeStream(62, seed=5)
        for p in (stream.next() for _ in range(3)):
            acc = crt_add_image(acc, reduce_mod_p(f, ModRing.of(Q, p)), p)
        h, _ = reconstruct_poly(acc, "wang")
        wang_failures = sum(a != b for a, b in zip(h.data, f.data)) if h is not None else len(vals)

        # random residues at m ~ 2^62 are images of nothing small
        m = 4611686018427387847  # largest prime below 2^62
        false_accepts = sum(1 for _ in range(10**4) if ratrecon(rng.randrange(m), m, "mqrr") is not None)

        r419 = ratrecon(4, 19)
        r1735 = ratrecon(17, 35)
    ok = (
        wang_failures == 0
        and false_accepts == 0
        and r419 is None
        and r1735 == mpq(-1, 2)
        and t.seconds < 30
    )
    detail = (
        f"Wang round-trip failures {wang_failures}/10000; MQRR false accepts {false_accepts}/10000 "
        f"at m~2^62; ratrecon(4,19)={r419}; ratrecon(17,35)={r1735}; {t.seconds:.2f}s (< 30s)"
    )
    assert criterion(5, ok, detail)


def test_criterion_6_fraction_free_division(criterion):
    rng = rng_for(6)
    recovered = identity = 0
    with Timer() as t:
        for i in range(1000):
            R = tower(sorted(TOWERS)[i % len(TOWERS)])
            B = rand_poly(rng, R, rng.randint(0, 3), 100, 5, lc="rational")
            Q = rand_poly(rng, R, rng.randint(0, 3), 100, 5)
            A = B * Q
            if trial_divide(A, B) == Q:
                recovered += 1
            A2 = A + rand_poly(rng, R, rng.randint(0, 3), 100, 5)
            r, mu, q = prim_pseudo_divrem(A2, B)
            if R.const(mu) * A2 == B * q + r and (r.is_zero() or r.degree() < B.degree()):
                identity += 1
    ok = recovered == 1000 and identity == 1000 and t.seconds < 60
    detail = f"quotients recovered {recovered}/1000; mu*A = B*q + r holds {identity}/1000; {t.seconds:.1f}s (< 60s)"
    assert criterion(6, ok, detail)
