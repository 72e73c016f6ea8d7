"""Print the class of every small prime for a few textbook gcd problems."""

import argparse

import gmpy2

from towergcd import classify_prime, make_ring, parse_poly

PROBLEMS = [
    # name, variables, extensions, f1, f2
    ("z = 2^(1/5)", ["z", "x"], ["z^5-2"], "x^2-1", "(z+5)*x-z-5"),
    ("s = sqrt 5, unlucky 2", ["s", "x"], ["s^2-5"], "x^2+(2*s+1)*x+3", "x^2-x-1"),
    ("s = sqrt 5, fail 2", ["s", "x"], ["s^2-5"], "x^2+s*x+1", "x^2-x-1"),
]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--below", type=int, default=100)
    ap.add_argument("--all", action="store_true", help="also list good primes")
    args = ap.parse_args()

    primes = [p for p in range(2, args.below) if gmpy2.is_prime(p)]
    for name, names, exts, a, b in PROBLEMS:
        R = make_ring(0, names, exts)
        f1, f2 = parse_poly(a, R), parse_poly(b, R)
        print(f"# {name}: gcd({a}, {b})")
        counts = {}
        for p in primes:
            kind, image = classify_prime(f1, f2, p)
            counts[kind] = counts.get(kind, 0) + 1
            if kind != "good" or args.all:
                print(f"  {p:>4} {kind:<8} {image if image is not None else ''}")
        print("  " + ", ".join(f"{k} {v}" for k, v in sorted(counts.items())))


if __name__ == "__main__":
    main()
