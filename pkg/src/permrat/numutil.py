"""Exact number-theoretic helpers (Moebius, totient, valuations, primes).

Thin wrappers around sympy plus a few small utilities that sympy does not
provide directly.  Everything returns plain Python ints.
"""

from fractions import Fraction
from math import gcd

from sympy import factorint, isprime, nextprime
from sympy.functions.combinatorial.numbers import mobius as _mobius
from sympy.functions.combinatorial.numbers import totient as _totient


def mobius(n: int) -> int:
    return int(_mobius(n))


def totient(n: int) -> int:
    return int(_totient(n))


def prime_factors(n: int) -> list[int]:
    return sorted(int(p) for p in factorint(n))


def factor(n: int) -> dict[int, int]:
    return {int(p): int(e) for p, e in factorint(n).items()}


def ord_p(p: int, x) -> int:
    """p-adic valuation of a nonzero int or Fraction."""
    if isinstance(x, Fraction):
        return ord_p(p, x.numerator) - ord_p(p, x.denominator)
    x = abs(int(x))
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def p_part(p: int, n: int) -> int:
    """Largest power of p dividing n."""
    return p ** ord_p(p, n)


def coprime_residues(n: int) -> list[int]:
    return [t for t in range(1, n + 1) if gcd(t, n) == 1]


def multiplicative_order(a: int, n: int) -> int:
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    a %= n
    k, x = 1, a
    while x != 1 % n:
        x = x * a % n
        k += 1
    return k


def dixon_prime(order: int, exponent: int) -> int:
    """Smallest prime l with l = 1 mod exponent and l > 2*order."""
    l = exponent + 1
    while l <= 2 * order or not isprime(l):
        l += exponent
    return int(l)


def ramanujan_sum(n: int, a: int) -> int:
    """Sum of e(a*t/n) over t coprime to n; the trace of zeta_n^a over Q.

    Classical closed form: mu(n/g) * phi(n) / phi(n/g) with g = gcd(a, n).
    """
    g = gcd(a % n, n) if n > 1 else 1
    m = n // g
    return mobius(m) * totient(n) // totient(m)


def next_prime(n: int) -> int:
    return int(nextprime(n))


def is_prime(n: int) -> bool:
    return bool(isprime(n))


def is_prime_power(q: int) -> tuple[int, int] | None:
    """Return (p, k) with q = p**k, or None."""
    if q < 2:
        return None
    f = factor(q)
    if len(f) != 1:
        return None
    [(p, k)] = f.items()
    return p, k


def sqrt_mod_prime(a: int, l: int) -> int | None:
    from sympy.ntheory import sqrt_mod

    r = sqrt_mod(a % l, l)
    return None if r is None else int(r)


def invariant_factors_from_orders(orders: list[int]) -> list[int]:
    """Invariant-factor chain of a direct sum of cyclic groups Z/o.

    Splits each order into prime powers, stacks the powers per prime in
    decreasing order, and recombines positionwise.
    """
    by_prime: dict[int, list[int]] = {}
    for o in orders:
        if o <= 1:
            continue
        for p, e in factor(o).items():
            by_prime.setdefault(p, []).append(p**e)
    for p in by_prime:
        by_prime[p].sort(reverse=True)
    depth = max((len(v) for v in by_prime.values()), default=0)
    facs = []
    for i in range(depth):
        d = 1
        for p in sorted(by_prime):
            if i < len(by_prime[p]):
                d *= by_prime[p][i]
        facs.append(d)
    facs.reverse()  # ascending divisibility chain d1 | d2 | ...
    return facs
