"""Bounded partitions, their partial orders, and exact counting utilities.

Partitions are plain tuples of integers sorted nondecreasing. Parts of
the standard index family lie in 1..n; the zero-padded family allows 0.
A part equal to n is deliberately kept distinct from a part equal to 0:
the two index different monomial shapes even though evaluation treats
them alike.
"""
from __future__ import annotations

from collections import Counter
from itertools import combinations_with_replacement
from math import comb, gcd  # noqa: F401  (gcd re-exported as part of the module surface)


def binomial(a: int, b: int) -> int:
    """Binomial coefficient, zero outside 0 <= b <= a."""
    return comb(a, b) if 0 <= b <= a else 0


def divisors(n: int) -> list:
    """Positive divisors of n in increasing order."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def euler_phi(n: int) -> int:
    """Euler's totient, by trial-division factorization."""
    if n < 1:
        raise ValueError("n must be a positive integer")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


def is_prime(n: int) -> bool:
    """Primality by trial division; intended for desk-scale inputs."""
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def is_prime_power(n: int) -> bool:
    """True when n = p^m for a prime p and m >= 1."""
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            m = n
            while m % p == 0:
                m //= p
            return m == 1
        p += 1
    return True  # n itself is prime


def enumerate_partitions(n: int, length: int, allow_zero: bool = False):
    """All nondecreasing length-`length` tuples with parts in 1..n (0..n if allow_zero).

    Yields each multiset exactly once, in lexicographic order, which keeps
    downstream golden files byte-stable.
    """
    if n < 1 or length < 1:
        raise ValueError("bound and length must be positive")
    lo = 0 if allow_zero else 1
    return combinations_with_replacement(range(lo, n + 1), length)


def canonical_residues(parts, n: int) -> tuple:
    """Map every part to its representative in 1..n, then sort."""
    return tuple(sorted((p - 1) % n + 1 for p in parts))


def multiplicities(parts) -> Counter:
    """Counter of how many times each part value occurs."""
    return Counter(parts)


def triangle_order(lam, mu) -> bool:
    """Multiset containment: every value occurs in `mu` at least as often as in `lam`."""
    need = Counter(lam)
    have = Counter(mu)
    return all(have[v] >= c for v, c in need.items())


def remove_parts(mu, lam) -> tuple:
    """Multiset difference mu minus lam, sorted; the pair must be comparable."""
    if not triangle_order(lam, mu):
        raise ValueError(f"{tuple(lam)} is not contained in {tuple(mu)} part-for-part")
    left = Counter(mu)
    left.subtract(lam)
    out = []
    for v in sorted(left):
        out.extend([v] * left[v])
    return tuple(out)


def inclusion_order(lam, mu) -> bool:
    """Componentwise comparison, left-padding the shorter tuple with zeros."""
    a, b = tuple(lam), tuple(mu)
    if len(a) < len(b):
        a = (0,) * (len(b) - len(a)) + a
    elif len(b) < len(a):
        b = (0,) * (len(a) - len(b)) + b
    return all(x <= y for x, y in zip(a, b))


def invariant_dimension(n: int, m: int) -> int:
    """Degree-m monomial orbit count for the order-n cyclic relabeling action.

    (1/(n+m)) * sum over d | gcd(n, m) of binom((n+m)/d, n/d) * phi(d);
    the division is exact and asserted.
    """
    if n < 1 or m < 0:
        raise ValueError("need n >= 1 and m >= 0")
    total = sum(binomial((n + m) // d, n // d) * euler_phi(d) for d in divisors(gcd(n, m) or n))
    q, r = divmod(total, n + m)
    if r:
        raise AssertionError(f"orbit-count formula did not divide exactly at (n={n}, m={m})")
    return q


def lambda_tilde_size(n: int, k: int) -> int:
    """Number of length-(k n) partitions with parts in 1..n and part sum divisible by n.

    Evaluates (1/n) * sum over d | n of binom(dk + d - 1, d - 1) * phi(n/d)
    and cross-checks it against the orbit-count formula before returning.
    """
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    total = sum(binomial(d * k + d - 1, d - 1) * euler_phi(n // d) for d in divisors(n))
    q, r = divmod(total, n)
    if r:
        raise AssertionError(f"index-set count did not divide exactly at (n={n}, k={k})")
    cross = invariant_dimension(n, k * n)
    if q != cross:
        raise AssertionError(f"count formulas disagree at (n={n}, k={k}): {q} vs {cross}")
    return q


def parse_partition(text: str) -> tuple:
    """Parse comma-separated parts, in any order, into a sorted tuple."""
    items = [s.strip() for s in text.split(",")]
    if not items or any(not s for s in items):
        raise ValueError(f"bad partition text: {text!r}")
    try:
        return tuple(sorted(int(s) for s in items))
    except ValueError:
        raise ValueError(f"bad partition text: {text!r}") from None


def format_partition(parts) -> str:
    """Canonical text form: sorted parts joined by commas."""
    return ",".join(str(p) for p in sorted(parts))
