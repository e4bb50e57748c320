"""Exact expansion of cyclic-group determinants and their powers.

The determinant of the circulant variable matrix for the cyclic group
{1, ..., n} (n labels the identity element) is expanded two independent
ways: the signed permutation sum, and the product of the n character
linear forms, whose k-fold repetition gives the k-th power. Monomials
live in sparse exponent-vector maps with exact integer coefficients.
"""
from __future__ import annotations

from itertools import permutations
from math import gcd
from typing import NamedTuple

from .cyclotomic import CyclotomicInt
from .msp import BudgetExceeded, EvalInstance, msp_value_dp
from .partitions import binomial, format_partition, is_prime, lambda_tilde_size

DEFAULT_MONOMIAL_BUDGET = 10_000_000
LEIBNIZ_LIMIT = 8


def exponent_key(parts, n: int) -> tuple:
    """Exponent vector of the monomial x_(p1) x_(p2) ... for parts in 1..n."""
    key = [0] * n
    for p in parts:
        if not 1 <= p <= n:
            raise ValueError(f"part {p} outside 1..{n}")
        key[p - 1] += 1
    return tuple(key)


def key_partition(key) -> tuple:
    """Sorted partition whose multiplicities are the given exponent vector."""
    out = []
    for i, e in enumerate(key):
        out.extend([i + 1] * e)
    return tuple(out)


class MonomialMap:
    """Sparse homogeneous integer polynomial keyed by exponent vectors.

    key[i] is the exponent of variable x_(i+1); every stored key shares
    the same total degree and no zero coefficient is ever stored.
    Instances should be treated as immutable.
    """

    __slots__ = ("n_vars", "degree", "_terms")

    def __init__(self, n_vars, degree, terms):
        self.n_vars = n_vars
        self.degree = degree
        clean = {}
        for key, coeff in terms.items():
            if coeff == 0:
                continue
            key = tuple(key)
            if len(key) != n_vars or sum(key) != degree:
                raise ValueError(f"exponent vector {key} does not fit degree {degree} in {n_vars} variables")
            clean[key] = coeff
        self._terms = clean

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self._terms)

    def items(self):
        return self._terms.items()

    def coefficient(self, key) -> int:
        return self._terms.get(tuple(key), 0)

    def __eq__(self, other):
        if not isinstance(other, MonomialMap):
            return NotImplemented
        return (self.n_vars, self.degree, self._terms) == (other.n_vars, other.degree, other._terms)

    __hash__ = None

    def __mul__(self, other):
        if not isinstance(other, MonomialMap):
            return NotImplemented
        if self.n_vars != other.n_vars:
            raise ValueError("variable counts differ")
        out = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                key = tuple(a + b for a, b in zip(k1, k2))
                out[key] = out.get(key, 0) + c1 * c2
        return MonomialMap(self.n_vars, self.degree + other.degree, out)

    def relabel(self, l: int) -> "MonomialMap":
        """Apply the variable relabeling x_v -> x_(l*v mod n), representatives in 1..n."""
        n = self.n_vars
        if gcd(l, n) != 1:
            raise ValueError(f"relabeling factor {l} must be coprime to {n}")
        out = {}
        for key, c in self._terms.items():
            new = [0] * n
            for i, e in enumerate(key):
                if e:
                    new[(l * (i + 1) - 1) % n] = e
            out[tuple(new)] = c
        return MonomialMap(n, self.degree, out)

    def to_records(self):
        """(partition text, coefficient) pairs sorted by partition for stable export."""
        recs = sorted((key_partition(key), c) for key, c in self._terms.items())
        return [(format_partition(p), c) for p, c in recs]

    def __repr__(self):
        return f"MonomialMap(n_vars={self.n_vars}, degree={self.degree}, terms={len(self._terms)})"


def _parity_sign(perm) -> int:
    sign = 1
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                sign = -sign
    return sign


def leibniz_determinant(n: int) -> MonomialMap:
    """Signed permutation-sum expansion of the circulant determinant.

    Matrix entry (i, s) is the variable indexed by the representative of
    i - s mod n in 1..n; like terms are combined and zeros dropped.
    Factorial cost, guarded.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    if n > LEIBNIZ_LIMIT:
        raise BudgetExceeded(f"permutation-sum expansion is limited to n <= {LEIBNIZ_LIMIT}")
    terms = {}
    for perm in permutations(range(1, n + 1)):
        key = [0] * n
        for i, s in enumerate(perm, start=1):
            key[(i - s - 1) % n] += 1
        key = tuple(key)
        terms[key] = terms.get(key, 0) + _parity_sign(perm)
    return MonomialMap(n, n, terms)


_expansions: dict = {}


def dedekind_expand(n: int, k: int, budget: int | None = None) -> MonomialMap:
    """Multiply out the k-fold product of the n character linear forms.

    Form i is sum_j zeta_n^(i*j) x_j; the product runs over i = 1..n,
    repeated k times, one linear form per pass. Intermediate coefficients
    stay in the cheap working representation (length-n vectors, shifted
    and added); each final coefficient is read out to an integer exactly
    once, which raises IntegralityViolation if anything non-integral
    survives. Completed expansions are cached per (n, k).
    """
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    cached = _expansions.get((n, k))
    if cached is not None:
        return cached
    if budget is None:
        budget = DEFAULT_MONOMIAL_BUDGET
    bound = binomial(k * n + n - 1, n - 1)
    if bound > budget:
        raise BudgetExceeded(f"expansion may reach {bound} monomials, over the budget of {budget}")
    acc = {(0,) * n: [1] + [0] * (n - 1)}
    for _ in range(k):
        for i in range(1, n + 1):
            shifts = [(i * j) % n for j in range(1, n + 1)]
            nxt = {}
            for key, vec in acc.items():
                for j in range(n):
                    child = key[:j] + (key[j] + 1,) + key[j + 1:]
                    dst = nxt.get(child)
                    if dst is None:
                        nxt[child] = dst = [0] * n
                    t = shifts[j]
                    if t:
                        for e, a in enumerate(vec):
                            if a:
                                dst[(e + t) % n] += a
                    else:
                        for e, a in enumerate(vec):
                            if a:
                                dst[e] += a
            acc = nxt
    terms = {}
    for key, vec in acc.items():
        val = CyclotomicInt(n, vec).to_integer()
        if val:
            terms[key] = val
    result = MonomialMap(n, k * n, terms)
    _expansions[(n, k)] = result
    return result


def coefficient(n: int, k: int, parts) -> int:
    """Coefficient of the monomial indexed by `parts` in the k-fold expansion.

    Serves from a cached expansion when one exists, otherwise evaluates
    the matching orbit-sum value directly; the two routes agree (that is
    one of the machine-checked identities).
    """
    parts = tuple(sorted(parts))
    if len(parts) != k * n or not all(1 <= p <= n for p in parts):
        raise ValueError(f"partition must have {k * n} parts in 1..{n}")
    cached = _expansions.get((n, k))
    if cached is not None:
        return cached.coefficient(exponent_key(parts, n))
    return msp_value_dp(EvalInstance(parts, n, k))


class TermCount(NamedTuple):
    nu: int
    lambda_tilde: int
    equal: bool


def count_terms(n: int, k: int, budget: int | None = None) -> TermCount:
    """Surviving-term count of the k-fold expansion against the index-set size."""
    nu = len(dedekind_expand(n, k, budget))
    upper = lambda_tilde_size(n, k)
    if nu > upper:
        raise AssertionError(f"term count {nu} exceeds the index-set size {upper}; arithmetic is broken")
    return TermCount(nu, upper, nu == upper)


def prime_term_count(p: int) -> int:
    """Term count at an odd or even prime: (p - 1 + binom(2p-1, p-1)) / p, exactly."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    total = p - 1 + binomial(2 * p - 1, p - 1)
    q, r = divmod(total, p)
    if r:
        raise AssertionError(f"prime term-count formula did not divide exactly at p={p}")
    return q
