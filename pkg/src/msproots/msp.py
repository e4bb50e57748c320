"""Evaluation of monomial symmetric polynomials at the root-of-unity point.

For parameters (n, k) the evaluation point is the kn-tuple whose j-th
entry is zeta_n^(j-1), i.e. k copies of every n-th root of unity. The
value of the orbit sum m_lambda there is always a plain integer, and
three independent routes compute it: a direct walk over the distinct
rearrangements of lambda (the reference oracle), a dynamic program over
residual part multiplicities, and closed forms for special part shapes.

Parts may be arbitrary integers; the value depends only on the multiset
of parts. Note that replacing parts by their residues mod n preserves
the value only when no two distinct parts are congruent (merging values
changes the orbit size), so the closed forms canonicalize internally
but the evaluators never do.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd, prod

from .cyclotomic import CyclotomicInt, IntegralityViolation  # noqa: F401  (re-export)
from .partitions import binomial, canonical_residues, is_prime

DEFAULT_STATE_BUDGET = 10_000_000
NAIVE_LENGTH_LIMIT = 9


class BudgetExceeded(RuntimeError):
    """A computation would exceed its configured size guard."""


@dataclass(frozen=True)
class EvalInstance:
    """A partition together with its evaluation parameters (n, k).

    The part tuple must have exactly k*n entries; it is stored sorted.
    The standard index family uses parts in 0..n, but any integers are
    accepted.
    """
    parts: tuple
    n: int
    k: int

    def __post_init__(self):
        if self.n < 1 or self.k < 1:
            raise ValueError("n and k must be positive")
        parts = tuple(sorted(self.parts))
        if len(parts) != self.k * self.n:
            raise ValueError(f"expected {self.k * self.n} parts for (n={self.n}, k={self.k}), got {len(parts)}")
        object.__setattr__(self, "parts", parts)


def msp_value_naive(inst: EvalInstance, limit: int = NAIVE_LENGTH_LIMIT) -> int:
    """Reference evaluator: sum over all distinct rearrangements of the parts.

    Walks the tree of multiset permutations directly (each distinct
    rearrangement is visited exactly once, so no stabilizer division is
    ever needed) and accumulates one zeta exponent per leaf. Exponential
    cost; guarded to short lengths.
    """
    n = inst.n
    length = len(inst.parts)
    if length > limit:
        raise BudgetExceeded(f"naive evaluation is limited to {limit} parts, got {length}")
    counts = [0] * n
    values = sorted(set(inst.parts))
    remaining = [inst.parts.count(v) for v in values]

    def walk(pos, exp):
        if pos == length:
            counts[exp] += 1
            return
        for idx, v in enumerate(values):
            if remaining[idx]:
                remaining[idx] -= 1
                walk(pos + 1, (exp + v * pos) % n)
                remaining[idx] += 1

    walk(0, 0)
    return CyclotomicInt(n, counts).to_integer()


def msp_value_dp(inst: EvalInstance, budget: int | None = None) -> int:
    """Dynamic program over residual part multiplicities.

    Positions 1..kn are filled in order; a state records how many copies
    of each distinct part are still unplaced, and carries the summed
    zeta-power weight of every way of reaching it. Assigning part v to
    position j multiplies a path weight by zeta^(v*(j-1)). Each distinct
    rearrangement is counted exactly once because equal parts are only
    interchangeable through their shared counter. The state count is
    the product of (multiplicity + 1) over distinct parts and must fit
    the budget (override via the `budget` argument).
    """
    if budget is None:
        budget = DEFAULT_STATE_BUDGET
    values = tuple(sorted(set(inst.parts)))
    mults = tuple(inst.parts.count(v) for v in values)
    states = prod(m + 1 for m in mults)
    if states > budget:
        raise BudgetExceeded(f"{states} DP states exceed the budget of {budget}; pass a larger budget to override")
    return _dp_value(values, mults, inst.n)


@lru_cache(maxsize=None)
def _dp_value(values, mults, n):
    length = sum(mults)
    start = [0] * n
    start[0] = 1
    frontier = {mults: start}
    for pos in range(length):
        shifts = [(v * pos) % n for v in values]
        nxt = {}
        for state, vec in frontier.items():
            for idx, c in enumerate(state):
                if c:
                    child = state[:idx] + (c - 1,) + state[idx + 1:]
                    dst = nxt.get(child)
                    if dst is None:
                        nxt[child] = dst = [0] * n
                    t = shifts[idx]
                    if t:
                        for e, a in enumerate(vec):
                            if a:
                                dst[(e + t) % n] += a
                    else:
                        for e, a in enumerate(vec):
                            if a:
                                dst[e] += a
        frontier = nxt
    (vec,) = frontier.values()
    return CyclotomicInt(n, vec).to_integer()


def closed_form_two_blocks(lambda1: int, a: int, n: int, k: int) -> int:
    """Value for the partition made of `a` copies of lambda1 and kn - a copies of n.

    With d = gcd(lambda1, n): zero unless (n/d) | a (equivalently, unless
    the part sum is divisible by n); otherwise
    (-1)^(a + a*d/n) * binom(k*d, a*d/n), which is nonzero.
    """
    if n < 1 or k < 1:
        raise ValueError("n and k must be positive")
    if not 0 <= a <= k * n:
        raise ValueError(f"block size a={a} must lie in 0..{k * n}")
    if lambda1 % n == 0:
        raise ValueError(f"lambda1={lambda1} must not be divisible by n={n}")
    d = gcd(lambda1, n)
    step = n // d
    if a % step:
        return 0
    t = a // step
    return (-1) ** ((a + t) % 2) * binomial(k * d, t)


def reduce_two_distinct(lambda1: int, lambda2: int, a: int, n: int, k: int):
    """Sign and reduced instance for `a` copies of lambda1 plus kn - a copies of lambda2.

    The reduced partition has kn - a copies of lambda2 - lambda1 and a
    copies of n, taken to canonical residues. The contract
    value(original) == sign * value(reduced) is checked by the verify
    suites, not assumed here.
    """
    if (lambda2 - lambda1) % n == 0:
        raise ValueError(f"lambda2 - lambda1 = {lambda2 - lambda1} must not be divisible by n={n}")
    if not 0 <= a <= k * n:
        raise ValueError(f"block size a={a} must lie in 0..{k * n}")
    sign = -1 if (k * (n + 1) * lambda1) % 2 else 1
    reduced = canonical_residues((lambda2 - lambda1,) * (k * n - a) + (n,) * a, n)
    return sign, EvalInstance(reduced, n, k)


def mansfield_coefficient(inst: EvalInstance) -> int | None:
    """Closed form for partitions that are all n's except two or three parts.

    Matches the canonical residue form against four shapes; each base
    value scales with k (the k = 1 base values are -n/2, -n, n/3, n and
    2n per shape, and the congruence conditions make every division
    exact and every matched value nonzero). Returns None when no shape
    applies.
    """
    n, k = inst.n, inst.k
    canon = canonical_residues(inst.parts, n)
    low = [p for p in canon if p != n]
    if len(low) == 2:
        u, v = low
        if (u + v) % n:
            return None
        if u == v:
            return -(k * n) // 2  # n | 2u with n not dividing u forces n even
        return -(k * n)
    if len(low) == 3:
        u, v, w = low
        if u == v == w:
            if (3 * u) % n:
                return None
            return (k * n) // 3  # 3 | n is forced
        if u == v or v == w:
            rep, single = (u, w) if u == v else (w, u)
            if (2 * rep + single) % n:
                return None
            return k * n
        if (u + v + w) % n:
            return None
        return 2 * k * n
    return None


def prime_nonvanishing(parts, p: int) -> bool:
    """Whether the length-p partition has part sum divisible by the prime p.

    For k = 1 at a prime this is exactly the nonvanishing criterion; the
    equivalence with a nonzero evaluator value is machine-checked in the
    verify module.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    parts = tuple(parts)
    if len(parts) != p:
        raise ValueError(f"expected {p} parts, got {len(parts)}")
    return sum(parts) % p == 0


def scale_partition(parts, l: int, n: int) -> tuple:
    """Multiply every part by l (coprime to n) and canonicalize to residues 1..n."""
    if gcd(l, n) != 1:
        raise ValueError(f"scaling factor {l} must be coprime to n={n}")
    return canonical_residues([l * p for p in parts], n)


def elementary_symmetric(r: int, points, one=1):
    """e_r of the given points, over any commutative ring.

    Sequential update: after consuming x the table entry e_j becomes
    e_j + e_(j-1) * x. Points and `one` only need + and *; plain ints,
    cyclotomic integers, and sparse polynomials all work. e_0 is one and
    e_r vanishes beyond the number of points.
    """
    if r < 0:
        raise ValueError("degree must be nonnegative")
    zero = one * 0
    table = [one] + [zero] * r
    top = 0
    for x in points:
        if top < r:
            top += 1
        for j in range(top, 0, -1):
            table[j] = table[j] + table[j - 1] * x
    return table[r]


def e_product(parts, points, one=1):
    """Product of elementary_symmetric(part, points) over all parts (e_0 = one)."""
    out = one
    for p in parts:
        out = out * elementary_symmetric(p, points, one=one)
    return out


def power_sum(r: int, points, one=1):
    """Sum of x^r over the points; equals the single-row orbit sum."""
    if r < 0:
        raise ValueError("degree must be nonnegative")
    total = one * 0
    for x in points:
        total = total + x ** r
    return total


def closed_form_value(inst: EvalInstance):
    """Try the closed forms in turn; returns (value, form_name) or None.

    The shape matchers overlap on some partitions (e.g. a doubled part
    with the rest n's); their values agree there, so the order is
    immaterial.
    """
    v = mansfield_coefficient(inst)
    if v is not None:
        return v, "pattern"
    canon = canonical_residues(inst.parts, inst.n)
    low = sorted({p for p in canon if p != inst.n})
    if not low:
        return 1, "two-block"  # every point value raised to the n-th power is 1
    if len(low) == 1:
        a = sum(1 for p in canon if p != inst.n)
        return closed_form_two_blocks(low[0], a, inst.n, inst.k), "two-block"
    return None
