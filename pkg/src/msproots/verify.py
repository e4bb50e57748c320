"""Machine checks for the identities the evaluators are built on.

Each suite sweeps a finite instance family, compares independently
computed sides exactly, and returns a structured report. Failures are
data, not exceptions, and every failure names a concrete instance that
reproduces it. Only proven statements are asserted hard; the open
nonvanishing question is explored and its evidence recorded, never
encoded as an oracle.
"""
from __future__ import annotations

import random
import time
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import permutations, product
from math import gcd

from .cyclotomic import CyclotomicInt
from .groupdet import (
    LEIBNIZ_LIMIT,
    count_terms,
    dedekind_expand,
    exponent_key,
    key_partition,
    leibniz_determinant,
    prime_term_count,
)
from .msp import (
    NAIVE_LENGTH_LIMIT,
    BudgetExceeded,
    EvalInstance,
    closed_form_two_blocks,
    e_product,
    mansfield_coefficient,
    msp_value_dp,
    msp_value_naive,
    prime_nonvanishing,
    reduce_two_distinct,
    scale_partition,
)
from .partitions import (
    binomial,
    enumerate_partitions,
    format_partition,
    is_prime,
    is_prime_power,
    lambda_tilde_size,
)

# Sweeps over full partition families are skipped above these sizes so a
# single suite stays desk-scale; pass an explicit budget to push further.
EXHAUSTIVE_CAP = 2500
COEFFICIENT_SWEEP_CAP = 650
PROP21_CAP = 200
LEMMA_PERMUTATION_LIMIT = 7


class TheoremViolation(AssertionError):
    """A machine check contradicted a proven statement."""


@dataclass
class Failure:
    instance: str
    expected: str
    actual: str

    def to_dict(self):
        return {"lambda": self.instance, "expected": self.expected, "actual": self.actual}


@dataclass
class VerificationReport:
    suite: str
    n: int
    k: int
    instances_checked: int
    failures: list
    elapsed_ms: float
    sections: dict = field(default_factory=dict)
    l: int | None = None

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self):
        out = {
            "suite": self.suite,
            "n": self.n,
            "k": self.k,
            "instances_checked": self.instances_checked,
            "failures": [f.to_dict() for f in self.failures],
            "elapsed_ms": round(self.elapsed_ms, 3),
        }
        if self.l is not None:
            out["l"] = self.l
        if self.sections:
            out["sections"] = dict(sorted(self.sections.items()))
        return out


@dataclass
class ConjectureReport:
    n: int
    k: int
    total: int
    zero_coefficients: list
    is_prime_power: bool
    consistent_with_conjecture: bool
    elapsed_ms: float = 0.0

    def to_dict(self):
        return {
            "n": self.n,
            "k": self.k,
            "total": self.total,
            "zero_coefficients": [format_partition(p) for p in self.zero_coefficients],
            "is_prime_power": self.is_prime_power,
            "consistent_with_conjecture": self.consistent_with_conjecture,
            "elapsed_ms": round(self.elapsed_ms, 3),
        }


def _run_sharded(fn, items, jobs):
    """Apply fn over items, preserving order so parallelism never changes output."""
    items = list(items)
    if jobs <= 1 or len(items) < 2:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _value(parts, n, k):
    return msp_value_dp(EvalInstance(tuple(parts), n, k))


def check_lemma_2_4(n: int, parts) -> VerificationReport:
    """Full permutation sum versus n times the reduced sum, per test function.

    The indicator of each residue class is checked (those span every
    period-n function, so passing the basis proves the identity for all
    f), plus the root-power weight itself.
    """
    parts = tuple(parts)
    if len(parts) != n:
        raise ValueError(f"need exactly {n} parts, got {len(parts)}")
    if sum(parts) % n:
        raise ValueError("part sum must be divisible by n")
    if n > LEMMA_PERMUTATION_LIMIT:
        raise BudgetExceeded(f"permutation sweep is limited to n <= {LEMMA_PERMUTATION_LIMIT}")
    t0 = time.perf_counter()
    lhs = [0] * n
    for sigma in permutations(range(1, n + 1)):
        lhs[sum(p * s for p, s in zip(parts, sigma)) % n] += 1
    rhs = [0] * n
    for tau in permutations(range(1, n)):
        rhs[sum(p * s for p, s in zip(parts, tau)) % n] += 1
    text = format_partition(parts)
    failures = []
    for r in range(n):
        if lhs[r] != n * rhs[r]:
            failures.append(Failure(f"lambda={text} f=1[t={r} mod {n}]", str(n * rhs[r]), str(lhs[r])))
    left = CyclotomicInt(n, lhs)
    right = CyclotomicInt(n, rhs) * n
    if left != right:
        failures.append(Failure(f"lambda={text} f=zeta^t", repr(right), repr(left)))
    elapsed = (time.perf_counter() - t0) * 1000
    return VerificationReport("lemma24", n, 1, n + 1, failures, elapsed)


def check_lemma_2_4_sweep(n: int, samples: int = 50, seed: int = 0) -> VerificationReport:
    """Aggregate lemma checks over seeded random integer vectors with sum divisible by n."""
    t0 = time.perf_counter()
    rng = random.Random(f"{seed}:{n}")
    failures = []
    checked = 0
    for _ in range(samples):
        draw = [rng.randrange(-2 * n, 2 * n + 1) for _ in range(n)]
        draw[-1] -= sum(draw) % n
        rep = check_lemma_2_4(n, draw)
        checked += rep.instances_checked
        failures.extend(rep.failures)
    elapsed = (time.perf_counter() - t0) * 1000
    return VerificationReport("lemma24", n, 1, checked, failures, elapsed)


class _Poly:
    """Minimal sparse integer polynomial in a fixed number of variables."""

    __slots__ = ("n_vars", "terms")

    def __init__(self, n_vars, terms=None):
        self.n_vars = n_vars
        self.terms = {tuple(k): v for k, v in (terms or {}).items() if v}

    @classmethod
    def one(cls, n_vars):
        return cls(n_vars, {(0,) * n_vars: 1})

    @classmethod
    def variable(cls, n_vars, i):
        key = [0] * n_vars
        key[i] = 1
        return cls(n_vars, {tuple(key): 1})

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return _Poly(self.n_vars, out)

    def __sub__(self, other):
        return self + (other * -1)

    def __mul__(self, other):
        if isinstance(other, int):
            return _Poly(self.n_vars, {k: v * other for k, v in self.terms.items()})
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                key = tuple(a + b for a, b in zip(k1, k2))
                out[key] = out.get(key, 0) + v1 * v2
        return _Poly(self.n_vars, out)

    __rmul__ = __mul__

    def __pow__(self, e):
        result = _Poly.one(self.n_vars)
        for _ in range(e):
            result = result * self
        return result

    def __eq__(self, other):
        return isinstance(other, _Poly) and self.n_vars == other.n_vars and self.terms == other.terms

    __hash__ = None


def check_prop_2_1(n: int, k: int, budget: int | None = None) -> VerificationReport:
    """Expand both sides of the generating identity and compare term by term.

    Left side: the product over variables of (1 - x_i^n)^k. Right side:
    the sum over zero-padded partitions with part sum divisible by n of
    (-1)^|lambda| e_lambda(x) times the evaluated orbit sum.
    """
    cap = budget if budget is not None else PROP21_CAP
    padded = binomial(k * n + n, n)
    if padded > cap:
        raise BudgetExceeded(f"{padded} zero-padded partitions exceed the cap of {cap}")
    t0 = time.perf_counter()
    one = _Poly.one(n)
    xs = [_Poly.variable(n, i) for i in range(n)]
    lhs = one
    for x in xs:
        lhs = lhs * (one - x ** n) ** k
    rhs = _Poly(n)
    checked = 0
    for lam in enumerate_partitions(n, k * n, allow_zero=True):
        if sum(lam) % n:
            continue
        checked += 1
        value = _value(lam, n, k)
        if value == 0:
            continue
        sign = -1 if sum(lam) % 2 else 1
        rhs = rhs + e_product(lam, xs, one=one) * (sign * value)
    failures = []
    for key in sorted(set(lhs.terms) | set(rhs.terms)):
        a = lhs.terms.get(key, 0)
        b = rhs.terms.get(key, 0)
        if a != b:
            failures.append(Failure(f"monomial exponents={','.join(map(str, key))}", str(a), str(b)))
    elapsed = (time.perf_counter() - t0) * 1000
    return VerificationReport("prop21", n, k, checked, failures, elapsed)


def check_branching(n: int, k: int, l: int, jobs: int = 1, budget: int | None = None) -> VerificationReport:
    """Value at k+l versus the sum of split products over contained partitions."""
    if n < 1 or k < 1 or l < 1:
        raise ValueError("n, k and l must be positive")
    cap = budget if budget is not None else EXHAUSTIVE_CAP
    family_size = binomial((k + l) * n + n - 1, n - 1)
    if family_size > cap:
        raise BudgetExceeded(f"{family_size} partitions at power {k + l} exceed the cap of {cap}")
    t0 = time.perf_counter()
    mus = list(enumerate_partitions(n, (k + l) * n))

    def examine(mu):
        direct = _value(mu, n, k + l)
        counts = Counter(mu)
        values = sorted(counts)
        total = 0
        for pick in product(*(range(counts[v] + 1) for v in values)):
            if sum(pick) != k * n:
                continue
            lam, rest = [], []
            for v, take in zip(values, pick):
                lam.extend([v] * take)
                rest.extend([v] * (counts[v] - take))
            total += _value(lam, n, k) * _value(rest, n, l)
        return mu, direct, total

    failures = []
    for mu, direct, total in _run_sharded(examine, mus, jobs):
        if direct != total:
            failures.append(Failure(f"mu={format_partition(mu)}", str(direct), str(total)))
    elapsed = (time.perf_counter() - t0) * 1000
    return VerificationReport("branching", n, k, len(mus), failures, elapsed, l=l)


def check_thm11(n: int, k: int, jobs: int = 1) -> VerificationReport:
    """Prime nonvanishing equivalence, the two-block closed form, and the block reduction."""
    t0 = time.perf_counter()
    kn = k * n
    sections = {}
    failures = []

    if k == 1 and is_prime(n):
        def equivalence(lam):
            return lam, _value(lam, n, 1) != 0, prime_nonvanishing(lam, n)

        cnt = 0
        for lam, nonzero, want in _run_sharded(equivalence, enumerate_partitions(n, n), jobs):
            cnt += 1
            if nonzero != want:
                failures.append(Failure(f"thm11_1 lambda={format_partition(lam)}",
                                        f"nonzero={want}", f"nonzero={nonzero}"))
        sections["prime_equivalence"] = cnt

    cnt = 0
    for lam1 in range(1, n):
        for a in range(kn + 1):
            lam = (lam1,) * a + (n,) * (kn - a)
            got = _value(lam, n, k)
            want = closed_form_two_blocks(lam1, a, n, k)
            cnt += 1
            if got != want:
                failures.append(Failure(f"thm11_2 lambda1={lam1} a={a}", str(want), str(got)))
            elif sum(lam) % n == 0 and want == 0:
                failures.append(Failure(f"thm11_2 lambda1={lam1} a={a}", "nonzero", "0"))
    sections["two_block_closed_form"] = cnt

    cnt = 0
    for lam1 in range(1, n + 1):
        for lam2 in range(1, n + 1):
            if (lam2 - lam1) % n == 0:
                continue
            for a in range(kn + 1):
                sign, reduced = reduce_two_distinct(lam1, lam2, a, n, k)
                got = _value((lam1,) * a + (lam2,) * (kn - a), n, k)
                want = sign * msp_value_dp(reduced)
                cnt += 1
                if got != want:
                    failures.append(Failure(f"thm11_3 lambda1={lam1} lambda2={lam2} a={a}",
                                            str(want), str(got)))
    sections["two_distinct_reduction"] = cnt

    elapsed = (time.perf_counter() - t0) * 1000
    return VerificationReport("thm11", n, k, sum(sections.values()), failures, elapsed, sections=sections)


def check_thm12(n: int, k: int, jobs: int = 1) -> VerificationReport:
    """Near-identity pattern values, vanishing off the residue class, unit scaling.

    Integrality is not a separate sweep: every evaluator readout already
    asserts it.
    """
    t0 = time.perf_counter()
    kn = k * n
    sections = {}
    failures = []

    candidates = []
    if kn >= 2:
        candidates += [(u, v) for u in range(1, n) for v in range(u, n)]
    if kn >= 3:
        candidates += [(u, v, w)
                       for u in range(1, n) for v in range(u, n) for w in range(v, n)]
    cnt = 0
    for low in candidates:
        lam = low + (n,) * (kn - len(low))
        inst = EvalInstance(lam, n, k)
        want = mansfield_coefficient(inst)
        if want is None:
            continue
        got = msp_value_dp(inst)
        cnt += 1
        if got != want or want == 0:
            failures.append(Failure(f"thm12_pattern lambda={format_partition(lam)}",
                                    f"{want} (nonzero)", str(got)))
    sections["near_identity_patterns"] = cnt

    family_size = binomial(kn + n - 1, n - 1)
    if family_size <= EXHAUSTIVE_CAP:
        def vanishing(lam):
            return lam, _value(lam, n, k)

        offs = [lam for lam in enumerate_partitions(n, kn) if sum(lam) % n]
        cnt = 0
        for lam, val in _run_sharded(vanishing, offs, jobs):
            cnt += 1
            if val != 0:
                failures.append(Failure(f"thm12_6 lambda={format_partition(lam)}", "0", str(val)))
        sections["vanishing_off_residue"] = cnt

        units = [l for l in range(2, n + 1) if gcd(l, n) == 1]

        def scaling(lam):
            base = _value(lam, n, k)
            return lam, base, [(l, _value(scale_partition(lam, l, n), n, k)) for l in units]

        cnt = 0
        for lam, base, scaled in _run_sharded(scaling, enumerate_partitions(n, kn), jobs):
            for l, got in scaled:
                cnt += 1
                if got != base:
                    failures.append(Failure(f"thm12_8 lambda={format_partition(lam)} l={l}",
                                            str(base), str(got)))
        sections["unit_scaling"] = cnt

    elapsed = (time.perf_counter() - t0) * 1000
    return VerificationReport("thm12", n, k, sum(sections.values()), failures, elapsed, sections=sections)


def check_thm32(n: int, k: int, budget: int | None = None, jobs: int = 1) -> VerificationReport:
    """Expansion coefficients versus evaluator values, plus the determinant cross-checks."""
    t0 = time.perf_counter()
    sections = {}
    failures = []
    expansion = dedekind_expand(n, k, budget)

    cnt = 0
    for key in expansion:
        cnt += 1
        if sum((i + 1) * e for i, e in enumerate(key)) % n:
            failures.append(Failure(f"thm32_key lambda={format_partition(key_partition(key))}",
                                    "part sum divisible by n", "not divisible"))
    sections["residue_divisibility"] = cnt

    if k == 1 and n <= LEIBNIZ_LIMIT:
        det = leibniz_determinant(n)
        cnt = 0
        for key in sorted(set(expansion) | set(det)):
            a = expansion.coefficient(key)
            b = det.coefficient(key)
            cnt += 1
            if a != b:
                failures.append(Failure(f"thm32_leibniz lambda={format_partition(key_partition(key))}",
                                        str(b), str(a)))
        sections["determinant_routes"] = cnt

    tilde = lambda_tilde_size(n, k)
    if tilde <= COEFFICIENT_SWEEP_CAP:
        lams = [lam for lam in enumerate_partitions(n, k * n) if sum(lam) % n == 0]
        if len(lams) != tilde:
            raise TheoremViolation(f"enumeration found {len(lams)} partitions, formula says {tilde}")
        run_naive = k * n <= NAIVE_LENGTH_LIMIT

        def compare(lam):
            inst = EvalInstance(lam, n, k)
            dp = msp_value_dp(inst)
            naive = msp_value_naive(inst) if run_naive else None
            return lam, expansion.coefficient(exponent_key(lam, n)), dp, naive

        cnt = 0
        naive_cnt = 0
        for lam, coeff, dp, naive in _run_sharded(compare, lams, jobs):
            cnt += 1
            if dp != coeff:
                failures.append(Failure(f"thm32_coefficient lambda={format_partition(lam)}",
                                        str(coeff), str(dp)))
            if naive is not None:
                naive_cnt += 1
                if naive != dp:
                    failures.append(Failure(f"thm32_naive lambda={format_partition(lam)}",
                                            str(dp), str(naive)))
        sections["coefficient_agreement"] = cnt
        if run_naive:
            sections["naive_agreement"] = naive_cnt

    if k == 1 and is_prime(n):
        tc = count_terms(n, 1, budget)
        want = prime_term_count(n)
        sections["prime_term_count"] = 1
        if not (tc.nu == want == tc.lambda_tilde and tc.equal):
            failures.append(Failure(f"corollary p={n}", f"nu={want} equal=True",
                                    f"nu={tc.nu} lambda_tilde={tc.lambda_tilde} equal={tc.equal}"))

    cnt = 0
    for l in range(2, n + 1):
        if gcd(l, n) != 1:
            continue
        cnt += 1
        if expansion.relabel(l) != expansion:
            failures.append(Failure(f"thm32_automorphism l={l}", "expansion fixed", "expansion moved"))
    sections["automorphism_invariance"] = cnt

    elapsed = (time.perf_counter() - t0) * 1000
    return VerificationReport("thm32", n, k, sum(sections.values()), failures, elapsed, sections=sections)


def check_theorems(n: int, k: int, budget: int | None = None, jobs: int = 1) -> VerificationReport:
    """Every applicable theorem suite in one report, sections prefixed per suite."""
    t0 = time.perf_counter()
    reports = [check_thm11(n, k, jobs), check_thm12(n, k, jobs), check_thm32(n, k, budget, jobs)]
    sections = {}
    failures = []
    total = 0
    for rep in reports:
        for name, cnt in rep.sections.items():
            sections[f"{rep.suite}.{name}"] = cnt
        failures.extend(rep.failures)
        total += rep.instances_checked
    elapsed = (time.perf_counter() - t0) * 1000
    return VerificationReport("theorems", n, k, total, failures, elapsed, sections=sections)


def explore_conjecture(n: int, k: int, budget: int | None = None, jobs: int = 1) -> ConjectureReport:
    """Classify the divisible-sum index set by zero or nonzero coefficient.

    Produces evidence for the open question of which (n, k) leave no
    coefficient zero; nothing conjectural is asserted. The one hard
    assertion is the proven case k = 1 with n prime, where a zero
    coefficient is impossible.
    """
    t0 = time.perf_counter()
    total = lambda_tilde_size(n, k)
    lams = [lam for lam in enumerate_partitions(n, k * n) if sum(lam) % n == 0]
    if len(lams) != total:
        raise TheoremViolation(f"enumeration found {len(lams)} partitions, formula says {total}")
    bound = binomial(k * n + n - 1, n - 1)
    cap = budget if budget is not None else None
    if cap is None or bound <= cap:
        expansion = dedekind_expand(n, k, cap)

        def value(lam):
            return lam, expansion.coefficient(exponent_key(lam, n))
    else:
        def value(lam):
            return lam, msp_value_dp(EvalInstance(lam, n, k), budget=cap)

    zeros = [lam for lam, v in _run_sharded(value, lams, jobs) if v == 0]
    if k == 1 and is_prime(n) and zeros:
        raise TheoremViolation(
            f"zero coefficient at prime n={n}, k=1: lambda={format_partition(zeros[0])}")
    prime_power = is_prime_power(n)
    elapsed = (time.perf_counter() - t0) * 1000
    return ConjectureReport(n, k, total, zeros, prime_power,
                            prime_power == (not zeros), elapsed)
