"""Exact special values of monomial symmetric polynomials at roots of unity.

Exact cyclotomic-integer arithmetic, bounded-partition enumeration,
three independent evaluators for the orbit-sum values, expansion and
term counting of cyclic-group determinant powers, and machine
verification suites for the identities tying all of it together.
"""

from .cyclotomic import (
    CyclotomicInt,
    IntegralityViolation,
    IntPolynomial,
    cyclotomic_poly,
    root_power,
)
from .partitions import (
    binomial,
    canonical_residues,
    enumerate_partitions,
    euler_phi,
    format_partition,
    inclusion_order,
    invariant_dimension,
    lambda_tilde_size,
    parse_partition,
    remove_parts,
    triangle_order,
)
from .msp import (
    BudgetExceeded,
    EvalInstance,
    closed_form_two_blocks,
    closed_form_value,
    e_product,
    elementary_symmetric,
    mansfield_coefficient,
    msp_value_dp,
    msp_value_naive,
    power_sum,
    prime_nonvanishing,
    reduce_two_distinct,
    scale_partition,
)
from .groupdet import (
    MonomialMap,
    coefficient,
    count_terms,
    dedekind_expand,
    exponent_key,
    key_partition,
    leibniz_determinant,
    prime_term_count,
)
from .verify import (
    ConjectureReport,
    TheoremViolation,
    VerificationReport,
    check_branching,
    check_lemma_2_4,
    check_lemma_2_4_sweep,
    check_prop_2_1,
    check_theorems,
    check_thm11,
    check_thm12,
    check_thm32,
    explore_conjecture,
)

__version__ = "0.1.0"
