"""Exact characteristic-p commutative algebra over F_p[x_1, ..., x_n].

Frobenius roots of ideals, test ideals and F-jumping exponents, explicit
differential-operator certificates, and Frobenius pushforwards of
numerical-semigroup rings.
"""

from .dmod import (
    DeltaCertificate,
    GenerationReport,
    chain_level,
    construct_delta,
    delta_exists_criterion,
    generation_report,
    is_fpure_pair,
    verify_delta,
)
from .errors import (
    AmbientMismatchError,
    ExponentOverflowError,
    FrobkitError,
    ParseError,
    ResourceLimitError,
    UnstabilizedError,
)
from .frobroot import (
    FrobeniusChainReport,
    descending_chain,
    frobenius_root,
    root_by_digits,
    root_compose_check,
    root_of_power,
    stabilization_index,
)
from .groebner import (
    GroebnerBasis,
    Ideal,
    Limits,
    bracket_power,
    buchberger,
    ideal_combine,
    ideal_equal,
    ideal_member,
    ideal_power,
    ideal_product,
    ideal_subset,
    ideal_sum,
    is_reduced,
    lift,
    limits,
    normal_form,
    s_pair_check,
)
from .polyring import (
    GREVLEX,
    LEX,
    MonomialOrder,
    Polynomial,
    PolynomialRing,
    PrimeField,
    digit_decompose,
    format_polynomial,
    frobenius_power,
    recompose,
)
from .semigroup import (
    FFRTDecomposition,
    FracChainReport,
    FracIdeal,
    NumericalSemigroup,
    build_semigroup,
    chain_stabilize_frac,
    ffrt_decompose,
    frac_hom,
    frobenius_root_frac,
)
from .testideal import (
    FptInterval,
    JumpReport,
    degree_bound_check,
    fpt_interval,
    jumping_exponents,
    nu,
    skoda_containment,
    test_ideal,
    test_ideal_info,
)

__version__ = "0.1.0"
