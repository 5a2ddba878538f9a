"""Exact computation of restricted partition functions through determinants
of Bernoulli polynomials, with checks of the associated identities."""

from .bernoulli import (
    UniPoly,
    bernoulli_barnes_number,
    bernoulli_number,
    bernoulli_poly,
    bernoulli_poly_eval,
)
from .detpoly import (
    F1_closed_form,
    F_poly,
    Fbar_poly,
    G_poly,
    Gbar_poly,
    GuardError,
    Verdict,
    VerificationReport,
    build_delta_bar_matrix,
    build_delta_matrix,
    delta,
    delta_bar,
    hessenberg_M,
    hilbert_like_det,
)
from .multipoly import (
    MultiPoly,
    NotDivisibleError,
    complete_hom,
    divided_diff_bernoulli,
    elem_sym,
    exact_div,
    is_symmetric,
    mp_eval,
    vandermonde,
)
from .partition import (
    PartitionSpec,
    QuasiPolynomial,
    eval_quasi,
    p_oracle,
    quasi_from_delta_system,
    quasi_from_deltabar_system,
    quasi_from_oracle,
)
from .rational import (
    Fraction,
    RationalMatrix,
    SingularMatrixError,
    cramer_column_replace,
    det,
    format_rational,
    solve_linear,
)

__version__ = "0.1.0"
