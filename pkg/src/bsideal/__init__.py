"""Exact Bernstein-Sato polynomials and ideals over Q."""

__version__ = "0.1.0"

from .core import (
    Factorization,
    LinearForm,
    MultiPoly,
    Rational,
    Signature,
    factored_string,
    linear_factorization,
    univariate_rational_roots,
)
from .groebner import Budget, GroebnerBasis, ResourceError, TermOrder, left_buchberger, left_normal_form
from .oracle import AnsatzBounds, cross_validate, find_witness, oracle_bfunction
from .parser import ParseError, parse_poly, parse_s_poly, parse_tuple
from .pipeline import (
    BSIdeal,
    InputTuple,
    InvalidInput,
    MultiIndex,
    annihilator_fs,
    bfunction,
    bs_ideal,
    lct,
    membership,
)
from .torus import (
    HyperplaneComponent,
    SupportLocus,
    TorsionSubtorus,
    check_structure,
    diagonal_specialization,
    exp_image,
    exp_locus,
    locus_components,
    locus_union,
)
from .weyl import TwistedElement, WeylElement, WeylSignature, weyl_apply_twisted, weyl_mul
from .zeta import ResolutionData, conjecture_check, polar_candidates

__all__ = [name for name in dir() if not name.startswith("_")]
