"""Twisted generalized Reed-Solomon codes over finite fields.

Construction, MDS / NMDS / self-duality tests, parity checks, GRS versus
non-GRS certification, symbolic minor polynomials and exhaustive censuses.
"""
from .ff import Felt, Field, FieldError, make_field, primitive_root
from .matrix import Matrix, MatrixError, det, inverse, rank, rref
from .code import (CodeConfig, CodeError, EvalParams, GuardExceeded, InvariantViolation,
                   TgrsCode, TwistMatrix, generator, load_config, parse_config)
from .classify import (ClassificationReport, mds_fast, mds_oracle, nmds_check, parity_check,
                       selfdual_direct, selfdual_sufficient, specialized_mds, subset_data)
from .grs import grs_classify, roth_lempel_is_grs, schur_square_dim, systematic_form
from .poly import MultiPoly, count_zeros, format_poly, parse_poly
from .polysearch import census_classify, minor_numerator, symbolic_system
from .census import CensusReport, run_census

__version__ = "0.1.0"
