"""Exact arithmetic in the free field via admissible linear systems."""

__version__ = "0.1.0"

from .als import (
    ALS,
    CertFlags,
    Linearization,
    Pencil,
    add,
    als_from_rows,
    eval_at_matrices,
    linearization_to_lr,
    mk_monomial,
    mk_scalar,
    mul,
    scale,
    std_inverse,
    to_linearization,
    transform,
    with_alphabet,
)
from .certify import certify
from .compiler import CompileOptions, compile_expr
from .errors import (
    AlphabetMismatch,
    CertificationRequired,
    FormMismatch,
    FreeFieldError,
    InverseOfZero,
    NotAdmissible,
    NotRegular,
    ParseError,
    SchemaError,
)
from .expr import parse, to_text
from .inverse import minimal_inverse, minimal_inverse_method
from .linalg import Matrix
from .regular import coeff, hankel_rank, is_polynomial, is_regular, is_zero_regular, minimize_regular, to_pls
from .serialize import export_als, import_als
from .wordproblem import (
    Verdict,
    build_tu_system,
    decide_equal,
    difference_linearization,
    equality_pipeline,
    positive_test,
)
