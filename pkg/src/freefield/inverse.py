"""Minimal inverses of certified-minimal systems.

For a minimal ALS the right family contains 1 exactly when some vector
``q`` with ``q_1 = 1`` is killed by every letter coefficient ``A_l``; then
``A q`` is a scalar column and an admissible transformation makes the first
column ``e_1``.  Dually 1 lies in the left family when some row ``p`` with
``p v != 0`` is killed by every ``A_l``, and the last row can be brought to
``e_n``.  Depending on which of the two normal forms are reachable the
inverse has dimension n-1, n or n+1.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple

from .als import ALS, CertFlags, Pencil, mk_scalar, std_inverse, transform
from .errors import CertificationRequired, FormMismatch, InverseOfZero
from .linalg import Matrix, complete_basis, invert, solve_affine

__all__ = [
    "InverseForm",
    "normalize_v",
    "right_witness",
    "left_witness",
    "detect_flags",
    "detect_and_normalize_R",
    "detect_and_normalize_L",
    "inverse_form",
    "inverse_t11",
    "inverse_t10",
    "inverse_t01",
    "minimal_inverse",
    "minimal_inverse_method",
]


def _require_minimal(f: ALS):
    if not f.cert.is_minimal:
        raise CertificationRequired("operation requires a system certified minimal")


def normalize_v(f: ALS) -> ALS:
    """Row operations (Q = I) bringing v to ``lambda e_n``."""
    n = f.dim
    vals = f.v.flat()
    k = max((i for i in range(n) if vals[i]), default=None)
    if k is None:
        raise InverseOfZero("right-hand side is zero, the element is 0")
    P = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    P[k], P[n - 1] = P[n - 1], P[k]
    vals[k], vals[n - 1] = vals[n - 1], vals[k]
    lam = vals[n - 1]
    for i in range(n - 1):
        if vals[i]:
            c = vals[i] / lam
            P[i] = [a - c * b for a, b in zip(P[i], P[n - 1])]
    Pm = Matrix.from_rows(P, n)
    if Pm.is_identity():
        return f
    return transform(f, Pm, Matrix.identity(n))


def right_witness(f: ALS) -> Optional[Matrix]:
    """Column q with ``q_1 = 1`` and ``A_l q = 0`` for every letter, if any."""
    n = f.dim
    rows = [r for m in f.A.linear for r in m.tolist()]
    rows.append([Fraction(1)] + [Fraction(0)] * (n - 1))
    rhs = Matrix.column([0] * (len(rows) - 1) + [1])
    sol = solve_affine(Matrix.from_rows(rows, n), rhs)
    return None if sol is None else sol[0]


def left_witness(f: ALS) -> Optional[Matrix]:
    """Row p with ``p v = 1`` and ``p A_l = 0`` for every letter, if any."""
    n = f.dim
    rows = [r for m in f.A.linear for r in m.T.tolist()]
    rows.append(list(f.v.flat()))
    rhs = Matrix.column([0] * (len(rows) - 1) + [1])
    sol = solve_affine(Matrix.from_rows(rows, n), rhs)
    return None if sol is None else sol[0].T


def detect_flags(f: ALS) -> CertFlags:
    """Decide 1 in L / 1 in R for a certified-minimal system."""
    _require_minimal(f)
    if f.is_empty:
        return CertFlags("yes", "no", "no")
    if f.dim == 1:
        yes = "yes" if _is_scalar_system(f) else "no"
        return CertFlags("yes", yes, yes)
    L = "yes" if left_witness(f) is not None else "no"
    R = "yes" if right_witness(f) is not None else "no"
    return CertFlags("yes", L, R)


def _is_scalar_system(f: ALS) -> bool:
    return all(m.is_zero() for m in f.A.linear)


def _with_flags(f: ALS, **flags) -> ALS:
    c = f.cert
    return f.with_cert(CertFlags(c.minimal, flags.get("L", c.one_in_L), flags.get("R", c.one_in_R)))


def detect_and_normalize_R(f: ALS) -> Optional[ALS]:
    """Admissibly transform to first column ``e_1`` (scalar); None iff 1 not in R.

    v is normalized to ``lambda e_n`` first and kept there.
    """
    _require_minimal(f)
    if f.dim < 2:
        raise ValueError("normal forms need dimension at least 2")
    f = normalize_v(f)
    n = f.dim
    q = right_witness(f)
    if q is None:
        return None
    c = f.A.const @ q
    en = Matrix.unit(n, n - 1)
    try:
        M = complete_basis([c], n, fixed_last=en)
    except ValueError:
        # c parallel to e_n would make f a scalar, impossible for n >= 2
        return None
    Q = Matrix.identity(n).tolist()
    for i in range(n):
        Q[i][0] = q[i, 0]
    g = transform(f, invert(M), Matrix.from_rows(Q, n))
    return _with_flags(g, R="yes")


def detect_and_normalize_L(f: ALS) -> Optional[ALS]:
    """Admissibly transform to last row ``e_n`` (scalar); None iff 1 not in L."""
    _require_minimal(f)
    if f.dim < 2:
        raise ValueError("normal forms need dimension at least 2")
    f = normalize_v(f)
    n = f.dim
    p = left_witness(f)
    if p is None:
        return None
    lam = f.v[n - 1, 0]
    p = p.scale(lam)
    P = Matrix.identity(n).tolist()
    P[n - 1] = p.flat()
    r = p @ f.A.const
    e1 = Matrix.unit(n, 0)
    try:
        N = complete_basis([e1], n, fixed_last=r.T).T
    except ValueError:
        return None
    g = transform(f, Matrix.from_rows(P, n), invert(N))
    return _with_flags(g, L="yes")


@dataclass(frozen=True)
class InverseForm:
    """Blocks of a system in one of the inverse normal forms.

    Index 0 is the first coordinate, ``mid`` the n-2 middle ones and the
    last index n-1.  Names follow the usual block layout
    ``[[a, b', b], [a', B, b''], [d, c', c]]``.
    """

    kind: str
    lam: Fraction
    blocks: dict


def _first_col_e1(f: ALS) -> bool:
    n = f.dim
    return f.A.const.col_tuple(0) == Matrix.unit(n, 0).col_tuple(0) and all(
        not any(m.col_tuple(0)) for m in f.A.linear
    )


def _last_row_en(f: ALS) -> bool:
    n = f.dim
    return f.A.const.row_tuple(n - 1) == Matrix.unit(n, n - 1, column=False).row_tuple(0) and all(
        not any(m.row_tuple(n - 1)) for m in f.A.linear
    )


def _v_lambda(f: ALS) -> Optional[Fraction]:
    vals = f.v.flat()
    if vals[-1] and not any(vals[:-1]):
        return vals[-1]
    return None


def inverse_form(f: ALS) -> InverseForm:
    """Classify a system already in normal form (T11, T10, T01 or T00)."""
    n = f.dim
    if n < 2:
        raise FormMismatch("normal forms need dimension at least 2")
    lam = _v_lambda(f)
    if lam is None:
        raise FormMismatch("right-hand side is not of the form lambda e_n")
    col, row = _first_col_e1(f), _last_row_en(f)
    kind = {(True, True): "T11", (True, False): "T10", (False, True): "T01"}.get((col, row), "T00")
    first, mid, last = [0], list(range(1, n - 1)), [n - 1]
    A = f.A
    blocks = {
        "a": A.take(first, first), "b'": A.take(first, mid), "b": A.take(first, last),
        "a'": A.take(mid, first), "B": A.take(mid, mid), "b''": A.take(mid, last),
        "c'": A.take(last, mid), "c": A.take(last, last),
    }
    return InverseForm(kind, lam, blocks)


def _check(f: ALS, kinds) -> InverseForm:
    _require_minimal(f)
    form = inverse_form(f)
    if form.kind not in kinds:
        raise FormMismatch(f"system is of form {form.kind}, expected {'/'.join(kinds)}")
    return form


def _rev(p: Pencil) -> Pencil:
    return p.reversed()


def inverse_t11(f: ALS) -> ALS:
    """Dimension n-1 inverse of a system with first column e_1 and last row e_n."""
    form = _check(f, ("T11",))
    b, lam = form.blocks, form.lam
    A = Pencil.block([
        [_rev(b["b''"]).scale(-lam), -_rev(b["B"])],
        [b["b"].scale(-lam), -_rev(b["b'"])],
    ])
    n = f.dim - 1
    return _finish(ALS(A, Matrix.unit(n, n - 1), CertFlags("yes")))


def inverse_t10(f: ALS) -> ALS:
    """Dimension n inverse of a system with first column e_1 and 1 not in L.

    Also used when 1 lies in both families but they cannot be normalized
    simultaneously; the output flags are recomputed either way.
    """
    form = _check(f, ("T10", "T11"))
    b, lam = form.blocks, form.lam
    alphabet = f.alphabet
    one = Pencil.constant(alphabet, Matrix([[1]]))
    A = Pencil.block([
        [one, b["c"].scale(-1 / lam), _rev(b["c'"]).scale(-1 / lam)],
        [Pencil.zeros(alphabet, f.dim - 2, 1), -_rev(b["b''"]), -_rev(b["B"])],
        [Pencil.zeros(alphabet, 1, 1), -b["b"], -_rev(b["b'"])],
    ])
    n = f.dim
    return _finish(ALS(A, Matrix.unit(n, n - 1), CertFlags("yes")))


def inverse_t01(f: ALS) -> ALS:
    """Dimension n inverse of a system with last row e_n and 1 not in R."""
    form = _check(f, ("T01",))
    b, lam = form.blocks, form.lam
    alphabet = f.alphabet
    n = f.dim
    A = Pencil.block([
        [_rev(b["b''"]).scale(-lam), -_rev(b["B"]), -_rev(b["a'"])],
        [b["b"].scale(-lam), -_rev(b["b'"]), -b["a"]],
        [Pencil.zeros(alphabet, 1, n - 1), Pencil.constant(alphabet, Matrix([[1]]))],
    ])
    return _finish(ALS(A, Matrix.unit(n, n - 1), CertFlags("yes")))


def _finish(g: ALS) -> ALS:
    return g.with_cert(detect_flags(g))


def minimal_inverse_method(f: ALS) -> Tuple[ALS, str]:
    """Minimal ALS for the inverse together with the construction used.

    The method is ``"scalar"`` for nonzero scalars, otherwise one of
    ``"T11"`` (dimension n-1), ``"T10"``/``"T01"`` (dimension n) or
    ``"T00"`` (standard inverse, dimension n+1).
    """
    _require_minimal(f)
    if f.is_empty:
        raise InverseOfZero("the empty system represents 0")
    if f.dim == 1:
        if _is_scalar_system(f):
            return mk_scalar(f.A.const[0, 0] / f.v[0, 0], f.alphabet), "scalar"
        return _finish(std_inverse(f).with_cert(CertFlags("yes"))), "T00"
    g = normalize_v(f)
    q = right_witness(g)
    p = left_witness(g)
    if q is not None:
        r = detect_and_normalize_R(g)
        if p is not None and not (p @ g.A.const @ q)[0, 0]:
            # 1 in both families and compatible: both normal forms at once
            return inverse_t11(detect_and_normalize_L(r)), "T11"
        return inverse_t10(r), "T10"
    if p is not None:
        return inverse_t01(detect_and_normalize_L(g)), "T01"
    return _finish(std_inverse(f).with_cert(CertFlags("yes"))), "T00"


def minimal_inverse(f: ALS) -> ALS:
    return minimal_inverse_method(f)[0]
