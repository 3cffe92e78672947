"""Linear pencils, admissible linear systems and the rational operations.

An element of the free field is carried by an admissible linear system
``A s = v`` with ``u = e_1``: the element is the first component of the
unique solution ``s``.  The pencil ``A`` is stored coefficient-wise as
``A_0 (x) 1 + sum_l A_l (x) x_l`` with one rational matrix per slice.
"""

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .errors import AlphabetMismatch, FreeFieldError, InverseOfZero, NotAdmissible
from .linalg import Matrix, invert, solve, to_scalar

__all__ = [
    "make_alphabet",
    "alphabet_union",
    "Pencil",
    "CertFlags",
    "ALS",
    "Linearization",
    "parse_linear",
    "format_linear",
    "als_from_rows",
    "mk_scalar",
    "mk_monomial",
    "scale",
    "add",
    "mul",
    "std_inverse",
    "transform",
    "with_alphabet",
    "to_linearization",
    "linearization_to_lr",
    "evaluate_pencil",
    "eval_at_matrices",
    "family_values",
    "letters_used",
]

Alphabet = Tuple[str, ...]

_LETTER = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")


def make_alphabet(letters: Iterable[str]) -> Alphabet:
    out = tuple(letters)
    if not out:
        raise ValueError("alphabet must be nonempty")
    if len(set(out)) != len(out):
        raise ValueError(f"duplicate letters in alphabet {out}")
    for a in out:
        if not isinstance(a, str) or not _LETTER.match(a) or a == "inv":
            raise ValueError(f"invalid letter name {a!r}")
    return out


def alphabet_union(a: Alphabet, b: Alphabet) -> Alphabet:
    """Letters of ``a`` in order, followed by the new letters of ``b``."""
    return tuple(a) + tuple(x for x in b if x not in a)


@dataclass(frozen=True)
class Pencil:
    """Linear matrix ``coeffs[0] (x) 1 + sum_l coeffs[l] (x) alphabet[l-1]``."""

    alphabet: Alphabet
    coeffs: Tuple[Matrix, ...]

    def __post_init__(self):
        if len(self.coeffs) != len(self.alphabet) + 1:
            raise ValueError("need one coefficient matrix per letter plus the constant")
        shape = self.coeffs[0].shape
        if any(c.shape != shape for c in self.coeffs):
            raise ValueError("coefficient matrices differ in shape")

    @classmethod
    def zeros(cls, alphabet: Alphabet, rows: int, cols: Optional[int] = None) -> "Pencil":
        cols = rows if cols is None else cols
        z = Matrix.zeros(rows, cols)
        return cls(tuple(alphabet), (z,) * (len(alphabet) + 1))

    @classmethod
    def constant(cls, alphabet: Alphabet, M: Matrix) -> "Pencil":
        z = Matrix.zeros(*M.shape)
        return cls(tuple(alphabet), (M,) + (z,) * len(alphabet))

    @property
    def shape(self) -> Tuple[int, int]:
        return self.coeffs[0].shape

    @property
    def dim(self) -> int:
        r, c = self.shape
        if r != c:
            raise ValueError("pencil is not square")
        return r

    @property
    def const(self) -> Matrix:
        return self.coeffs[0]

    @property
    def linear(self) -> Tuple[Matrix, ...]:
        return self.coeffs[1:]

    def letter(self, name: str) -> Matrix:
        return self.coeffs[1 + self.alphabet.index(name)]

    def map(self, fn) -> "Pencil":
        return Pencil(self.alphabet, tuple(fn(c) for c in self.coeffs))

    def transform(self, P: Matrix, Q: Matrix) -> "Pencil":
        return self.map(lambda c: P @ c @ Q)

    def take(self, rows: Sequence[int], cols: Sequence[int]) -> "Pencil":
        return self.map(lambda c: c.take(rows, cols))

    def reversed(self) -> "Pencil":
        return self.map(Matrix.reversed)

    def __neg__(self) -> "Pencil":
        return self.map(Matrix.__neg__)

    def __add__(self, other: "Pencil") -> "Pencil":
        _same_alphabet(self.alphabet, other.alphabet)
        return Pencil(self.alphabet, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> "Pencil":
        return self.map(lambda m: m.scale(c))

    @staticmethod
    def block(blocks: Sequence[Sequence["Pencil"]]) -> "Pencil":
        alphabet = blocks[0][0].alphabet
        for row in blocks:
            for b in row:
                _same_alphabet(alphabet, b.alphabet)
        coeffs = tuple(
            Matrix.block([[b.coeffs[k] for b in row] for row in blocks])
            for k in range(len(alphabet) + 1)
        )
        return Pencil(alphabet, coeffs)

    def entry(self, i: int, j: int) -> Tuple[Fraction, ...]:
        return tuple(c[i, j] for c in self.coeffs)

    def is_scalar_entry(self, i: int, j: int) -> bool:
        return not any(c[i, j] for c in self.linear)

    def to_text(self) -> str:
        r, c = self.shape
        cells = [[format_linear(self.entry(i, j), self.alphabet) for j in range(c)] for i in range(r)]
        if not cells:
            return "[]"
        w = max(len(x) for row in cells for x in row)
        return "\n".join("[" + "  ".join(x.rjust(w) for x in row) + "]" for row in cells)


def _same_alphabet(a: Alphabet, b: Alphabet):
    if tuple(a) != tuple(b):
        raise AlphabetMismatch(f"alphabets differ: {a} vs {b}")


def letters_used(p: Pencil) -> Tuple[str, ...]:
    return tuple(a for a, m in zip(p.alphabet, p.linear) if not m.is_zero())


_TERM = re.compile(r"\s*([+-]?)\s*(\d+(?:/\d+)?)?\s*(\*?)\s*([A-Za-z_][A-Za-z_0-9]*)?\s*")


def parse_linear(text: str, alphabet: Alphabet) -> Tuple[Fraction, ...]:
    """Parse a linear form like ``"1 - x"``, ``"-3/2*y"`` or ``"."`` (zero)."""
    out = [Fraction(0)] * (len(alphabet) + 1)
    s = text.strip()
    if s in (".", "", "0"):
        return tuple(out)
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        sign, num, _, name = m.groups()
        if m.end() == pos or (num is None and name is None) or (not sign and not first):
            raise ValueError(f"bad linear form {text!r}")
        coef = Fraction(num) if num else Fraction(1)
        if sign == "-":
            coef = -coef
        if name is None:
            out[0] += coef
        else:
            if name not in alphabet:
                raise ValueError(f"letter {name!r} not in alphabet {alphabet}")
            out[1 + alphabet.index(name)] += coef
        pos = m.end()
        first = False
    return tuple(out)


def format_linear(coeffs: Sequence[Fraction], alphabet: Alphabet) -> str:
    terms = []
    if coeffs[0]:
        terms.append(str(coeffs[0]))
    for a, c in zip(alphabet, coeffs[1:]):
        if not c:
            continue
        if c == 1:
            terms.append(a)
        elif c == -1:
            terms.append("-" + a)
        else:
            terms.append(f"{c}{a}" if c.denominator == 1 else f"{c}*{a}")
    if not terms:
        return "."
    out = terms[0]
    for t in terms[1:]:
        out += " - " + t[1:] if t.startswith("-") else " + " + t
    return out


@dataclass(frozen=True)
class CertFlags:
    """What is known about a system.

    ``one_in_L``/``one_in_R`` record whether 1 lies in the span of the left
    and right family; they are only ever decided for certified-minimal
    systems.
    """

    minimal: str = "unknown"
    one_in_L: str = "unknown"
    one_in_R: str = "unknown"

    def __post_init__(self):
        if self.minimal not in ("yes", "unknown"):
            raise ValueError(f"bad minimal flag {self.minimal!r}")
        for f in (self.one_in_L, self.one_in_R):
            if f not in ("yes", "no", "unknown"):
                raise ValueError(f"bad family flag {f!r}")
        if self.minimal != "yes" and (self.one_in_L != "unknown" or self.one_in_R != "unknown"):
            raise ValueError("family flags require a certified-minimal system")

    @property
    def is_minimal(self) -> bool:
        return self.minimal == "yes"


UNKNOWN = CertFlags()
MINIMAL = CertFlags("yes")


@dataclass(frozen=True, eq=False)
class ALS:
    """Admissible linear system ``(e_1, A, v)``.

    Equality is structural: same alphabet, same coefficient matrices and
    same right-hand side.  Use the word-problem routines for element equality.
    """

    A: Pencil
    v: Matrix
    cert: CertFlags = field(default=UNKNOWN)

    def __post_init__(self):
        n = self.A.dim
        if self.v.shape != (n, 1):
            raise ValueError(f"right-hand side has shape {self.v.shape}, expected ({n}, 1)")

    @property
    def alphabet(self) -> Alphabet:
        return self.A.alphabet

    @property
    def dim(self) -> int:
        return self.A.dim

    @property
    def u(self) -> Matrix:
        return Matrix.unit(self.dim, 0, column=False) if self.dim else Matrix.zeros(1, 0)

    @property
    def is_empty(self) -> bool:
        return self.dim == 0

    def with_cert(self, cert: CertFlags) -> "ALS":
        return ALS(self.A, self.v, cert)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ALS):
            return NotImplemented
        return self.A == other.A and self.v == other.v

    def __hash__(self):
        return hash((self.A, self.v))

    def to_text(self) -> str:
        lines = [f"alphabet: {', '.join(self.alphabet)}", f"dim: {self.dim}"]
        c = self.cert
        lines.append(f"cert: minimal={c.minimal} one_in_L={c.one_in_L} one_in_R={c.one_in_R}")
        if self.dim:
            lines.append("A =")
            lines.append(self.A.to_text())
            lines.append("v = [" + ", ".join(str(x) for x in self.v.flat()) + "]^T")
        return "\n".join(lines)


def als_from_rows(alphabet: Sequence[str], rows: Sequence[Sequence[str]], v: Sequence,
                  cert: CertFlags = UNKNOWN) -> ALS:
    """Build an ALS from a display such as ``[["1", "-x"], [".", "1"]]``."""
    alphabet = make_alphabet(alphabet)
    n = len(rows)
    entries = [[parse_linear(str(e), alphabet) for e in row] for row in rows]
    if any(len(r) != n for r in entries):
        raise ValueError("system matrix must be square")
    coeffs = tuple(
        Matrix.from_rows([[entries[i][j][k] for j in range(n)] for i in range(n)], n)
        for k in range(len(alphabet) + 1)
    )
    return ALS(Pencil(alphabet, coeffs), Matrix.column(v), cert)


def _empty(alphabet: Alphabet) -> ALS:
    return ALS(Pencil.zeros(tuple(alphabet), 0), Matrix.zeros(0, 1), CertFlags("yes", "no", "no"))


def mk_scalar(value, alphabet: Sequence[str]) -> ALS:
    """Minimal system for a scalar; zero gives the empty system."""
    alphabet = make_alphabet(alphabet)
    lam = to_scalar(value)
    if not lam:
        return _empty(alphabet)
    return ALS(Pencil.constant(alphabet, Matrix([[1]])), Matrix([[lam]]), CertFlags("yes", "yes", "yes"))


def mk_monomial(word: Sequence[str], alphabet: Optional[Sequence[str]] = None) -> ALS:
    """Minimal system of dimension k+1 for the monomial x_{i1} ... x_{ik}.

    Unit diagonal, ``-x_{ij}`` on the superdiagonal and ``v = e_{k+1}``.
    """
    word = tuple(word)
    if alphabet is None:
        alphabet = tuple(sorted(set(word)))
    alphabet = make_alphabet(alphabet)
    for a in word:
        if a not in alphabet:
            raise AlphabetMismatch(f"letter {a!r} not in alphabet {alphabet}")
    n = len(word) + 1
    coeffs = [Matrix.identity(n).tolist()] + [Matrix.zeros(n, n).tolist() for _ in alphabet]
    for i, a in enumerate(word):
        coeffs[1 + alphabet.index(a)][i][i + 1] = Fraction(-1)
    pencil = Pencil(alphabet, tuple(Matrix.from_rows(c, n) for c in coeffs))
    return ALS(pencil, Matrix.unit(n, n - 1), CertFlags("yes", "yes", "yes"))


def scale(f: ALS, mu) -> ALS:
    mu = to_scalar(mu)
    if not mu or f.is_empty:
        return _empty(f.alphabet)
    return ALS(f.A, f.v.scale(mu), f.cert)


def _check_pair(f: ALS, g: ALS):
    _same_alphabet(f.alphabet, g.alphabet)


def add(f: ALS, g: ALS) -> ALS:
    """Sum system of dimension n_f + n_g (upper right block ``-A_f u_f^T u_g``)."""
    _check_pair(f, g)
    if f.is_empty:
        return g
    if g.is_empty:
        return f
    nf, ng = f.dim, g.dim

    def corner(Af: Matrix) -> Matrix:
        # -A_f e_1^T e_1: first column of A_f, negated, in column 1
        return Matrix.from_rows([[-Af[i, 0]] + [Fraction(0)] * (ng - 1) for i in range(nf)], ng)

    top_right = f.A.map(corner)
    A = Pencil.block([[f.A, top_right], [Pencil.zeros(f.alphabet, ng, nf), g.A]])
    return ALS(A, f.v.vstack(g.v))


def mul(f: ALS, g: ALS) -> ALS:
    """Product system of dimension n_f + n_g (upper right block ``-v_f u_g``)."""
    _check_pair(f, g)
    if f.is_empty or g.is_empty:
        return _empty(f.alphabet)
    nf, ng = f.dim, g.dim
    corner = Matrix.from_rows([[-f.v[i, 0]] + [Fraction(0)] * (ng - 1) for i in range(nf)], ng)
    top_right = Pencil.constant(f.alphabet, corner)
    A = Pencil.block([[f.A, top_right], [Pencil.zeros(f.alphabet, ng, nf), g.A]])
    return ALS(A, Matrix.zeros(nf, 1).vstack(g.v))


def std_inverse(h: ALS) -> ALS:
    """Standard inverse ``[[S v, -S A S], [0, u S]]`` of dimension n+1.

    S reverses the order of rows/columns.  The caller is responsible for
    ``h`` representing a nonzero element; only the empty system is rejected.
    """
    if h.is_empty:
        raise InverseOfZero("the empty system represents 0")
    n = h.dim
    alphabet = h.alphabet
    sv = Matrix.column(list(reversed(h.v.flat())))
    first_col = Pencil.constant(alphabet, sv.vstack(Matrix.zeros(1, 1)))
    last_row = Pencil.constant(alphabet, Matrix.unit(n, n - 1, column=False))
    body = Pencil.block([[(-h.A).reversed()], [last_row]])
    A = Pencil.block([[first_col, body]])
    return ALS(A, Matrix.unit(n + 1, n))


def transform(f: ALS, P: Matrix, Q: Matrix) -> ALS:
    """Admissible transformation ``(uQ, PAQ, Pv)``; Q must have first row e_1."""
    n = f.dim
    if P.shape != (n, n) or Q.shape != (n, n):
        raise ValueError(f"transformation matrices must be {n}x{n}")
    if n and Q.row_tuple(0) != Matrix.unit(n, 0, column=False).row_tuple(0):
        raise NotAdmissible("first row of Q must be e_1 (column 1 may not eliminate others)")
    if invert(P) is None or invert(Q) is None:
        raise ValueError("transformation matrices must be invertible")
    return ALS(f.A.transform(P, Q), P @ f.v, f.cert)


def with_alphabet(f: ALS, alphabet: Sequence[str]) -> ALS:
    """Re-express ``f`` over a larger (or reordered) alphabet."""
    alphabet = make_alphabet(alphabet)
    missing = [a for a in letters_used(f.A) if a not in alphabet]
    if missing:
        raise AlphabetMismatch(f"letters {missing} used but not in {alphabet}")
    n = f.dim
    z = Matrix.zeros(n, n)
    coeffs = [f.A.const] + [f.A.letter(a) if a in f.alphabet else z for a in alphabet]
    return ALS(Pencil(alphabet, tuple(coeffs)), f.v, f.cert)


@dataclass(frozen=True)
class Linearization:
    """Bordered pencil ``[[c, u], [v, A]]``; the element is ``c - u A^{-1} v``."""

    L: Pencil

    @property
    def size(self) -> int:
        return self.L.dim

    @property
    def dim(self) -> int:
        return self.size - 1

    @property
    def c(self) -> Pencil:
        return self.L.take([0], [0])

    @property
    def u_row(self) -> Pencil:
        return self.L.take([0], range(1, self.size))

    @property
    def v_col(self) -> Pencil:
        return self.L.take(range(1, self.size), [0])

    @property
    def A(self) -> Pencil:
        r = range(1, self.size)
        return self.L.take(r, r)

    @property
    def pure(self) -> bool:
        return not any(c[0, 0] for c in self.L.coeffs)

    def evaluate(self, point: Mapping[str, Matrix], size: Optional[int] = None) -> Optional[Matrix]:
        """Schur complement at a matrix point, or None where A is singular."""
        m = _point_size(point, size)
        big = evaluate_pencil(self.L, point, m)
        Ab = big[m:, m:]
        if Ab.rows:
            X = solve(Ab, big[m:, :m])
            if X is None:
                return None
            return big[:m, :m] - big[:m, m:] @ X
        return big[:m, :m]


def to_linearization(f: ALS) -> Linearization:
    """Pure linearization ``[[0, u], [-v, A]]`` of size n+1."""
    if f.is_empty:
        raise FreeFieldError("the empty system has no pure linearization")
    n = f.dim
    top = Pencil.block([[Pencil.zeros(f.alphabet, 1, 1),
                         Pencil.constant(f.alphabet, f.u)]])
    bottom = Pencil.block([[Pencil.constant(f.alphabet, -f.v), f.A]])
    return Linearization(Pencil.block([[top], [bottom]]))


def linearization_to_lr(lin: Linearization) -> ALS:
    """ALS of dimension m+1 for the element of a size-m linearization.

    Borders ``L`` to ``At = [[L, b^T], [b, 0]]`` with ``b = [-1, 0, ..., 0]``;
    with ``ut = e_{m+1}`` the element equals ``-ut At^{-1} ut^T``, i.e. the
    linear representation ``(ut, At, -ut^T)``.  Swapping coordinates 1 and
    m+1 on both sides (P = Q = the transposition) moves ``ut`` to ``e_1`` and
    leaves ``v = -e_1``.
    """
    m = lin.size
    alphabet = lin.L.alphabet
    b = Pencil.constant(alphabet, Matrix.row([-1] + [0] * (m - 1)))
    At = Pencil.block([[lin.L, Pencil.block([[b]]).map(lambda c: c.T)],
                       [b, Pencil.zeros(alphabet, 1, 1)]])
    order = [m] + list(range(1, m)) + [0]
    A = At.map(lambda c: c.permute_rows(order).permute_cols(order))
    v = Matrix.unit(m + 1, 0).scale(-1)
    return ALS(A, v)


def _point_size(point: Mapping[str, Matrix], size: Optional[int]) -> int:
    sizes = {M.shape for M in point.values()}
    if len(sizes) > 1:
        raise ValueError(f"matrices in the assignment differ in size: {sorted(sizes)}")
    if sizes:
        (r, c), = sizes
        if r != c:
            raise ValueError("assigned matrices must be square")
        if size is not None and size != r:
            raise ValueError("size does not match the assignment")
        return r
    return size or 1


def evaluate_pencil(p: Pencil, point: Mapping[str, Matrix], m: int) -> Matrix:
    """Substitute matrices into the pencil: ``A_0 (x) I + sum A_l (x) X_l``."""
    rows, cols = p.shape
    terms: List[Tuple[Matrix, Matrix]] = [(p.const, Matrix.identity(m))]
    for a, Al in zip(p.alphabet, p.linear):
        if Al.is_zero():
            continue
        if a not in point:
            raise ValueError(f"no matrix assigned to letter {a!r}")
        terms.append((Al, point[a]))
    z = Fraction(0)
    big = [[z] * (cols * m) for _ in range(rows * m)]
    for Al, X in terms:
        Xd = X.tolist()
        for i in range(rows):
            for j in range(cols):
                c = Al[i, j]
                if not c:
                    continue
                for a in range(m):
                    row = big[i * m + a]
                    xa = Xd[a]
                    for b in range(m):
                        if xa[b]:
                            row[j * m + b] += c * xa[b]
    return Matrix.from_rows(big, cols * m)


def eval_at_matrices(f: ALS, point: Mapping[str, Matrix], size: Optional[int] = None) -> Optional[Matrix]:
    """Evaluate the element at m x m matrices; None if the pencil is singular there."""
    m = _point_size(point, size)
    if f.is_empty:
        return Matrix.zeros(m, m)
    big = evaluate_pencil(f.A, point, m)
    rhs = f.v.kron(Matrix.identity(m))
    S = solve(big, rhs)
    if S is None:
        return None
    return S[:m, :]


def family_values(f: ALS, point: Mapping[str, Matrix], size: Optional[int] = None):
    """Left and right family evaluated at a point: two lists of m x m matrices."""
    m = _point_size(point, size)
    n = f.dim
    big = evaluate_pencil(f.A, point, m)
    inv = invert(big)
    if inv is None:
        return None
    S = inv @ f.v.kron(Matrix.identity(m))
    left = [S[i * m:(i + 1) * m, :] for i in range(n)]
    right = [inv[:m, j * m:(j + 1) * m] for j in range(n)]
    return left, right
