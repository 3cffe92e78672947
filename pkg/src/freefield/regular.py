"""Regular elements: proper linear systems, coefficients, Hankel rank, minimization.

An ALS is regular when its constant coefficient matrix ``A_0`` is
invertible.  Multiplying by ``A_0^{-1}`` gives a proper linear system
``s = v + Q s`` with ``Q = sum_l mu(x_l) x_l``, so the element is the
recognizable series with coefficients ``(f, w) = e_1 mu(w) v``.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from .als import ALS, CertFlags, Pencil, _empty
from .errors import AlphabetMismatch, NotRegular
from .inverse import detect_flags
from .linalg import Matrix, independent_rows, invert, rank

__all__ = [
    "PLS",
    "Families",
    "HankelSlice",
    "parse_word",
    "words_upto",
    "is_regular",
    "to_pls",
    "from_pls",
    "coeff",
    "truncated_families",
    "minimize_regular",
    "is_zero_regular",
    "is_polynomial",
    "hankel_slice",
    "hankel_rank",
]

Word = Tuple[str, ...]


@dataclass(frozen=True)
class PLS:
    """Proper linear system ``s = v + Q s``; ``Q`` has zero constant part."""

    Q: Pencil
    v: Matrix

    def __post_init__(self):
        if not self.Q.const.is_zero():
            raise ValueError("a proper linear system has no constant part in Q")

    @property
    def alphabet(self):
        return self.Q.alphabet

    @property
    def dim(self) -> int:
        return self.Q.dim

    @property
    def mu(self) -> Tuple[Matrix, ...]:
        return self.Q.linear


@dataclass(frozen=True)
class Families:
    """Truncated controllability/observability data.

    ``ctrl`` has the vectors ``mu(w) v`` as columns, ``obs`` the vectors
    ``u mu(w)`` as rows; only words whose vector raised the rank are kept.
    """

    ctrl: Matrix
    obs: Matrix
    ctrl_words: Tuple[Word, ...]
    obs_words: Tuple[Word, ...]


@dataclass(frozen=True)
class HankelSlice:
    row_words: Tuple[Word, ...]
    col_words: Tuple[Word, ...]
    entries: Matrix


def parse_word(text: Union[str, Sequence[str]], alphabet: Sequence[str]) -> Word:
    """Turn ``"xy"``, ``"x y"``, ``"x,y"`` or a letter sequence into a word tuple.

    The empty string and ``"1"`` denote the empty word.
    """
    if not isinstance(text, str):
        word = tuple(text)
    else:
        s = text.strip()
        if s in ("", "1"):
            return ()
        if " " in s or "," in s:
            word = tuple(p for p in s.replace(",", " ").split() if p)
        elif s in alphabet:
            word = (s,)
        else:
            word = tuple(s)
    for a in word:
        if a not in alphabet:
            raise AlphabetMismatch(f"letter {a!r} not in alphabet {tuple(alphabet)}")
    return word


def words_upto(alphabet: Sequence[str], max_len: int) -> Iterable[Word]:
    """All words of length <= max_len, by length, then in alphabet order."""
    level: List[Word] = [()]
    for _ in range(max_len + 1):
        yield from level
        level = [w + (a,) for w in level for a in alphabet]


def is_regular(f: ALS) -> bool:
    return f.is_empty or invert(f.A.const) is not None


def to_pls(f: ALS) -> PLS:
    """Left-multiply by ``A_0^{-1}``: ``Q = -A_0^{-1} A_lin``, ``v = A_0^{-1} v``."""
    if f.is_empty:
        return PLS(Pencil.zeros(f.alphabet, 0), f.v)
    inv = invert(f.A.const)
    if inv is None:
        raise NotRegular("constant coefficient matrix is singular")
    n = f.dim
    coeffs = (Matrix.zeros(n, n),) + tuple(-(inv @ m) for m in f.A.linear)
    return PLS(Pencil(f.alphabet, coeffs), inv @ f.v)


def from_pls(p: PLS, cert: CertFlags = CertFlags()) -> ALS:
    """The ALS ``(e_1, I - Q, v)``."""
    if p.dim == 0:
        return _empty(p.alphabet)
    A = Pencil.constant(p.alphabet, Matrix.identity(p.dim)) + (-p.Q)
    return ALS(A, p.v, cert)


def _as_pls(f: Union[ALS, PLS]) -> PLS:
    return f if isinstance(f, PLS) else to_pls(f)


def coeff(f: Union[ALS, PLS], word) -> Fraction:
    """Coefficient ``(f, w) = e_1 mu(w_1) ... mu(w_k) v``."""
    p = _as_pls(f)
    w = parse_word(word, p.alphabet)
    if p.dim == 0:
        return Fraction(0)
    vec = p.v
    for a in reversed(w):
        vec = p.Q.letter(a) @ vec
    return vec[0, 0]


class _Span:
    """Incrementally maintained echelon basis of a subspace of K^n."""

    def __init__(self, n: int):
        self.n = n
        self.rows: List[Tuple[int, List[Fraction]]] = []

    def add(self, vec: Sequence[Fraction]) -> bool:
        r = list(vec)
        for piv, row in self.rows:
            c = r[piv]
            if c:
                for k in range(self.n):
                    if row[k]:
                        r[k] -= c * row[k]
        piv = next((k for k in range(self.n) if r[k]), None)
        if piv is None:
            return False
        inv = 1 / r[piv]
        r = [x * inv for x in r]
        for _, row in self.rows:
            c = row[piv]
            if c:
                for k in range(self.n):
                    if r[k]:
                        row[k] -= c * r[k]
        self.rows.append((piv, r))
        return True

    def __len__(self):
        return len(self.rows)


def _closure(start: Matrix, step, n: int, alphabet) -> List[Tuple[Word, Matrix]]:
    """Breadth-first spanning set of the smallest ``step``-invariant space
    containing ``start``; only rank-raising vectors are extended."""
    span = _Span(n)
    kept: List[Tuple[Word, Matrix]] = []
    frontier = [((), start)]
    while frontier and len(kept) < n:
        nxt = []
        for w, vec in frontier:
            if len(kept) == n:
                break
            if span.add(vec.flat()):
                kept.append((w, vec))
                nxt.extend((w + (a,), step(vec, a)) for a in alphabet)
        frontier = nxt
    return kept


def truncated_families(f: Union[ALS, PLS]) -> Families:
    p = _as_pls(f)
    n = p.dim
    if n == 0:
        return Families(Matrix.zeros(0, 0), Matrix.zeros(0, 0), (), ())
    col = _closure(p.v, lambda vec, a: p.Q.letter(a) @ vec, n, p.alphabet)
    e1 = Matrix.unit(n, 0, column=False)
    # words read left to right: u mu(w1) mu(w2) ...
    row = _closure(e1, lambda vec, a: vec @ p.Q.letter(a), n, p.alphabet)
    ctrl = Matrix.block([[v for _, v in col]]) if col else Matrix.zeros(n, 0)
    obs = Matrix.block([[r] for _, r in row]) if row else Matrix.zeros(0, n)
    return Families(ctrl, obs, tuple(w[::-1] for w, _ in col), tuple(w for w, _ in row))


def _reduce(alpha: Matrix, mus: Sequence[Matrix], beta: Matrix, alphabet):
    """Reachable restriction followed by the observable quotient."""
    n = beta.rows
    col = _closure(beta, lambda vec, a: mus[alphabet.index(a)] @ vec, n, alphabet)
    if not col:
        return None
    R = Matrix.block([[v for _, v in col]])
    idx = independent_rows(R)
    RI_inv = invert(R.take(idx, range(R.cols)))
    mus = [RI_inv @ (m @ R).take(idx, range(R.cols)) for m in mus]
    beta = RI_inv @ beta.take(idx, [0])
    alpha = alpha @ R
    r = R.cols

    row = _closure(alpha, lambda vec, a: vec @ mus[alphabet.index(a)], r, alphabet)
    if not row:
        return None
    O = Matrix.block([[w] for _, w in row])
    jdx = independent_rows(O.T)
    OJ_inv = invert(O.take(range(O.rows), jdx))
    mus = [(O @ m).take(range(O.rows), jdx) @ OJ_inv for m in mus]
    beta = O @ beta
    alpha = Matrix.unit(O.rows, 0, column=False)
    return alpha, mus, beta


def minimize_regular(f: ALS) -> ALS:
    """Certified-minimal ALS (``A_0 = I``) of the element of a regular ALS."""
    p = to_pls(f)
    if p.dim == 0:
        return _empty(f.alphabet)
    e1 = Matrix.unit(p.dim, 0, column=False)
    red = _reduce(e1, p.mu, p.v, f.alphabet)
    if red is None:
        return _empty(f.alphabet)
    _, mus, beta = red
    n = beta.rows
    A = Pencil(f.alphabet, (Matrix.identity(n),) + tuple(-m for m in mus))
    g = ALS(A, beta, CertFlags("yes"))
    return g.with_cert(detect_flags(g))


def is_zero_regular(f: ALS) -> bool:
    """True iff every coefficient vanishes (words up to length n-1 suffice)."""
    p = to_pls(f)
    if p.dim == 0:
        return True
    e1 = Matrix.unit(p.dim, 0, column=False)
    rows = _closure(e1, lambda vec, a: vec @ p.Q.letter(a), p.dim, p.alphabet)
    return all(not (r @ p.v)[0, 0] for _, r in rows)


def is_polynomial(f: ALS) -> bool:
    """A regular element is a polynomial iff the minimal ``Q`` is nilpotent."""
    m = minimize_regular(f)
    if m.is_empty:
        return True
    mus = to_pls(m).mu
    n = m.dim
    basis = [Matrix.unit(n, i) for i in range(n)]
    for _ in range(n):
        span = _Span(n)
        nxt = []
        for b in basis:
            for mu in mus:
                c = mu @ b
                if span.add(c.flat()):
                    nxt.append(c)
        basis = nxt
        if not basis:
            return True
    return False


def hankel_slice(f: Union[ALS, PLS], row_words: Sequence[Word], col_words: Sequence[Word]) -> HankelSlice:
    p = _as_pls(f)
    rows = tuple(tuple(w) for w in row_words)
    cols = tuple(tuple(w) for w in col_words)
    entries = [[coeff(p, r + c) for c in cols] for r in rows]
    return HankelSlice(rows, cols, Matrix.from_rows(entries, len(cols)))


def _prefix_vectors(p: PLS, max_len: int, left: bool) -> List[Matrix]:
    # words whose vector vanishes are dropped with all their extensions:
    # their Hankel rows (columns) are zero
    n = p.dim
    start = Matrix.unit(n, 0, column=False) if left else p.v
    out = []
    level = [start]
    for _ in range(max_len + 1):
        level = [vec for vec in level if not vec.is_zero()]
        out.extend(level)
        if left:
            level = [vec @ p.Q.letter(a) for vec in level for a in p.alphabet]
        else:
            level = [p.Q.letter(a) @ vec for vec in level for a in p.alphabet]
    return out


def hankel_rank(f: Union[ALS, PLS], max_len: Optional[int] = None) -> int:
    """Rank of the Hankel block over all words of length <= max_len.

    Computed from the coefficient values ``(u mu(w1)) (mu(w2) v)`` without the
    spanning-set pruning used by minimization.  ``max_len`` defaults to n-1.
    """
    p = _as_pls(f)
    n = p.dim
    if n == 0:
        return 0
    if max_len is None:
        max_len = n - 1
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    lefts = _prefix_vectors(p, max_len, left=True)
    rights = _prefix_vectors(p, max_len, left=False)
    if not lefts or not rights:
        return 0
    H = [[(l @ r)[0, 0] for r in rights] for l in lefts]
    return rank(Matrix.from_rows(H, len(rights)))
