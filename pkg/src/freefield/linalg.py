"""Dense exact linear algebra over the rationals.

Every matrix here is an immutable grid of :class:`fractions.Fraction`.
Elimination uses the first nonzero entry in a column as pivot (lowest row
index wins), so results are reproducible run to run.
"""

from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

__all__ = [
    "Matrix",
    "to_scalar",
    "format_scalar",
    "rref",
    "rank",
    "solve_affine",
    "nullspace",
    "invert",
    "solve",
    "independent_rows",
    "complete_basis",
]


def to_scalar(x) -> Fraction:
    """Convert ints, Fractions and "p/q" strings to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if "." in s or "e" in s.lower():
            raise ValueError(f"not an exact rational: {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")


def format_scalar(x: Fraction) -> str:
    return str(x)


class Matrix:
    """Immutable dense matrix with Fraction entries."""

    __slots__ = ("rows", "cols", "_data", "_hash", "_sparse")

    def __init__(self, data: Iterable[Iterable] = (), cols: Optional[int] = None):
        grid = tuple(tuple(to_scalar(x) for x in row) for row in data)
        if cols is None:
            cols = len(grid[0]) if grid else 0
        for row in grid:
            if len(row) != cols:
                raise ValueError("ragged matrix data")
        self.rows = len(grid)
        self.cols = cols
        self._data = grid
        self._hash = None
        self._sparse = None

    @classmethod
    def _raw(cls, grid, rows: int, cols: int) -> "Matrix":
        m = cls.__new__(cls)
        m.rows = rows
        m.cols = cols
        m._data = grid
        m._hash = None
        m._sparse = None
        return m

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        z = Fraction(0)
        return cls._raw(tuple((z,) * cols for _ in range(rows)), rows, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        one, z = Fraction(1), Fraction(0)
        return cls._raw(
            tuple(tuple(one if i == j else z for j in range(n)) for i in range(n)), n, n
        )

    @classmethod
    def unit(cls, n: int, i: int, column: bool = True) -> "Matrix":
        """Standard basis vector e_i (0-based) as column (default) or row."""
        vals = [0] * n
        vals[i] = 1
        if column:
            return cls([[x] for x in vals], cols=1)
        return cls([vals])

    @classmethod
    def column(cls, values: Sequence) -> "Matrix":
        return cls([[x] for x in values], cols=1)

    @classmethod
    def row(cls, values: Sequence) -> "Matrix":
        values = list(values)
        return cls([values], cols=len(values))

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Fraction]], cols: int) -> "Matrix":
        return cls._raw(tuple(tuple(r) for r in rows), len(rows), cols)

    @classmethod
    def block(cls, blocks: Sequence[Sequence["Matrix"]]) -> "Matrix":
        """Assemble a block matrix; blocks in a block row share their height."""
        out: List[Tuple[Fraction, ...]] = []
        width = None
        for brow in blocks:
            h = brow[0].rows
            for b in brow:
                if b.rows != h:
                    raise ValueError("block heights differ")
            w = sum(b.cols for b in brow)
            if width is None:
                width = w
            elif w != width:
                raise ValueError("block widths differ")
            for i in range(h):
                row: Tuple[Fraction, ...] = ()
                for b in brow:
                    row += b._data[i]
                out.append(row)
        return cls._raw(tuple(out), len(out), width or 0)

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def tolist(self) -> List[List[Fraction]]:
        return [list(r) for r in self._data]

    def row_tuple(self, i: int) -> Tuple[Fraction, ...]:
        return self._data[i]

    def col_tuple(self, j: int) -> Tuple[Fraction, ...]:
        return tuple(r[j] for r in self._data)

    def __getitem__(self, idx):
        i, j = idx
        if isinstance(i, slice) or isinstance(j, slice):
            ri = range(*i.indices(self.rows)) if isinstance(i, slice) else [i]
            cj = range(*j.indices(self.cols)) if isinstance(j, slice) else [j]
            return Matrix._raw(
                tuple(tuple(self._data[a][b] for b in cj) for a in ri), len(ri), len(cj)
            )
        return self._data[i][j]

    def take(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix._raw(
            tuple(tuple(self._data[a][b] for b in cols) for a in rows), len(rows), len(cols)
        )

    def with_entry(self, i: int, j: int, value) -> "Matrix":
        data = [list(r) for r in self._data]
        data[i][j] = to_scalar(value)
        return Matrix.from_rows(data, self.cols)

    @property
    def T(self) -> "Matrix":
        if not self.rows:
            return Matrix.zeros(self.cols, 0)
        return Matrix._raw(tuple(zip(*self._data)), self.cols, self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rows, self.cols, self._data))
        return self._hash

    def _check_same(self, other: "Matrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.rows, self.cols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        return Matrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)),
            self.rows, self.cols,
        )

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self._data), self.rows, self.cols)

    def scale(self, c) -> "Matrix":
        c = to_scalar(c)
        return Matrix._raw(tuple(tuple(c * a for a in r) for r in self._data), self.rows, self.cols)

    def __mul__(self, c) -> "Matrix":
        if isinstance(c, Matrix):
            return self @ c
        return self.scale(c)

    __rmul__ = scale

    def _sparse_rows(self) -> List[Dict[int, Fraction]]:
        if self._sparse is None:
            self._sparse = [{k: a for k, a in enumerate(r) if a} for r in self._data]
        return self._sparse

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        z = Fraction(0)
        # pencils are sparse: multiply only nonzero pairs
        sparse_cols = [list(c.items()) for c in other.T._sparse_rows()]
        out = []
        empty = (z,) * other.cols
        for rd in self._sparse_rows():
            if not rd:
                out.append(empty)
                continue
            out.append(tuple(
                sum([rd[k] * c for k, c in sc if k in rd], z)
                for sc in sparse_cols
            ))
        return Matrix._raw(tuple(out), self.rows, other.cols)

    def is_zero(self) -> bool:
        return not any(a for r in self._data for a in r)

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == Matrix.identity(self.rows)

    def kron(self, other: "Matrix") -> "Matrix":
        out = []
        for r in self._data:
            for orow in other._data:
                row: List[Fraction] = []
                for a in r:
                    row.extend(a * b for b in orow)
                out.append(tuple(row))
        return Matrix._raw(tuple(out), self.rows * other.rows, self.cols * other.cols)

    def hstack(self, *others: "Matrix") -> "Matrix":
        return Matrix.block([[self, *others]])

    def vstack(self, *others: "Matrix") -> "Matrix":
        return Matrix.block([[self], *[[o] for o in others]])

    def permute_rows(self, order: Sequence[int]) -> "Matrix":
        return Matrix._raw(tuple(self._data[i] for i in order), self.rows, self.cols)

    def permute_cols(self, order: Sequence[int]) -> "Matrix":
        return Matrix._raw(
            tuple(tuple(r[j] for j in order) for r in self._data), self.rows, len(order)
        )

    def reversed(self) -> "Matrix":
        """Sigma @ self @ Sigma, where Sigma reverses the order."""
        return Matrix._raw(
            tuple(tuple(reversed(r)) for r in reversed(self._data)), self.rows, self.cols
        )

    def flat(self) -> List[Fraction]:
        return [a for r in self._data for a in r]

    def __repr__(self) -> str:
        return f"Matrix({[[str(a) for a in r] for r in self._data]})"

    def __str__(self) -> str:
        if not self.rows or not self.cols:
            return f"[{self.rows}x{self.cols}]"
        cells = [[str(a) if a else "." for a in r] for r in self._data]
        w = max(len(c) for r in cells for c in r)
        return "\n".join("[" + " ".join(c.rjust(w) for c in r) + "]" for r in cells)


def _rref_rows(rows: List[List[Fraction]], ncols: int, stop_col: Optional[int] = None):
    """In-place reduced row echelon form of a list of rows.

    Pivot search is restricted to columns < stop_col (default: all).
    Returns the pivot column list.
    """
    if stop_col is None:
        stop_col = ncols
    pivots: List[int] = []
    r = 0
    nrows = len(rows)
    for c in range(stop_col):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        p = prow[c]
        if p != 1:
            inv = 1 / p
            prow = [a * inv if a else a for a in prow]
            rows[r] = prow
        support = [k for k in range(c, ncols) if prow[k]]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if not f:
                continue
            for k in support:
                row[k] -= f * prow[k]
        pivots.append(c)
        r += 1
    return pivots


def rref(M: Matrix) -> Tuple[Matrix, List[int], int]:
    """Reduced row echelon form, pivot columns and rank of ``M``."""
    rows = M.tolist()
    pivots = _rref_rows(rows, M.cols)
    return Matrix.from_rows(rows, M.cols), pivots, len(pivots)


def rank(M: Matrix) -> int:
    if M.rows > M.cols:
        M = M.T
    rows = M.tolist()
    return len(_rref_rows(rows, M.cols))


def _null_from_rref(rows, pivots, ncols) -> List[Matrix]:
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        vec = [Fraction(0)] * ncols
        vec[f] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -rows[i][f]
        basis.append(Matrix.column(vec))
    return basis


def nullspace(A: Matrix) -> List[Matrix]:
    """Basis of the right kernel of ``A`` as column vectors."""
    rows = A.tolist()
    pivots = _rref_rows(rows, A.cols)
    return _null_from_rref(rows, pivots, A.cols)


def solve_affine(A: Matrix, b: Matrix) -> Optional[Tuple[Matrix, List[Matrix]]]:
    """Solve ``A x = b`` exactly.

    Returns ``None`` if the system is inconsistent, otherwise a particular
    solution (free variables set to zero) and a basis of ``ker A``.
    """
    if b.cols != 1 or b.rows != A.rows:
        raise ValueError(f"bad right-hand side {b.shape} for system {A.shape}")
    n = A.cols
    rows = [list(r) + [bi[0]] for r, bi in zip(A._data, b._data)]
    pivots = _rref_rows(rows, n + 1, stop_col=n)
    for i in range(len(pivots), len(rows)):
        if rows[i][n]:
            return None
    x = [Fraction(0)] * n
    for i, pc in enumerate(pivots):
        x[pc] = rows[i][n]
    return Matrix.column(x), _null_from_rref(rows, pivots, n)


def solve(A: Matrix, B: Matrix) -> Optional[Matrix]:
    """Unique solution X of ``A X = B`` for square invertible ``A``, else None."""
    if A.rows != A.cols:
        raise ValueError("solve expects a square coefficient matrix")
    if B.rows != A.rows:
        raise ValueError("right-hand side height mismatch")
    n = A.cols
    rows = [list(r) + list(s) for r, s in zip(A._data, B._data)]
    pivots = _rref_rows(rows, n + B.cols, stop_col=n)
    if len(pivots) < n:
        return None
    return Matrix.from_rows([r[n:] for r in rows], B.cols)


def invert(M: Matrix) -> Optional[Matrix]:
    """Inverse of a square matrix, or None when singular."""
    if M.rows != M.cols:
        raise ValueError(f"cannot invert non-square {M.shape} matrix")
    return solve(M, Matrix.identity(M.rows))


def independent_rows(M: Matrix) -> List[int]:
    """Indices of a maximal set of linearly independent rows (greedy, in order)."""
    _, pivots, _ = rref(M.T)
    return pivots


def complete_basis(vectors: Sequence[Matrix], n: int, fixed_last: Optional[Matrix] = None) -> Matrix:
    """Columns ``vectors``, then standard unit vectors, then ``fixed_last``.

    Unit vectors are taken greedily in index order whenever they increase the
    rank, so the result is an invertible n x n matrix provided the given
    vectors (with ``fixed_last``) are independent.
    """
    cols = list(vectors)
    tail = [fixed_last] if fixed_last is not None else []
    need = n - len(cols) - len(tail)
    current = cols + tail
    for i in range(n):
        if need == 0:
            break
        e = Matrix.unit(n, i)
        trial = Matrix.block([current + [e]]) if current else e
        if rank(trial) == len(current) + 1:
            cols.append(e)
            current = cols + tail
            need -= 1
    out = Matrix.block([cols + tail])
    if out.shape != (n, n) or rank(out) != n:
        raise ValueError("vectors are not linearly independent")
    return out
