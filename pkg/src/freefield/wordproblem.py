"""Equality of elements: the (T, U) linear system and the comparison pipeline.

If scalar matrices T, U (n_f x n_g) satisfy ``u_f U = 0``, ``T v_g = v_f``
and ``T A_g - A_f U = A_f u_f^T u_g`` then f = g.  For two minimal systems of
the same dimension the converse also holds, so equality of certified
systems reduces to the solvability of one scalar linear system.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from .als import ALS, Linearization, Pencil, alphabet_union, eval_at_matrices, with_alphabet
from .certify import certify
from .compiler import CompileOptions, compile_expr, default_alphabet
from .errors import CertificationRequired
from .expr import Expr, parse
from .linalg import Matrix, solve_affine

__all__ = [
    "TUSystem",
    "Verdict",
    "align",
    "build_tu_system",
    "verify_tu",
    "positive_test",
    "decide_equal",
    "difference_linearization",
    "evaluation_witness",
    "compare_systems",
    "equality_pipeline",
]

EQUAL, NOT_EQUAL, INCONCLUSIVE = "equal", "not_equal", "inconclusive"


@dataclass(frozen=True)
class TUSystem:
    """Scalar system for (T, U); unknowns are T row-major, then U row-major.

    ``matrix``/``rhs`` hold, per coefficient slice (constant part first) and
    per row of f, the n_g equations of ``T A_g - A_f U = A_f u_f^T u_g``
    followed by the equation from ``T v_g = v_f`` (trivially 0 = 0 in the
    letter slices).  ``u_f U = 0`` is kept separately in ``extra``.
    """

    n_f: int
    n_g: int
    d: int
    matrix: Matrix
    rhs: Matrix
    extra: Matrix
    extra_rhs: Matrix

    @property
    def equations(self) -> int:
        return self.matrix.rows

    @property
    def unknowns(self) -> int:
        return self.matrix.cols

    def solve(self) -> Optional[Tuple[Matrix, Matrix]]:
        sol = solve_affine(self.matrix.vstack(self.extra), self.rhs.vstack(self.extra_rhs))
        if sol is None:
            return None
        x = sol[0].flat()
        k = self.n_f * self.n_g
        T = Matrix.from_rows([x[i * self.n_g:(i + 1) * self.n_g] for i in range(self.n_f)], self.n_g)
        U = Matrix.from_rows([x[k + i * self.n_g:k + (i + 1) * self.n_g] for i in range(self.n_f)], self.n_g)
        return T, U


@dataclass(frozen=True)
class Verdict:
    kind: str
    method: str
    certificate: Dict[str, Any] = field(default_factory=dict)

    @property
    def equal(self) -> bool:
        return self.kind == EQUAL


def align(f: ALS, g: ALS) -> Tuple[ALS, ALS]:
    """Re-express both systems over the union of their alphabets."""
    if f.alphabet == g.alphabet:
        return f, g
    ab = alphabet_union(f.alphabet, g.alphabet)
    return with_alphabet(f, ab), with_alphabet(g, ab)


def build_tu_system(f: ALS, g: ALS) -> TUSystem:
    f, g = align(f, g)
    nf, ng = f.dim, g.dim
    if nf == 0:
        raise ValueError("the first system must be nonempty")
    d = len(f.alphabet)
    k = nf * ng
    z = Fraction(0)
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    zero_v = Matrix.zeros(nf, 1)
    for slice_idx in range(d + 1):
        Af, Ag = f.A.coeffs[slice_idx], g.A.coeffs[slice_idx]
        vf = f.v if slice_idx == 0 else zero_v
        vg = g.v if slice_idx == 0 else Matrix.zeros(ng, 1)
        for i in range(nf):
            for j in range(ng):
                row = [z] * (2 * k)
                for m in range(ng):
                    row[i * ng + m] += Ag[m, j]
                for m in range(nf):
                    row[k + m * ng + j] -= Af[i, m]
                rows.append(row)
                rhs.append(Af[i, 0] if j == 0 else z)
            row = [z] * (2 * k)
            for m in range(ng):
                row[i * ng + m] += vg[m, 0]
            rows.append(row)
            rhs.append(vf[i, 0])
    extra = []
    for j in range(ng):
        row = [z] * (2 * k)
        row[k + j] = Fraction(1)
        extra.append(row)
    return TUSystem(
        nf, ng, d,
        Matrix.from_rows(rows, 2 * k), Matrix.column(rhs),
        Matrix.from_rows(extra, 2 * k), Matrix.zeros(ng, 1),
    )


def verify_tu(f: ALS, g: ALS, T: Matrix, U: Matrix) -> bool:
    """Check the three matrix equations exactly."""
    f, g = align(f, g)
    if T.shape != (f.dim, g.dim) or U.shape != (f.dim, g.dim):
        return False
    if not (f.u @ U).is_zero() or T @ g.v != f.v:
        return False
    corner = lambda Af: Af @ f.u.T @ g.u
    return all(T @ Ag - Af @ U == corner(Af) for Af, Ag in zip(f.A.coeffs, g.A.coeffs))


def _orient(first: ALS, second: ALS, label: str) -> Optional[Dict[str, Any]]:
    if first.is_empty:
        return None
    sol = build_tu_system(first, second).solve()
    if sol is None:
        return None
    T, U = sol
    if not verify_tu(first, second, T, U):
        raise AssertionError("solver returned a (T, U) violating the equations")
    return {"orientation": label, "T": T, "U": U}


def positive_test(f: ALS, g: ALS) -> Verdict:
    """Equal if a (T, U) exists in either orientation, else Inconclusive."""
    f, g = align(f, g)
    if f.is_empty and g.is_empty:
        return Verdict(EQUAL, "positive_test", {"reason": "both systems are empty"})
    for first, second, label in ((f, g, "f,g"), (g, f, "g,f")):
        cert = _orient(first, second, label)
        if cert is not None:
            return Verdict(EQUAL, "positive_test", cert)
    return Verdict(INCONCLUSIVE, "positive_test")


def decide_equal(f: ALS, g: ALS) -> Verdict:
    """Decide equality of two certified-minimal systems."""
    if not (f.cert.is_minimal and g.cert.is_minimal):
        raise CertificationRequired(
            "decide_equal needs certified-minimal systems; use the equality pipeline"
        )
    f, g = align(f, g)
    if f.dim != g.dim:
        return Verdict(NOT_EQUAL, "rank", {"rank_f": f.dim, "rank_g": g.dim})
    if f.is_empty:
        return Verdict(EQUAL, "theorem", {"reason": "both systems are empty"})
    cert = _orient(f, g, "f,g")
    if cert is None:
        return Verdict(NOT_EQUAL, "theorem", {"reason": "no (T, U) exists for minimal systems"})
    return Verdict(EQUAL, "theorem", cert)


def difference_linearization(f: ALS, g: ALS) -> Linearization:
    """Bordered pencil ``[[0, u_f, u_g], [v_f, A_f, 0], [v_g, 0, -A_g]]``.

    Its Schur complement ``-u_f A_f^{-1} v_f + u_g A_g^{-1} v_g`` is g - f.
    """
    f, g = align(f, g)
    ab = f.alphabet
    nf, ng = f.dim, g.dim
    P = Pencil.constant
    L = Pencil.block([
        [Pencil.zeros(ab, 1, 1), P(ab, f.u if nf else Matrix.zeros(1, 0)), P(ab, g.u if ng else Matrix.zeros(1, 0))],
        [P(ab, f.v), f.A, Pencil.zeros(ab, nf, ng)],
        [P(ab, g.v), Pencil.zeros(ab, ng, nf), -g.A],
    ])
    return Linearization(L)


def _random_matrix(rng: random.Random, m: int) -> Matrix:
    return Matrix([[rng.randint(-3, 3) for _ in range(m)] for _ in range(m)])


def evaluation_witness(f: ALS, g: ALS, seed=0, trials: int = 20, retries: int = 20) -> Optional[Dict[str, Any]]:
    """Search random 2x2 / 3x3 integer points where both are defined and differ."""
    f, g = align(f, g)
    for trial in range(trials):
        rng = random.Random(f"{seed}:{trial}")
        m = 2 if trial % 2 == 0 else 3
        for _ in range(retries):
            point = {a: _random_matrix(rng, m) for a in f.alphabet}
            a = eval_at_matrices(f, point, m)
            b = eval_at_matrices(g, point, m) if a is not None else None
            if a is None or b is None:
                continue
            if a != b:
                return {"trial": trial, "size": m, "point": point, "f": a, "g": b}
            break
    return None


def compare_systems(f: ALS, g: ALS, seed=0, trials: int = 20,
                    fallback: Sequence[Tuple[ALS, ALS]] = (), extended: bool = False) -> Verdict:
    """Certify if possible and decide; otherwise positive test, then evaluate.

    With ``extended`` the inverse and evaluation certification routes are
    tried as well.
    """
    f, g = align(f, g)
    cf = certify(f, inverse=extended, evaluation=extended, seed=seed)
    cg = certify(g, inverse=extended, evaluation=extended, seed=seed) if cf is not None else None
    if cf is not None and cg is not None:
        return decide_equal(cf, cg)
    for a, b in ((f, g),) + tuple(fallback):
        v = positive_test(a, b)
        if v.equal:
            return v
    wit = evaluation_witness(f, g, seed, trials)
    if wit is not None:
        return Verdict(NOT_EQUAL, "witness", wit)
    return Verdict(INCONCLUSIVE, "witness", {"trials": trials})


def equality_pipeline(e1: Union[Expr, str], e2: Union[Expr, str], seed=0, trials: int = 20,
                      extended: bool = False) -> Verdict:
    """Compile both expressions (minimizing where regular) and compare."""
    if isinstance(e1, str):
        e1 = parse(e1)
    if isinstance(e2, str):
        e2 = parse(e2)
    ab = default_alphabet(e1, e2)
    opts = CompileOptions(minimize=True, alphabet=ab, certify_inverse=extended)
    f = compile_expr(e1, opts)
    g = compile_expr(e2, opts)
    plain = (
        compile_expr(e1, CompileOptions(alphabet=ab)),
        compile_expr(e2, CompileOptions(alphabet=ab)),
    )
    return compare_systems(f, g, seed, trials, fallback=(plain,), extended=extended)
