"""Reference data and independent oracles shared by the tests.

The hand-coded systems are reference systems typed in by hand.  The
oracles never touch linear systems: polynomials are expanded term by term
and expressions are evaluated directly on matrices.
"""

import random
from fractions import Fraction

from freefield.als import CertFlags, als_from_rows
from freefield.expr import Add, Const, Inv, Letter, Mul, Neg, Sub, expand
from freefield.linalg import Matrix

MIN = CertFlags("yes")

XY = ("x", "y")
XYZ = ("x", "y", "z")


def anticommutator(cert=MIN):
    return als_from_rows(XY, [
        ["1", "-x", "-y", "."],
        [".", "1", ".", "-y"],
        [".", ".", "1", "-x"],
        [".", ".", ".", "1"],
    ], [0, 0, 0, 1], cert)


def anticommutator_inverse(cert=MIN):
    return als_from_rows(XY, [
        ["x", "-1", "."],
        ["y", ".", "-1"],
        [".", "y", "x"],
    ], [0, 0, 1], cert)


def anticommutator_Lprime():
    """5x5 pure linearization obtained by permuting columns and negating."""
    return [
        [".", ".", ".", ".", "1"],
        [".", ".", "y", "x", "-1"],
        [".", "y", ".", "-1", "."],
        [".", "x", "-1", ".", "."],
        ["1", "-1", ".", ".", "."],
    ]


def anticommutator_L():
    """Minimal 3x3 pure linearization of xy + yx."""
    return [[".", "y", "x"], ["y", ".", "-1"], ["x", "-1", "."]]


def xyz_inverse(cert=MIN):
    """(xyz)^{-1} = z^{-1} y^{-1} x^{-1}."""
    return als_from_rows(XYZ, [["z", "-1", "."], [".", "y", "-1"], [".", ".", "x"]], [0, 0, 1], cert)


def xyz_inverse_ratop():
    """Dimension-4 system for xyz, a reordering of the standard inverse of (xyz)^{-1}."""
    return als_from_rows(XYZ, [
        [".", "z", "-1", "."],
        [".", ".", "y", "-1"],
        ["-1", ".", ".", "x"],
        [".", "1", ".", "."],
    ], [0, 0, 0, 1])


def xy_zinv(cert=MIN):
    """x y z^{-1}."""
    return als_from_rows(XYZ, [["1", "-x", "."], [".", "1", "-y"], [".", ".", "z"]], [0, 0, 1], cert)


def z_yinv_xinv(cert=MIN):
    """z y^{-1} x^{-1}."""
    return als_from_rows(XYZ, [["1", "-z", "."], [".", "y", "-1"], [".", ".", "x"]], [0, 0, 1], cert)


def one_minus_x():
    return als_from_rows(("x",), [["1", "x - 1"], [".", "1"]], [0, 1])


def path_f():
    """x^{-1} as the 1x1 system [x] s = [1]."""
    return als_from_rows(("x", "z"), [["x"]], [1])


def path_g():
    """x^{-1} with a spurious second coordinate."""
    return als_from_rows(("x", "z"), [["x", "-z"], [".", "1"]], [1, 0])


def path_difference():
    return als_from_rows(("x", "z"), [["x", "-x", "."], [".", "x", "-z"], [".", ".", "1"]], [1, -1, 0])


def nine_dim_zero():
    """x - x y y^{-1} built by the rational operations (dimension 9)."""
    rows = [
        ["1", "-x", "-1", ".", ".", ".", ".", ".", "."],
        ["0", "1", ".", ".", ".", ".", ".", ".", "."],
        [".", ".", "1", "-x", ".", ".", ".", ".", "."],
        [".", ".", "0", "1", "-1", ".", ".", ".", "."],
        [".", ".", ".", ".", "0", "1", "-y", ".", "."],
        [".", ".", ".", ".", "-1", "0", "1", ".", "."],
        [".", ".", ".", ".", "0", "1", "0", "-1", "."],
        [".", ".", ".", ".", ".", ".", ".", "1", "-y"],
        [".", ".", ".", ".", ".", ".", ".", "0", "1"],
    ]
    return als_from_rows(XY, rows, [0, 1, 0, 0, 0, 0, 0, 0, -1])


def one_plus_xinv(cert=MIN):
    """1 + x^{-1}: 1 lies in both families, yet the inverse has rank 2."""
    return als_from_rows(("x",), [["1", "-1 - x"], [".", "x"]], [0, 1], cert)


# -- oracles -----------------------------------------------------------------

def random_matrix(rng: random.Random, m: int, lo=-3, hi=3) -> Matrix:
    return Matrix([[rng.randint(lo, hi) for _ in range(m)] for _ in range(m)])


def random_point(rng, alphabet, m):
    return {a: random_matrix(rng, m) for a in alphabet}


def poly_coeff(poly, word) -> Fraction:
    return poly.get(tuple(word), Fraction(0))


def random_poly_expr(rng: random.Random, depth: int, alphabet=XY):
    """Random inverse-free expression tree of at most the given depth."""
    if depth <= 1 or rng.random() < 0.25:
        if rng.random() < 0.75:
            return Letter(rng.choice(alphabet))
        return Const(Fraction(rng.randint(-2, 3)))
    kind = rng.choice(["add", "sub", "mul", "mul", "neg"])
    if kind == "neg":
        return Neg(random_poly_expr(rng, depth - 1, alphabet))
    left = random_poly_expr(rng, depth - 1, alphabet)
    right = random_poly_expr(rng, depth - 1, alphabet)
    return {"add": Add, "sub": Sub, "mul": Mul}[kind](left, right)


def random_rational_expr(rng: random.Random, depth: int, alphabet=XY):
    """Random expression that may contain inverses."""
    if depth <= 1 or rng.random() < 0.2:
        if rng.random() < 0.8:
            return Letter(rng.choice(alphabet))
        return Const(Fraction(rng.randint(1, 3)))
    kind = rng.choice(["add", "sub", "mul", "mul", "neg", "inv", "inv"])
    if kind == "neg":
        return Neg(random_rational_expr(rng, depth - 1, alphabet))
    if kind == "inv":
        return Inv(random_rational_expr(rng, depth - 1, alphabet))
    left = random_rational_expr(rng, depth - 1, alphabet)
    right = random_rational_expr(rng, depth - 1, alphabet)
    return {"add": Add, "sub": Sub, "mul": Mul}[kind](left, right)


def rewrite_equal(rng: random.Random, e):
    """An expression with the same polynomial, built differently."""
    choice = rng.randrange(4)
    if choice == 0:
        return Add(Const(Fraction(0)), e)
    if choice == 1:
        return Sub(Add(e, e), e)
    if choice == 2:
        return Mul(Const(Fraction(1)), e)
    if isinstance(e, Mul):
        # distribute one level when possible
        if isinstance(e.left, Add):
            return Add(Mul(e.left.left, e.right), Mul(e.left.right, e.right))
        if isinstance(e.right, Add):
            return Add(Mul(e.left, e.right.left), Mul(e.left, e.right.right))
    return Neg(Neg(e))


def poly_equal(e1, e2) -> bool:
    return expand(e1) == expand(e2)
