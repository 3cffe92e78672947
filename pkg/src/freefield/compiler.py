"""Compile expression trees to admissible linear systems."""

from dataclasses import dataclass
from typing import Optional, Sequence, Union

from .als import ALS, add, make_alphabet, mk_monomial, mk_scalar, mul, scale, std_inverse
from .certify import certify
from .errors import AlphabetMismatch, InverseOfZero
from .expr import Add, Const, Expr, Inv, Letter, Mul, Neg, Sub, letters, parse
from .inverse import minimal_inverse
from .regular import is_regular, is_zero_regular, minimize_regular

__all__ = ["CompileOptions", "compile_expr", "default_alphabet"]


@dataclass(frozen=True)
class CompileOptions:
    """``minimize`` turns on certification: regular intermediate systems are
    minimized and inverses of certified operands use the minimal inverse.
    Without it only the plain rational operations are used.
    ``certify_inverse`` additionally certifies non-regular operands of an
    inverse whose standard inverse is regular."""

    minimize: bool = False
    alphabet: Optional[Sequence[str]] = None
    certify_inverse: bool = False


def default_alphabet(*exprs: Expr) -> tuple:
    """Sorted letters of the expressions; ``("x",)`` if there are none."""
    found = sorted({a for e in exprs for a in letters(e)})
    return tuple(found) or ("x",)


def compile_expr(e: Union[Expr, str], opts: CompileOptions = CompileOptions()) -> ALS:
    if isinstance(e, str):
        e = parse(e, opts.alphabet)
    alphabet = make_alphabet(opts.alphabet) if opts.alphabet is not None else default_alphabet(e)
    missing = [a for a in letters(e) if a not in alphabet]
    if missing:
        raise AlphabetMismatch(f"letters {missing} not in alphabet {alphabet}")

    def settle(f: ALS) -> ALS:
        if opts.minimize and not f.cert.is_minimal and is_regular(f):
            return minimize_regular(f)
        return f

    def invert_node(g: ALS) -> ALS:
        if g.is_empty:
            raise InverseOfZero("inverse of an expression equal to 0")
        if not opts.minimize:
            if is_regular(g) and is_zero_regular(g):
                raise InverseOfZero("inverse of an expression equal to 0")
            return std_inverse(g)
        c = certify(g, inverse=opts.certify_inverse)
        if c is None:
            return std_inverse(g)
        if c.is_empty:
            raise InverseOfZero("inverse of an expression equal to 0")
        return minimal_inverse(c)

    def go(n: Expr) -> ALS:
        if isinstance(n, Letter):
            return mk_monomial((n.name,), alphabet)
        if isinstance(n, Const):
            return mk_scalar(n.value, alphabet)
        if isinstance(n, Neg):
            return scale(go(n.arg), -1)
        if isinstance(n, Inv):
            return settle(invert_node(go(n.arg)))
        if isinstance(n, Mul) and isinstance(n.left, Const):
            return scale(go(n.right), n.left.value)
        if isinstance(n, Mul) and isinstance(n.right, Const):
            return scale(go(n.left), n.right.value)
        left, right = go(n.left), go(n.right)
        if isinstance(n, Add):
            return settle(add(left, right))
        if isinstance(n, Sub):
            return settle(add(left, scale(right, -1)))
        return settle(mul(left, right))

    return go(e)
