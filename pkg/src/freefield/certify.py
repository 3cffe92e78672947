"""Ways to obtain a certified-minimal system for an element.

Besides minimizing regular systems there are two sound routes used here:

* the inverse route: if the standard inverse of ``f`` has an invertible
  constant part, it is a valid (regular) system for ``f^{-1}``; minimizing
  it and taking the minimal inverse gives a certified-minimal system for f.
* the evaluation route: the left and right families are linearly
  independent over K as soon as their values at some matrix point are,
  and independence of both families is equivalent to minimality.
"""

import random
from typing import Optional

from .als import ALS, CertFlags, family_values, std_inverse
from .inverse import detect_flags, minimal_inverse
from .linalg import Matrix, rank
from .regular import is_regular, minimize_regular

__all__ = ["certify", "certify_by_inverse", "families_independent_at", "certify_by_evaluation"]


def certify_by_inverse(f: ALS) -> Optional[ALS]:
    if f.is_empty:
        return None
    h = std_inverse(f)
    if not is_regular(h):
        return None
    return minimal_inverse(minimize_regular(h))


def families_independent_at(f: ALS, point, size=None) -> Optional[bool]:
    """True if both families are independent at the point, None if undefined there."""
    vals = family_values(f, point, size)
    if vals is None:
        return None
    left, right = vals
    n = f.dim
    L = Matrix.from_rows([m.flat() for m in left], len(left[0].flat()))
    R = Matrix.from_rows([m.flat() for m in right], len(right[0].flat()))
    return rank(L) == n and rank(R) == n


def _random_point(alphabet, m: int, rng: random.Random):
    return {a: Matrix([[rng.randint(-3, 3) for _ in range(m)] for _ in range(m)]) for a in alphabet}


def certify_by_evaluation(f: ALS, seed=0, tries: int = 8, size: int = 3) -> Optional[ALS]:
    """Return ``f`` flagged minimal if some random point proves independence.

    Failure proves nothing: the families may be independent while every
    sampled point collapses them.
    """
    if f.is_empty:
        return None
    rng = random.Random(f"cert:{seed}")
    for _ in range(tries):
        if families_independent_at(f, _random_point(f.alphabet, size, rng), size):
            g = f.with_cert(CertFlags("yes"))
            return g.with_cert(detect_flags(g))
    return None


def certify(f: ALS, inverse: bool = False, evaluation: bool = False, seed=0) -> Optional[ALS]:
    """A certified-minimal system for the element of ``f``, or None.

    Regular systems are minimized; the inverse and evaluation routes are
    only tried when asked for.
    """
    if f.cert.is_minimal:
        return f
    if is_regular(f):
        return minimize_regular(f)
    if inverse:
        g = certify_by_inverse(f)
        if g is not None:
            return g
    if evaluation:
        return certify_by_evaluation(f, seed)
    return None
