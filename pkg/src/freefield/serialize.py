"""JSON import/export for systems, matrix points and verdicts.

ALS documents look like::

    {"alphabet": ["x", "y"], "dim": 2, "u": ["1", "0"], "v": ["0", "1"],
     "A": {"1": [["1", "0"], ["0", "1"]], "x": [["0", "-1"], ["0", "0"]], "y": ...},
     "cert": {"minimal": "yes", "one_in_L": "yes", "one_in_R": "yes"},
     "trusted": true}

Scalars are written as ``"p/q"`` strings (``"p"`` for integers).  Imported
certification flags are kept only when the document says ``"trusted": true``.
"""

import json
from fractions import Fraction
from typing import Any, Dict, Mapping

from .als import ALS, CertFlags, Pencil, make_alphabet
from .errors import SchemaError
from .linalg import Matrix, to_scalar

__all__ = [
    "scalar_to_json",
    "matrix_to_json",
    "matrix_from_json",
    "als_to_dict",
    "als_from_dict",
    "export_als",
    "import_als",
    "point_from_json",
]


def scalar_to_json(x: Fraction) -> str:
    return str(x)


def matrix_to_json(M: Matrix):
    return [[scalar_to_json(a) for a in row] for row in M.tolist()]


def _scalar(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, str)):
        raise SchemaError(f"scalar must be an integer or a 'p/q' string, got {x!r}")
    try:
        return to_scalar(x)
    except (ValueError, ZeroDivisionError) as exc:
        raise SchemaError(f"bad scalar {x!r}") from exc


def matrix_from_json(data, rows: int = None, cols: int = None) -> Matrix:
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise SchemaError("matrix must be a list of rows")
    if rows is not None and len(data) != rows:
        raise SchemaError(f"expected {rows} rows, got {len(data)}")
    width = cols if cols is not None else (len(data[0]) if data else 0)
    if any(len(r) != width for r in data):
        raise SchemaError(f"expected rows of length {width}")
    return Matrix.from_rows([[_scalar(x) for x in r] for r in data], width)


def als_to_dict(f: ALS, trusted: bool = False) -> Dict[str, Any]:
    out: Dict[str, Any] = {
        "alphabet": list(f.alphabet),
        "dim": f.dim,
        "u": [scalar_to_json(a) for a in f.u.flat()],
        "v": [scalar_to_json(a) for a in f.v.flat()],
        "A": {"1": matrix_to_json(f.A.const)},
        "cert": {"minimal": f.cert.minimal, "one_in_L": f.cert.one_in_L, "one_in_R": f.cert.one_in_R},
    }
    for a, m in zip(f.alphabet, f.A.linear):
        out["A"][a] = matrix_to_json(m)
    if trusted:
        out["trusted"] = True
    return out


def _vector(data, n: int, name: str):
    if not isinstance(data, list) or len(data) != n:
        raise SchemaError(f"{name!r} must be a list of {n} scalars")
    return [_scalar(x) for x in data]


def als_from_dict(doc: Mapping[str, Any]) -> ALS:
    if not isinstance(doc, Mapping):
        raise SchemaError("ALS document must be a JSON object")
    for key in ("alphabet", "dim", "v", "A"):
        if key not in doc:
            raise SchemaError(f"missing field {key!r}")
    try:
        alphabet = make_alphabet(doc["alphabet"])
    except (ValueError, TypeError) as exc:
        raise SchemaError(str(exc)) from exc
    n = doc["dim"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 0:
        raise SchemaError("'dim' must be a nonnegative integer")
    if "u" in doc:
        u = _vector(doc["u"], n, "u")
        if u != [Fraction(int(i == 0)) for i in range(n)]:
            raise SchemaError("u must be e_1 = [1, 0, ..., 0]")
    v = Matrix.column(_vector(doc["v"], n, "v"))
    A = doc["A"]
    if not isinstance(A, Mapping) or "1" not in A:
        raise SchemaError("'A' must be an object with a constant part under key '1'")
    extra = set(A) - set(alphabet) - {"1"}
    if extra:
        raise SchemaError(f"coefficients for unknown letters {sorted(extra)}")
    coeffs = [matrix_from_json(A["1"], n, n)]
    for a in alphabet:
        coeffs.append(matrix_from_json(A[a], n, n) if a in A else Matrix.zeros(n, n))
    cert = CertFlags()
    if doc.get("trusted") is True and "cert" in doc:
        c = doc["cert"]
        try:
            cert = CertFlags(c.get("minimal", "unknown"), c.get("one_in_L", "unknown"),
                             c.get("one_in_R", "unknown"))
        except (ValueError, AttributeError) as exc:
            raise SchemaError(f"bad cert block: {exc}") from exc
    return ALS(Pencil(alphabet, tuple(coeffs)), v, cert)


def export_als(f: ALS, trusted: bool = False) -> str:
    return json.dumps(als_to_dict(f, trusted), indent=2)


def import_als(text) -> ALS:
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    return als_from_dict(doc)


def point_from_json(text) -> Dict[str, Matrix]:
    """Parse ``{"x": [[...]], "y": [[...]]}`` into a matrix assignment."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or not doc:
        raise SchemaError("matrix assignment must be a nonempty object")
    point = {str(k): matrix_from_json(m) for k, m in doc.items()}
    sizes = {m.shape for m in point.values()}
    if len(sizes) != 1 or any(r != c for r, c in sizes):
        raise SchemaError("assigned matrices must be square and of one size")
    return point
