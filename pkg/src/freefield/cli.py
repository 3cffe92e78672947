"""Command-line interface: ``freefield <command> ...``.

Exit codes: 0 success / equal, 1 not equal, 2 inconclusive or undefined,
64 usage, 65 bad data, 70 internal error.
"""

import argparse
import json
import os
import sys
from typing import List, Optional

from . import __version__
from .als import ALS, eval_at_matrices, std_inverse, with_alphabet
from .certify import certify
from .compiler import CompileOptions, compile_expr
from .errors import FreeFieldError
from .expr import Const, Inv, Letter, Neg, parse, to_text
from .inverse import minimal_inverse_method
from .linalg import Matrix
from .regular import coeff, hankel_rank, is_regular, minimize_regular, parse_word, words_upto
from .serialize import als_to_dict, import_als, matrix_to_json, point_from_json
from .wordproblem import compare_systems, equality_pipeline

EXIT_OK, EXIT_NE, EXIT_INCONCLUSIVE = 0, 1, 2
EXIT_USAGE, EXIT_DATA, EXIT_INTERNAL = 64, 65, 70


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_source(p: argparse.ArgumentParser, compile_flag: bool = True):
    p.add_argument("expr", nargs="?", help="expression, e.g. 'x*y + y*x'")
    p.add_argument("--als", metavar="FILE", help="read an ALS JSON document ('-' for stdin)")
    p.add_argument("--alphabet", help="comma-separated letters (default: letters of the expression)")
    if compile_flag:
        p.add_argument("--minimize", action="store_true", help="certify/minimize while compiling")
    p.add_argument("--json", action="store_true", help="JSON output")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="freefield", description="Exact computations in the free field.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("parse", help="parse an expression and print it back")
    p.add_argument("expr")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("compile", help="compile an expression to an ALS")
    _add_source(p)
    p = sub.add_parser("show", help="pretty-print an ALS")
    _add_source(p)
    p = sub.add_parser("minimize", help="minimize a regular system")
    _add_source(p, compile_flag=False)
    p = sub.add_parser("rank", help="rank (dimension of a minimal ALS)")
    _add_source(p, compile_flag=False)

    p = sub.add_parser("invert", help="ALS for the inverse")
    _add_source(p, compile_flag=False)
    p.add_argument("--minimal", action="store_true", help="certified-minimal inverse")

    p = sub.add_parser("eq", help="decide or test equality")
    p.add_argument("exprs", nargs="*", help="two expressions")
    p.add_argument("--als", action="append", default=[], metavar="FILE",
                   help="ALS JSON document; give twice instead of expressions")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--trials", type=int, default=20)
    p.add_argument("--extended", action="store_true",
                   help="also try the inverse and evaluation certification routes")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("coeff", help="coefficients of a regular element")
    _add_source(p, compile_flag=False)
    p.add_argument("--word", action="append", required=True, help="word such as 'xy' or 'x y'")

    p = sub.add_parser("hankel", help="Hankel rank and coefficients up to a length")
    _add_source(p, compile_flag=False)
    p.add_argument("--maxlen", type=int, required=True)

    p = sub.add_parser("eval", help="evaluate at matrices")
    _add_source(p, compile_flag=False)
    p.add_argument("--matrices", required=True, metavar="FILE",
                   help='JSON object {"x": [["1","0"],["0","1"]], ...}')
    return parser


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _alphabet(args) -> Optional[tuple]:
    if getattr(args, "alphabet", None):
        return tuple(a.strip() for a in args.alphabet.split(",") if a.strip())
    return None


def _load(args, minimize: bool) -> ALS:
    if args.als and args.expr:
        raise UsageError("give either an expression or --als, not both")
    if args.als:
        f = import_als(_read(args.als))
        ab = _alphabet(args)
        return with_alphabet(f, ab) if ab else f
    if not args.expr:
        raise UsageError("an expression or --als FILE is required")
    return compile_expr(args.expr, CompileOptions(minimize=minimize, alphabet=_alphabet(args)))


def _emit(args, doc, text: str):
    print(json.dumps(doc, indent=2) if args.json else text)


def _als_out(args, f: ALS, extra: Optional[dict] = None, header: str = "") -> None:
    doc = als_to_dict(f, trusted=True)
    if extra:
        doc = {**extra, "als": doc}
    text = (header + "\n" if header else "") + f.to_text()
    _emit(args, doc, text)


def _ast_json(e):
    if isinstance(e, Letter):
        return {"letter": e.name}
    if isinstance(e, Const):
        return {"const": str(e.value)}
    if isinstance(e, (Neg, Inv)):
        return {type(e).__name__.lower(): _ast_json(e.arg)}
    return {type(e).__name__.lower(): [_ast_json(e.left), _ast_json(e.right)]}


def _certified(f: ALS) -> Optional[ALS]:
    return certify(f, inverse=True, evaluation=True)


def cmd_parse(args) -> int:
    e = parse(args.expr)
    _emit(args, {"text": to_text(e), "tree": _ast_json(e)}, to_text(e))
    return EXIT_OK


def cmd_compile(args) -> int:
    _als_out(args, _load(args, args.minimize))
    return EXIT_OK


def cmd_minimize(args) -> int:
    f = _load(args, minimize=False)
    _als_out(args, minimize_regular(f))
    return EXIT_OK


def cmd_rank(args) -> int:
    f = _load(args, minimize=True)
    c = _certified(f)
    if c is None:
        doc = {"rank": None, "upper_bound": f.dim}
        _emit(args, doc, f"rank: unknown (at most {f.dim})")
        return EXIT_INCONCLUSIVE
    _emit(args, {"rank": c.dim}, f"rank: {c.dim}")
    return EXIT_OK


def cmd_invert(args) -> int:
    if not args.minimal:
        f = _load(args, minimize=False)
        _als_out(args, std_inverse(f), {"method": "standard"}, "method: standard")
        return EXIT_OK
    f = _load(args, minimize=True)
    c = _certified(f)
    if c is None:
        print("cannot certify minimality of the input; use invert without --minimal", file=sys.stderr)
        return EXIT_INCONCLUSIVE
    g, method = minimal_inverse_method(c)
    _als_out(args, g, {"method": method}, f"method: {method}")
    return EXIT_OK


def _verdict_json(v) -> dict:
    def conv(x):
        if isinstance(x, Matrix):
            return matrix_to_json(x)
        if isinstance(x, dict):
            return {k: conv(val) for k, val in x.items()}
        return x

    return {"verdict": v.kind, "method": v.method, "certificate": conv(v.certificate)}


def _seed(args) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get("FREEFIELD_SEED")
    if env is None:
        return 0
    try:
        return int(env)
    except ValueError:
        raise UsageError(f"FREEFIELD_SEED must be an integer, got {env!r}")


def cmd_eq(args) -> int:
    seed = _seed(args)
    if args.als:
        if len(args.als) != 2 or args.exprs:
            raise UsageError("eq takes two expressions or --als twice")
        f, g = (import_als(_read(p)) for p in args.als)
        v = compare_systems(f, g, seed, args.trials, extended=args.extended)
    else:
        if len(args.exprs) != 2:
            raise UsageError("eq takes exactly two expressions")
        v = equality_pipeline(args.exprs[0], args.exprs[1], seed, args.trials, extended=args.extended)
    doc = _verdict_json(v)
    text = f"{v.kind} ({v.method})"
    cert = doc["certificate"]
    if "T" in cert:
        text += f"\nT = {cert['T']}\nU = {cert['U']}"
    elif "point" in cert:
        text += f"\nwitness at size {cert['size']}: {cert['point']}"
    _emit(args, doc, text)
    return {"equal": EXIT_OK, "not_equal": EXIT_NE}.get(v.kind, EXIT_INCONCLUSIVE)


def _word_text(w) -> str:
    return "".join(w) if all(len(a) == 1 for a in w) else " ".join(w)


def _regular(args) -> ALS:
    f = _load(args, minimize=True)
    if not is_regular(f):
        raise FreeFieldError("the system is not regular (constant part singular)")
    return f


def cmd_coeff(args) -> int:
    f = _regular(args)
    rows = [{"word": _word_text(w), "coeff": str(coeff(f, w))}
            for w in (parse_word(x, f.alphabet) for x in args.word)]
    _emit(args, rows, "\n".join(f"{r['word'] or '1'}: {r['coeff']}" for r in rows))
    return EXIT_OK


def cmd_hankel(args) -> int:
    if args.maxlen < 0:
        raise UsageError("--maxlen must be nonnegative")
    f = _regular(args)
    r = hankel_rank(f, args.maxlen)
    rows = [{"word": _word_text(w), "coeff": str(coeff(f, w))} for w in words_upto(f.alphabet, args.maxlen)]
    rows = [row for row in rows if row["coeff"] != "0"]
    text = f"hankel rank (words up to length {args.maxlen}): {r}"
    _emit(args, {"maxlen": args.maxlen, "rank": r, "coefficients": rows}, text)
    return EXIT_OK


def cmd_eval(args) -> int:
    f = _load(args, minimize=False)
    point = point_from_json(_read(args.matrices))
    val = eval_at_matrices(f, point)
    if val is None:
        _emit(args, {"value": None}, "undefined: the pencil is singular at this point")
        return EXIT_INCONCLUSIVE
    _emit(args, {"value": matrix_to_json(val)}, str(val))
    return EXIT_OK


def cmd_show(args) -> int:
    _als_out(args, _load(args, getattr(args, "minimize", False)))
    return EXIT_OK


COMMANDS = {
    "parse": cmd_parse, "compile": cmd_compile, "show": cmd_show, "minimize": cmd_minimize,
    "rank": cmd_rank, "invert": cmd_invert, "eq": cmd_eq, "coeff": cmd_coeff,
    "hankel": cmd_hankel, "eval": cmd_eval,
}


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"freefield: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FreeFieldError, ValueError, ZeroDivisionError, OSError) as exc:
        print(f"freefield: {exc}", file=sys.stderr)
        return EXIT_DATA
    except Exception as exc:  # pragma: no cover - last resort
        print(f"freefield: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
