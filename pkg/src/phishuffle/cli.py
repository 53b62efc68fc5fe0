"""Command-line front end.

Exit status: 0 success, 1 a check failed, 2 usage or parse error,
3 a series was not summable within the window.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings
from dataclasses import dataclass
from typing import Optional

from . import bases, casebook, convolution, factorization
from .convolution import NotSummableWithinBound, WindowError
from .freealg import PolyParseError, format_poly, format_tensor, parse_poly, poly_to_json, tensor_to_json
from .philaw import (LawError, PhiLaw, TruncationWarning, check_associative, check_commutative,
                     check_condition_D, check_grading_compatible, parse_law_spec)
from .products import Coproduct, multiply, phi_coproduct, q_coproduct, shuffle_coproduct
from .report import Report
from .scalars import DUAL, QQ, RingMismatchError, ScalarParseError
from .words import Alphabet, AlphabetMismatchError, WordParseError

OK, CHECK_FAILED, USAGE, NOT_SUMMABLE = 0, 1, 2, 3
DEFAULT_BOUND = 5

_INPUT_ERRORS = (ScalarParseError, WordParseError, PolyParseError, LawError, RingMismatchError,
                 AlphabetMismatchError, WindowError, KeyError)


class UsageError(Exception):
    pass


@dataclass
class SessionConfig:
    ring: object
    alphabet: Optional[Alphabet]
    law: Optional[PhiLaw]
    bound: int
    json: bool

    def need_alphabet(self, flag: str = "--alphabet") -> Alphabet:
        if self.alphabet is None:
            raise UsageError(f"{flag} is required for this command")
        return self.alphabet

    def coproduct(self) -> Coproduct:
        law = self.law
        if law is None:
            return shuffle_coproduct(self.need_alphabet("--alphabet or --law"), self.ring)
        if law.q is not None:
            return q_coproduct(law.q, law.alphabet, law.ring)
        return phi_coproduct(law)

    def poly(self, text: str):
        return parse_poly(text, self.need_alphabet("--alphabet or --law"), self.ring)


def _common(p: argparse.ArgumentParser, bound_flags=("--bound",)):
    p.add_argument("--ring", choices=("q", "dual"), default="q", help="coefficient ring")
    p.add_argument("--alphabet", help='letters, e.g. "a b" or "y1..y6 weights 1..6"')
    p.add_argument("--law", help="builtin:<name> [param] or a law file")
    p.add_argument(*bound_flags, dest="bound", type=int, default=DEFAULT_BOUND, help="filtration bound")
    p.add_argument("--max-weight", type=int, help="largest letter for stuffle-type builtins")
    p.add_argument("--json", action="store_true", help="structured JSON output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="phishuffle", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, help, bound_flags=("--bound",)):
        p = sub.add_parser(name, help=help)
        _common(p, bound_flags)
        return p

    add("mul", "product of polynomials under the law (shuffle by default)").add_argument("polys", nargs="+")
    add("coproduct", "coproduct dual to the law").add_argument("poly")
    add("pbw", "PBW-Lyndon basis element P_w").add_argument("word")
    add("dual", "dual basis element S_w").add_argument("word")
    p = add("matrix", "transition matrix M or N in one degree")
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--which", choices=("M", "N"), default="M")
    add("check-duality", "pairing of S and P bases", ("--max", "--bound"))
    add("check-triangular", "triangularity of S and P bases", ("--max", "--bound"))
    add("check-phi", "commutativity, associativity and finite decomposition of the law")
    p = add("pi1", "primitive projector log(I)")
    p.add_argument("poly", nargs="?")
    p = add("antipode", "antipode by series or by recursion")
    p.add_argument("--method", choices=("series", "qft"), default="series")
    p.add_argument("poly")
    p = add("primitives", "primitive letters pi1(y_s), or solver generators")
    p.add_argument("--solve", action="store_true", help="solve for all primitives within the bound")
    add("check-envelope", "grading, projector, rearrangement and Phi checks")
    p = add("factorize", "diagonal series and its Lyndon factorization")
    p.add_argument("--form", choices=("diag", "sum", "prod", "verify"), default="verify")
    p.add_argument("--order", choices=factorization.ORDERS, default="lex")
    p = add("casebook", "self-checking counterexamples")
    p.add_argument("--case", choices=tuple(casebook.CASES) + ("all",), default="all")
    return parser


def make_config(args) -> SessionConfig:
    ring = DUAL if args.ring == "dual" else QQ
    alphabet = Alphabet.of(args.alphabet) if args.alphabet else None
    law = None
    if args.law:
        max_weight = args.max_weight if args.max_weight is not None else args.bound
        try:
            law = parse_law_spec(args.law, ring, alphabet, max_weight)
        except (LawError, ScalarParseError, KeyError) as e:
            raise UsageError(f"--law: {e.args[0] if isinstance(e, KeyError) else e}") from None
        if alphabet is not None and law.alphabet != alphabet:
            raise UsageError("--law is defined over a different alphabet than --alphabet")
        alphabet = law.alphabet
    return SessionConfig(ring, alphabet, law, args.bound, args.json)


class _Out:
    def __init__(self, stream):
        self.stream = stream

    def __call__(self, text: str = ""):
        self.stream.write(text + "\n")

    def json(self, obj):
        self(json.dumps(obj, ensure_ascii=False, indent=2))


def _emit_poly(out, cfg, p):
    out.json(poly_to_json(p)) if cfg.json else out(format_poly(p))


def _emit_report(out, cfg, rep: Report) -> int:
    out.json(rep.to_json()) if cfg.json else out(rep.to_text())
    return OK if rep.passed else CHECK_FAILED


def _table(out, cfg, endo, words):
    a = endo.alphabet
    if cfg.json:
        out.json({a.format_word(w): poly_to_json(endo(w)) for w in words})
    else:
        for w in words:
            out(f"{a.format_word(w)} -> {format_poly(endo(w))}")


def run(args, out) -> int:
    cfg = make_config(args)
    cmd = args.command
    if cmd == "mul":
        polys = [cfg.poly(t) for t in args.polys]
        res = polys[0]
        for p in polys[1:]:
            res = multiply(cfg.law, res, p)
        _emit_poly(out, cfg, res)
        return OK
    if cmd == "coproduct":
        t = cfg.coproduct()(cfg.poly(args.poly))
        out.json(tensor_to_json(t)) if cfg.json else out(format_tensor(t))
        return OK
    if cmd in ("pbw", "dual"):
        a = cfg.need_alphabet()
        fn = bases.pbw_p if cmd == "pbw" else bases.dual_s
        _emit_poly(out, cfg, fn(a.parse_word(args.word), a))
        return OK
    if cmd == "matrix":
        a = cfg.need_alphabet()
        m = (bases.matrix_M if args.which == "M" else bases.matrix_N)(args.degree, a)
        if cfg.json:
            out.json(m.to_json(a))
        else:
            out("\t" + "\t".join(a.format_word(w) for w in m.words))
            for w, row in zip(m.words, m.entries):
                out(a.format_word(w) + "\t" + "\t".join(QQ.format(x) for x in row))
        return OK
    if cmd == "check-duality":
        return _emit_report(out, cfg, bases.verify_duality(cfg.bound, cfg.need_alphabet()))
    if cmd == "check-triangular":
        return _emit_report(out, cfg, bases.verify_triangularity(cfg.bound, cfg.need_alphabet()))
    if cmd == "check-phi":
        if cfg.law is None:
            raise UsageError("--law is required for check-phi")
        rep = Report(f"law checks for {cfg.law.name}")
        for name, fn in (("commutative", check_commutative), ("associative", check_associative),
                         ("finite decomposition", check_condition_D)):
            r = fn(cfg.law)
            rep.add(name, r.ok, r.detail)
        g = check_grading_compatible(cfg.law)
        rep.notes.append("weight filtration compatible" if g.ok else f"weight filtration incompatible: {g.detail}")
        return _emit_report(out, cfg, rep)
    if cmd == "pi1":
        endo = convolution.pi1(cfg.bound, cfg.coproduct())
        if args.poly:
            _emit_poly(out, cfg, endo(cfg.poly(args.poly)))
        else:
            _table(out, cfg, endo, endo.words())
        return OK
    if cmd == "antipode":
        fn = convolution.antipode_series if args.method == "series" else convolution.antipode_qft
        p = cfg.poly(args.poly)
        _emit_poly(out, cfg, fn(cfg.bound, cfg.coproduct())(p))
        return OK
    if cmd == "primitives":
        cop = cfg.coproduct()
        if args.solve:
            gens = casebook.primitive_solver(cop, cfg.bound)
            out.json([poly_to_json(g) for g in gens]) if cfg.json else [out(format_poly(g)) for g in gens]
            return OK
        if cfg.law is None:
            raise UsageError("--law is required for primitive letters (or pass --solve)")
        prims = convolution.primitive_letters(cfg.law, cfg.bound)
        names = cfg.law.alphabet.names
        if cfg.json:
            out.json({names[i]: poly_to_json(p) for i, p in prims.items()})
        else:
            for i, p in prims.items():
                out(f"{names[i]}' = {format_poly(p)}")
        return OK
    if cmd == "check-envelope":
        if cfg.law is None:
            raise UsageError("--law is required for check-envelope")
        return _emit_report(out, cfg, convolution.check_envelope(cfg.law, cfg.bound))
    if cmd == "factorize":
        a = cfg.need_alphabet()
        if args.form == "verify":
            return _emit_report(out, cfg, factorization.verify_factorization(cfg.bound, a, args.order))
        if args.form == "diag":
            s = factorization.diagonal_series(cfg.bound, a)
        elif args.form == "sum":
            s = factorization.sum_form(cfg.bound, a)
        else:
            s = factorization.product_form(cfg.bound, a, args.order)
        out.json(tensor_to_json(s.series)) if cfg.json else out(format_tensor(s.series))
        return OK
    if cmd == "casebook":
        reports = casebook.run_cases(args.case)
        if cfg.json:
            out.json([r.to_json() for r in reports])
        else:
            out("\n".join(r.to_text() for r in reports))
        return OK if all(r.passed for r in reports) else CHECK_FAILED
    raise UsageError(f"unknown command {cmd!r}")  # pragma: no cover


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    out = _Out(stdout)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", TruncationWarning)
        try:
            return run(args, out)
        except NotSummableWithinBound as e:
            stderr.write(f"not summable: {e} (witness {e.witness_text})\n")
            return NOT_SUMMABLE
        except UsageError as e:
            stderr.write(f"usage error: {e}\n")
            return USAGE
        except _INPUT_ERRORS as e:
            msg = e.args[0] if isinstance(e, KeyError) and e.args else e
            stderr.write(f"error: {msg}\n")
            return USAGE
        except ValueError as e:
            stderr.write(f"error: {e}\n")
            return USAGE
        finally:
            seen = set()
            for w in caught:
                msg = str(w.message)
                if issubclass(w.category, TruncationWarning) and msg not in seen:
                    seen.add(msg)
                    stderr.write(f"warning: {msg}\n")


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
