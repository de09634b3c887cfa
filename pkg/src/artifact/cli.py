"""
Command-line entry point.

Subcommands print JSON lines: one record per item, then a summary object
(``"summary": true``).  ``--pretty`` switches to indented JSON.  Exit codes:
0 success, 1 verification failure, 2 usage or parse error, 3 precondition
violation.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys
import time
from pathlib import Path
from typing import Any, Sequence, TextIO

from .braid import BraidWord, apply_word, faithfulness_ball, parse_word
from .curves import (
    GradedCurve,
    Surface,
    apply_braid,
    fixes_standard_curves,
    format_poly,
    geometric_intersection,
    graded_intersection,
    render_ascii,
    render_svg,
    standard_curve,
)
from .lattice import CentralCharge, LatticeVector, simple_roots_from_charge, wall_violation
from .preprojective import NilpotentModule
from .scalars import F2, parse_field
from .stability import StabilityFunction, hn_filtration, lemma43_charge
from .twisted import TwistedComplex, generator, hom_complex
from .zigzag import ZigzagCategory

__all__ = ["main", "build_parser", "EXIT_OK", "EXIT_FAIL", "EXIT_USAGE", "EXIT_PRECONDITION"]

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_PRECONDITION = 0, 1, 2, 3


class UsageError(Exception):
    pass


class PreconditionError(Exception):
    pass


class Emitter:
    def __init__(self, stream: TextIO, pretty: bool, seed: int | None) -> None:
        self.stream = stream
        self.pretty = pretty
        self.seed = seed

    def emit(self, record: dict[str, Any]) -> None:
        text = json.dumps(record, indent=2 if self.pretty else None, sort_keys=not self.pretty)
        self.stream.write(text + "\n")

    def summary(self, record: dict[str, Any]) -> None:
        self.emit({"summary": True, "seed": self.seed, **record})


# ---------------------------------------------------------------------------
# helpers


_OBJ = re.compile(r"L(\d+)(?:\[(-?\d+)\])?")


def _category(args: argparse.Namespace) -> ZigzagCategory:
    try:
        field = parse_field(args.field)
    except ValueError as e:
        raise UsageError(str(e)) from e
    try:
        return ZigzagCategory(args.n, field=field, affine=args.affine)
    except ValueError as e:
        raise PreconditionError(str(e)) from e


def _word(text: str, args: argparse.Namespace) -> BraidWord:
    try:
        return parse_word(text, args.n, args.affine)
    except ValueError as e:
        raise UsageError(str(e)) from e


def _object(text: str, cat: ZigzagCategory) -> TwistedComplex:
    m = _OBJ.fullmatch(text.replace(" ", ""))
    if m:
        i, k = int(m.group(1)), int(m.group(2) or 0)
        if i not in cat.vertices:
            raise UsageError(f"vertex {i} does not exist")
        return generator(i, k, cat)
    path = Path(text)
    if not path.exists():
        raise UsageError(f"object {text!r} is neither Li[k] nor a JSON file")
    try:
        return TwistedComplex.from_json(path.read_text())
    except (ValueError, KeyError) as e:
        raise UsageError(f"bad complex JSON: {e}") from e


def _surface(args: argparse.Namespace) -> Surface:
    return Surface("cylinder" if args.affine else "disk", args.n)


def _random_word(rng: random.Random, args: argparse.Namespace, max_len: int) -> BraidWord:
    idx = list(range(args.n + 1)) if args.affine else list(range(1, args.n + 1))
    return BraidWord(args.n, tuple((rng.choice(idx), rng.choice((1, -1))) for _ in range(rng.randint(0, max_len))), args.affine)


# ---------------------------------------------------------------------------
# subcommands


def cmd_twist(args: argparse.Namespace, out: Emitter) -> int:
    cat = _category(args)
    w = _word(args.word, args)
    X = _object(args.object, cat)
    Y = apply_word(w, X)
    out.emit({"word": str(w), "input": X.to_json(), "output": Y.to_json(), "text": str(Y)})
    out.summary({"command": "twist", "terms": len(Y)})
    return EXIT_OK


def cmd_verify_ks(args: argparse.Namespace, out: Emitter) -> int:
    cat = _category(args)
    if cat.field != F2:
        raise PreconditionError("verify-ks runs over F2 only")
    S = _surface(args)
    rng = random.Random(args.seed)
    idx = cat.vertices
    bad = 0
    t0 = time.perf_counter()
    for k in range(args.samples):
        w, w2 = _random_word(rng, args, args.max_len), _random_word(rng, args, args.max_len)
        i, j = rng.choice(idx), rng.choice(idx)
        H = hom_complex(apply_word(w, generator(i, 0, cat)), apply_word(w2, generator(j, 0, cat)))
        alg = {d: v for d, v in H.cohomology().items() if v}
        c0 = apply_braid(w.letters, standard_curve(i, S))
        c1 = apply_braid(w2.letters, standard_curve(j, S))
        geo = graded_intersection(c0, c1)
        I = geometric_intersection(c0, c1)
        ok = alg == geo and H.total_cohomology() == 2 * I
        bad += not ok
        out.emit(
            {
                "sample": k,
                "w": str(w),
                "i": i,
                "w2": str(w2),
                "j": j,
                "dim_hom": H.total_cohomology(),
                "two_I": str(2 * I),
                "hom_by_degree": {str(d): v for d, v in alg.items()},
                "I_gr": format_poly(geo),
                "match": ok,
            }
        )
    out.summary({"command": "verify-ks", "samples": args.samples, "mismatches": bad, "seconds": round(time.perf_counter() - t0, 3)})
    return EXIT_OK if bad == 0 else EXIT_FAIL


def cmd_faithful_ball(args: argparse.Namespace, out: Emitter) -> int:
    S = _surface(args)
    if not args.affine:
        raise PreconditionError("the faithfulness ball is defined for the affine group")
    try:
        rep = faithfulness_ball(args.n, args.max_len, affine=True, curve_check=lambda w: fixes_standard_curves(w.letters, S))
    except ValueError as e:
        raise PreconditionError(str(e)) from e
    for w in rep.trivial_words:
        out.emit({"word": w, "relation_trivial": rep.relation_trivial[w], "curves_fixed": rep.curve_trivial.get(w)})
    out.summary({"command": "faithful-ball", **rep.to_json()})
    return EXIT_OK if rep.ok else EXIT_FAIL


def _charge(args: argparse.Namespace) -> CentralCharge:
    if args.lemma43:
        return lemma43_charge(args.n).charge
    if args.charge is None:
        raise UsageError("give --charge or --lemma43")
    try:
        Z = CentralCharge.parse(args.charge)
    except ValueError as e:
        raise UsageError(str(e)) from e
    if Z.n < 1:
        raise UsageError("charge needs at least two values")
    return Z


def cmd_chamber(args: argparse.Namespace, out: Emitter) -> int:
    Z = _charge(args)
    d = LatticeVector.delta(Z.n)
    bad = wall_violation(Z)
    rec: dict[str, Any] = {"charge": str(Z), "Z_delta": str(Z(d)), "off_walls": bad is None}
    if bad is not None:
        rec["violated_class"] = str(bad)
        out.emit(rec)
        out.summary({"command": "chamber", "off_walls": False})
        return EXIT_PRECONDITION
    basis = simple_roots_from_charge(Z)
    rec["simple_roots"] = [str(v) for v in basis]
    rec["charges"] = [str(Z(v)) for v in basis]
    out.emit(rec)
    out.summary({"command": "chamber", "off_walls": True})
    return EXIT_OK


def cmd_stab_hn(args: argparse.Namespace, out: Emitter) -> int:
    try:
        M = NilpotentModule.from_json(Path(args.module).read_text())
    except (OSError, ValueError, KeyError) as e:
        raise UsageError(f"cannot read module: {e}") from e
    args.n = M.n
    Z = _charge(args)
    if Z.n != M.n:
        raise UsageError("charge and module have different rank")
    try:
        stab = StabilityFunction(Z)
        H = hn_filtration(stab, M)
    except ValueError as e:
        raise PreconditionError(str(e)) from e
    out.emit({"module": M.to_json(), "charge": str(Z), **H.to_json(stab)})
    out.summary({"command": "stab hn", "factors": len(H.factors)})
    return EXIT_OK


def cmd_curve(args: argparse.Namespace, out: Emitter) -> int:
    S = _surface(args)
    w = _word(args.word, args)
    if args.index not in S.generators():
        raise UsageError(f"no standard curve {args.index}")
    c = apply_braid(w.letters, standard_curve(args.index, S))
    if args.render == "svg":
        out.stream.write(render_svg(c) + "\n")
        return EXIT_OK
    if args.render == "ascii":
        out.stream.write(render_ascii(c) + "\n")
        return EXIT_OK
    out.emit(c.to_json())
    back = GradedCurve.from_json(c.to_json())
    out.summary({"command": "curve", "round_trip": back.same_as(c)})
    return EXIT_OK


# ---------------------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, default=2, help="rank (number of points is n+1)")
    p.add_argument("--field", default="f2", help="f2 | fp:P | q")
    flavor = p.add_mutually_exclusive_group()
    flavor.add_argument("--affine", dest="affine", action="store_true", default=True)
    flavor.add_argument("--finite", dest="affine", action="store_false")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--pretty", action="store_true")
    p.add_argument("--out", default=None, help="write output to FILE")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="artifact", description="Twist actions on zigzag complexes and graded curves.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("twist", help="apply a braid word to an object")
    _common(p)
    p.add_argument("-w", "--word", default="", help='e.g. "s0 s1 S2"')
    p.add_argument("-o", "--object", default="L0", help="Li, Li[k] or a complex JSON file")
    p.set_defaults(func=cmd_twist)

    p = sub.add_parser("verify-ks", help="compare hom dimensions with graded intersections")
    _common(p)
    p.add_argument("--max-len", type=int, default=4)
    p.add_argument("--samples", type=int, default=100)
    p.set_defaults(func=cmd_verify_ks)

    p = sub.add_parser("faithful-ball", help="list words acting trivially on generators")
    _common(p)
    p.add_argument("--max-len", type=int, default=4)
    p.set_defaults(func=cmd_faithful_ball)

    p = sub.add_parser("chamber", help="wall test and simple roots of a charge")
    _common(p)
    p.add_argument("--charge", default=None, help='"z0, ..., zn" with entries like -1/3+2i')
    p.add_argument("--lemma43", action="store_true", help="use the skyscraper charge Z(delta)=-1, Z(S_j)=i")
    p.set_defaults(func=cmd_chamber)

    p = sub.add_parser("stab", help="stability computations")
    stab_sub = p.add_subparsers(dest="stab_command", required=True)
    q = stab_sub.add_parser("hn", help="Harder-Narasimhan filtration of a module")
    _common(q)
    q.add_argument("--module", required=True, help="module JSON file")
    q.add_argument("--charge", default=None)
    q.add_argument("--lemma43", action="store_true")
    q.set_defaults(func=cmd_stab_hn)

    p = sub.add_parser("curve", help="image of a standard curve under a word")
    _common(p)
    p.add_argument("-w", "--word", default="")
    p.add_argument("-i", "--index", type=int, default=0)
    p.add_argument("--render", choices=("json", "ascii", "svg"), default="json")
    p.set_defaults(func=cmd_curve)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    stream: TextIO = open(args.out, "w") if args.out else sys.stdout
    try:
        return args.func(args, Emitter(stream, args.pretty, args.seed))
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except PreconditionError as e:
        print(f"precondition violated: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    finally:
        if args.out:
            stream.close()


if __name__ == "__main__":
    sys.exit(main())
