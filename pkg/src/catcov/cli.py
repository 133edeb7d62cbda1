"""Command-line interface.

Every verb reads JSON files and writes a JSON report to ``-o`` (default
stdout); one-line summaries go to stderr. Exit codes: 0 success or true,
1 a checked property is false, 2 invalid input, 3 budget exhausted.
"""
from __future__ import annotations

import argparse
import sys
from pathlib import Path
from types import SimpleNamespace
from typing import List, Optional

from . import io
from . import words as W
from .category import CatFunctor, FiniteCategory, PresentedCategory, connected_components
from .coverings import (
    aut_group,
    check_covering,
    covering_report,
    is_galois,
    orbit_category,
)
from .dot import render_dot
from .errors import CatcovError, InvalidInput, NoSuchObject, PropertyViolation
from .fractions import pi1_presentation
from .grading import associated_grading, is_effective, roundtrip_iso, smash_product
from .presentation import (
    DEFAULT_COSET_ROWS,
    DEFAULT_SEARCH_DEPTH,
    DEFAULT_TIETZE_STEPS,
    abelianize,
    coset_enumerate,
    word_equal,
)
from .universal import check_interior, universal_ball

OK, FALSE, INVALID, UNKNOWN = 0, 1, 2, 3


def _say(msg: str) -> None:
    print(msg, file=sys.stderr)


def _emit(args, report) -> None:
    io.write_json(report, args.output)


def _emit_dot(args, obj) -> None:
    if getattr(args, "dot", None):
        Path(args.dot).write_text(render_dot(obj), encoding="utf-8")


def _base(C, base: Optional[str]) -> str:
    if base is None:
        if not C.objects:
            raise NoSuchObject("empty category has no base object")
        return C.objects[0]
    if base not in C.objects:
        raise NoSuchObject(f"no object {base!r}")
    return base


def _functor_dict(F: CatFunctor) -> dict:
    d = io.functor_to_dict(F)
    del d["source_file"], d["target_file"]
    return d


# -- verbs -------------------------------------------------------------------------

def cmd_validate(args) -> int:
    d = io.read_json(args.file)
    fmt = d.get("format") if isinstance(d, dict) else None
    if fmt == io.FUNCTOR_FORMAT:
        F = io.load_functor(args.file)
        report = {"valid": True, "kind": "functor",
                  "objects": len(F.source.objects), "morphisms": len(F.source.morphisms)}
    elif fmt == io.ACTION_FORMAT:
        A = io.load_action(args.file)
        report = {"valid": True, "kind": "action", "order": A.order, "free": A.is_free()}
    else:
        C = io.category_from_dict(d, args.file)
        n = len(C.arrows) if isinstance(C, PresentedCategory) else len(C.morphisms)
        report = {"valid": True, "kind": "category",
                  "mode": "presented" if isinstance(C, PresentedCategory) else "explicit",
                  "objects": len(C.objects), "morphisms": n}
        if isinstance(C, FiniteCategory):
            report["components"] = len(connected_components(C))
            _emit_dot(args, C)
    _say(f"valid {report['kind']}")
    _emit(args, report)
    return OK


def _presentation(args):
    C = io.load_category(args.file)
    return pi1_presentation(C, _base(C, args.base), args.max_tietze)


def cmd_pi1(args) -> int:
    P = _presentation(args)
    report = P.to_dict()
    report["exhausted"] = P.exhausted
    unknown = P.exhausted
    ab = abelianize(P)
    if ab.free_rank > 0:
        report["order"] = "infinite"
    else:
        n = coset_enumerate(P, args.coset_rows)
        report["order"] = n if n is not None else "unknown"
        unknown = unknown or n is None
    if args.word_equal:
        u, v = (W.parse_word(s) for s in args.word_equal)
        verdict = word_equal(P, P.rewrite(u), P.rewrite(v), args.coset_rows,
                             args.search_depth, args.max_tietze)
        report["word_equal"] = "unknown" if verdict is None else verdict
        unknown = unknown or verdict is None
    _say(f"pi1 at {P.base}: {len(P.generators)} generators, {len(P.relators)} relators, "
         f"rank {ab.free_rank}, torsion {list(ab.torsion)}")
    _emit(args, report)
    if unknown:
        return UNKNOWN
    if report.get("word_equal") is False:
        return FALSE
    return OK


def cmd_abelianize(args) -> int:
    P = _presentation(args)
    ab = abelianize(P)
    report = {"base": P.base, **ab.to_dict()}
    _say(f"rank {ab.free_rank}, torsion {list(ab.torsion)}")
    _emit(args, report)
    return UNKNOWN if P.exhausted else OK


def cmd_cover_check(args) -> int:
    F = io.load_functor(args.file)
    try:
        P = check_covering(F)
    except PropertyViolation as e:
        _say(f"not a covering: {e}")
        _emit(args, {"format": "catcov-covering/1", "covering": False,
                     "reason": type(e).__name__, "detail": str(e)})
        return FALSE
    report = {"covering": True, **covering_report(P)}
    _say(f"covering; fibre sizes {sorted({len(v) for v in P.fibres.values()})}")
    _emit(args, report)
    return OK


def cmd_galois_check(args) -> int:
    P = check_covering(io.load_functor(args.file))
    g = is_galois(P)
    report = {"galois": g, "fibre_size": len(next(iter(P.fibres.values())))}
    if len(connected_components(P.source)) == 1:
        report["automorphisms"] = aut_group(P).to_dict()
    _say("galois" if g else "not galois")
    _emit(args, report)
    return OK if g else FALSE


def _orbit(args):
    C = io.load_explicit(args.category)
    A = io.load_action(args.action, C)
    return orbit_category(C, A)


def cmd_orbit(args) -> int:
    oc = _orbit(args)
    report = {
        "category": io.category_to_dict(oc.quotient),
        "projection": _functor_dict(oc.covering.functor),
        "covering": covering_report(oc.covering, oc.action),
    }
    _say(f"orbit category: {len(oc.quotient.objects)} objects, {len(oc.quotient.morphisms)} morphisms")
    _emit_dot(args, oc.quotient)
    _emit(args, report)
    return OK


def cmd_smash(args) -> int:
    X = io.load_grading(args.file)
    point = args.point if args.point is not None else X.groupoid.objects[0]
    sm = smash_product(X, point)
    report = {
        "category": io.category_to_dict(sm.category),
        "projection": _functor_dict(sm.covering.functor),
        "covering": covering_report(sm.covering, sm.action if len(connected_components(sm.category)) == 1 else None),
        "components": len(connected_components(sm.category)),
    }
    _say(f"smash product: {len(sm.category.objects)} objects, {report['components']} component(s)")
    _emit_dot(args, sm.category)
    _emit(args, report)
    return OK


def cmd_effective(args) -> int:
    X = io.load_grading(args.file)
    e = is_effective(X, strict=args.strict)
    _say("effective" if e else "not effective")
    _emit(args, {"effective": e})
    return OK if e else FALSE


def _section(oc, picks: Optional[List[str]]):
    if not picks:
        return None
    section = {}
    for x in picks:
        if x not in oc.object_orbit:
            raise InvalidInput(f"section object {x!r} is not an object of the category")
        o = oc.object_orbit[x]
        if o in section:
            raise InvalidInput(f"section picks two objects in orbit {o!r}")
        section[o] = x
    for o in oc.quotient.objects:
        section.setdefault(o, o)
    return section


def cmd_grade(args) -> int:
    oc = _orbit(args)
    ag = associated_grading(oc, _section(oc, args.section))
    G = ag.groupoid
    report = {
        "format": io.FUNCTOR_FORMAT,
        "source": io.category_to_dict(oc.quotient),
        "target": io.category_to_dict(G.category, G.inverses),
        **_functor_dict(ag.grading.functor),
        "section": dict(ag.section),
        "deviation": dict(ag.deviation),
        "degrees": {f: ag.element(f) for f in oc.quotient.names()},
        "effective": is_effective(ag.grading),
    }
    _say("degrees: " + ", ".join(f"{f}->{g}" for f, g in report["degrees"].items()))
    _emit(args, report)
    return OK


def cmd_roundtrip(args) -> int:
    oc = _orbit(args)
    Phi = roundtrip_iso(oc, _section(oc, args.section), args.point)
    report = {"isomorphism": _functor_dict(Phi), "commutes": True}
    _say(f"round trip: isomorphism on {len(Phi.source.objects)} objects")
    _emit(args, report)
    return OK


def cmd_universal(args) -> int:
    B = io.load_explicit(args.file)
    ball = universal_ball(B, _base(B, args.base), args.radius, args.max_tietze)
    report = ball.to_dict()
    report["interior_star_bijective"] = check_interior(ball)
    _say(f"ball of radius {args.radius}: {len(ball.category.objects)} objects, "
         f"{len(ball.category.morphisms)} morphisms, {len(ball.boundary)} on the boundary")
    _emit_dot(args, ball)
    _emit(args, report)
    return OK


def _ball_view(d: dict, C: FiniteCategory):
    proj = d["projection"]
    F = CatFunctor(C, C, proj["object_map"], proj["morphism_map"])
    return SimpleNamespace(category=C, boundary=tuple(d.get("boundary", ())), projection=F,
                           base_category=SimpleNamespace(objects=sorted(set(proj["object_map"].values()))))


def cmd_dot(args) -> int:
    d = io.read_json(args.file)
    C = io.category_from_dict(d, args.file)
    if not isinstance(C, FiniteCategory):
        raise InvalidInput("dot export needs an explicit-mode category")
    obj = _ball_view(d, C) if "projection" in d else C
    text = render_dot(obj)
    if args.output and args.output != "-":
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    _say(f"dot: {len(C.objects)} nodes, {len(C.morphisms)} edges")
    return OK


# -- argument parsing --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write the JSON report here (default stdout)")
    common.add_argument("--dot", help="also write a DOT rendering of the result")
    common.add_argument("--coset-rows", type=int, default=DEFAULT_COSET_ROWS,
                        help=f"coset table budget (default {DEFAULT_COSET_ROWS})")
    common.add_argument("--search-depth", type=int, default=DEFAULT_SEARCH_DEPTH,
                        help=f"relator search depth (default {DEFAULT_SEARCH_DEPTH})")
    common.add_argument("--max-tietze", type=int, default=DEFAULT_TIETZE_STEPS,
                        help=f"Tietze step budget (default {DEFAULT_TIETZE_STEPS})")

    p = argparse.ArgumentParser(prog="catcov", description="Coverings of finite categories.")
    sub = p.add_subparsers(dest="verb", required=True)

    def verb(name, func, help):
        s = sub.add_parser(name, parents=[common], help=help)
        s.set_defaults(func=func)
        return s

    verb("validate", cmd_validate, "check a category, functor or action file").add_argument("file")
    for name, func, h in (("pi1", cmd_pi1, "presentation of the fundamental group"),
                          ("abelianize", cmd_abelianize, "abelian invariants of the fundamental group")):
        s = verb(name, func, h)
        s.add_argument("file")
        s.add_argument("--base")
        if name == "pi1":
            s.add_argument("--word-equal", nargs=2, metavar=("U", "V"),
                           help="compare two words over the morphism names")
    verb("cover-check", cmd_cover_check, "is a functor a covering").add_argument("file")
    verb("galois-check", cmd_galois_check, "is a covering Galois").add_argument("file")
    for name, func, h in (("orbit", cmd_orbit, "orbit category of a free action"),
                          ("grade", cmd_grade, "grading associated with an orbit covering"),
                          ("roundtrip", cmd_roundtrip, "smash of the associated grading vs the cover")):
        s = verb(name, func, h)
        s.add_argument("category")
        s.add_argument("action")
        if name != "orbit":
            s.add_argument("--section", action="append", metavar="S",
                           help="orbit representative (repeatable)")
        if name == "roundtrip":
            s.add_argument("--point", help="base orbit")
    s = verb("smash", cmd_smash, "smash product of a grading")
    s.add_argument("file")
    s.add_argument("--point")
    s = verb("effective", cmd_effective, "is a grading effective")
    s.add_argument("file")
    s.add_argument("--strict", action="store_true",
                   help="reject gradings that are not bijective on objects")
    s = verb("universal", cmd_universal, "ball in the universal cover")
    s.add_argument("file")
    s.add_argument("--base")
    s.add_argument("--radius", type=int, required=True)
    verb("dot", cmd_dot, "render a category or ball file as DOT").add_argument("file")
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CatcovError as e:
        _say(f"error: {type(e).__name__}: {e}")
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
