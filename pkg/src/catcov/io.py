"""JSON file formats: categories, functors, gradings, actions, balls.

Paths inside a functor file (``source_file``, ``target_file``) and inside an
action file (``category_file``) are resolved relative to that file.
"""
from __future__ import annotations

import json
import sys
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

from .category import (
    Arrow,
    CatFunctor,
    FiniteCategory,
    Ident,
    Morphism,
    PresentedCategory,
    check_functor,
    identity_functor,
)
from .coverings import GroupAction
from .errors import InvalidInput
from .grading import Grading
from .groupoids import FiniteGroupoid, as_groupoid

CATEGORY_FORMAT = "catcov-category/1"
FUNCTOR_FORMAT = "catcov-functor/1"
ACTION_FORMAT = "catcov-action/1"

PathLike = Union[str, Path]


def read_json(path: PathLike) -> Any:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as e:
        raise InvalidInput(f"cannot read {path}: {e.strerror}") from e
    except json.JSONDecodeError as e:
        raise InvalidInput(f"{path}: invalid JSON ({e})") from e


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def write_json(obj: Any, path: Optional[PathLike] = None) -> None:
    text = dumps(obj)
    if path is None or str(path) == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _require(d: Mapping, key: str, where: str):
    if not isinstance(d, Mapping) or key not in d:
        raise InvalidInput(f"{where}: missing {key!r}")
    return d[key]


def _check_format(d: Mapping, fmt: str, where: str) -> None:
    got = d.get("format") if isinstance(d, Mapping) else None
    if got != fmt:
        raise InvalidInput(f"{where}: expected format {fmt!r}, got {got!r}")


# -- categories ----------------------------------------------------------------

def category_from_dict(d: Mapping, where: str = "category") -> Union[FiniteCategory, PresentedCategory]:
    _check_format(d, CATEGORY_FORMAT, where)
    mode = d.get("mode", "explicit")
    objects = tuple(str(x) for x in _require(d, "objects", where))
    try:
        morphs = tuple(Morphism(str(m["name"]), str(m["src"]), str(m["tgt"]))
                       for m in d.get("morphisms", []))
    except (KeyError, TypeError) as e:
        raise InvalidInput(f"{where}: malformed morphism record") from e
    if mode == "presented":
        rels = []
        for r in d.get("relations", []):
            rels.append((tuple(_require(r, "lhs", where)), tuple(_require(r, "rhs", where))))
        return PresentedCategory(objects, morphs, tuple(rels)).check()
    if mode != "explicit":
        raise InvalidInput(f"{where}: unknown mode {mode!r}")
    srcs = {m.name: m.src for m in morphs}
    table: Dict = {}
    for c in d.get("compositions", []):
        g, f, gf = (str(_require(c, k, where)) for k in ("g", "f", "gf"))
        if f not in srcs or g not in srcs:
            raise InvalidInput(f"{where}: composition mentions unknown morphism in ({g}, {f})")
        table[(g, f)] = Ident(srcs[f]) if gf == "ID" else gf
    return FiniteCategory(objects, morphs, table).check()


def category_to_dict(C: FiniteCategory, inverses: Optional[Mapping[str, Arrow]] = None) -> dict:
    d = {
        "format": CATEGORY_FORMAT,
        "mode": "explicit",
        "objects": list(C.objects),
        "morphisms": [{"name": m.name, "src": m.src, "tgt": m.tgt} for m in C.morphisms],
        "compositions": [
            {"g": g, "f": f, "gf": "ID" if isinstance(h, Ident) else h}
            for (g, f), h in C.table.items()
        ],
    }
    if inverses is not None:
        d["inverses"] = dict(inverses)
    return d


def presented_to_dict(P: PresentedCategory) -> dict:
    return {
        "format": CATEGORY_FORMAT,
        "mode": "presented",
        "objects": list(P.objects),
        "morphisms": [{"name": a.name, "src": a.src, "tgt": a.tgt} for a in P.arrows],
        "relations": [{"lhs": list(l), "rhs": list(r)} for l, r in P.relations],
    }


def load_category(path: PathLike) -> Union[FiniteCategory, PresentedCategory]:
    return category_from_dict(read_json(path), str(path))


def load_explicit(path: PathLike) -> FiniteCategory:
    C = load_category(path)
    if not isinstance(C, FiniteCategory):
        raise InvalidInput(f"{path}: an explicit-mode category is required here")
    return C


def groupoid_from_dict(d: Mapping, where: str = "groupoid") -> FiniteGroupoid:
    C = category_from_dict(d, where)
    if not isinstance(C, FiniteCategory):
        raise InvalidInput(f"{where}: a groupoid must be given in explicit mode")
    if "inverses" not in d:
        return as_groupoid(C)
    inv = {str(k): (Ident(C.tgt(k)) if v == "ID" else str(v)) for k, v in d["inverses"].items()}
    return FiniteGroupoid(C, inv).check()


# -- functors ------------------------------------------------------------------

def _arrow(s: str) -> Arrow:
    return Ident(s[3:]) if isinstance(s, str) and s.startswith("ID:") else s


def functor_from_dict(d: Mapping, source: FiniteCategory, target: FiniteCategory,
                      where: str = "functor") -> CatFunctor:
    om = {str(k): str(v) for k, v in _require(d, "object_map", where).items()}
    mm = {str(k): _arrow(v) for k, v in _require(d, "morphism_map", where).items()}
    for x in source.objects:
        if x not in om:
            raise InvalidInput(f"{where}: object {x!r} is not mapped")
        if not target.has_object(om[x]):
            raise InvalidInput(f"{where}: {x!r} maps to unknown object {om[x]!r}")
    for m in source.names():
        if m not in mm:
            raise InvalidInput(f"{where}: morphism {m!r} is not mapped")
        v = mm[m]
        if isinstance(v, Ident) and not target.has_object(v.obj):
            raise InvalidInput(f"{where}: unknown identity {v}")
        if not isinstance(v, Ident) and v not in target._by_name:
            raise InvalidInput(f"{where}: {m!r} maps to unknown morphism {v!r}")
    return check_functor(CatFunctor(source, target, om, mm))


def functor_to_dict(F: CatFunctor, source_file: str = "", target_file: str = "") -> dict:
    return {
        "format": FUNCTOR_FORMAT,
        "source_file": source_file,
        "target_file": target_file,
        "object_map": dict(F.object_map),
        "morphism_map": {k: (f"ID:{v.obj}" if isinstance(v, Ident) else v)
                         for k, v in F.morphism_map.items()},
    }


def _functor_parts(path: PathLike):
    d = read_json(path)
    _check_format(d, FUNCTOR_FORMAT, str(path))
    here = Path(path).parent
    src_d = read_json(here / _require(d, "source_file", str(path)))
    tgt_d = read_json(here / _require(d, "target_file", str(path)))
    return d, src_d, tgt_d


def load_functor(path: PathLike) -> CatFunctor:
    d, src_d, tgt_d = _functor_parts(path)
    S = category_from_dict(src_d, "source")
    T = category_from_dict(tgt_d, "target")
    if not isinstance(S, FiniteCategory) or not isinstance(T, FiniteCategory):
        raise InvalidInput(f"{path}: functors need explicit-mode categories")
    return functor_from_dict(d, S, T, str(path))


def load_grading(path: PathLike) -> Grading:
    d, src_d, tgt_d = _functor_parts(path)
    S = category_from_dict(src_d, "source")
    if not isinstance(S, FiniteCategory):
        raise InvalidInput(f"{path}: graded category must be explicit")
    G = groupoid_from_dict(tgt_d, "target")
    return Grading(functor_from_dict(d, S, G.category, str(path)), G)


# -- actions -------------------------------------------------------------------

def action_from_dict(C: FiniteCategory, d: Mapping, where: str = "action") -> GroupAction:
    """The first listed element is the identity; its functor and products may be omitted."""
    _check_format(d, ACTION_FORMAT, where)
    elements = tuple(str(e) for e in _require(d, "elements", where))
    if not elements:
        raise InvalidInput(f"{where}: empty group")
    e = elements[0]
    table = {}
    for k, v in d.get("table", {}).items():
        parts = k.split(",")
        if len(parts) != 2:
            raise InvalidInput(f"{where}: bad table key {k!r}")
        table[(parts[0].strip(), parts[1].strip())] = str(v)
    for a in elements:
        table.setdefault((e, a), a)
        table.setdefault((a, e), a)
    functors = {e: identity_functor(C)}
    raw = d.get("functors", {})
    for a in elements:
        if a in raw:
            functors[a] = functor_from_dict(raw[a], C, C, f"{where}[{a}]")
        elif a != e:
            raise InvalidInput(f"{where}: element {a!r} has no functor")
    return GroupAction(C, elements, table, e, functors).check()


def load_action(path: PathLike, C: Optional[FiniteCategory] = None) -> GroupAction:
    d = read_json(path)
    if C is None:
        C = load_explicit(Path(path).parent / _require(d, "category_file", str(path)))
    return action_from_dict(C, d, str(path))


def action_to_dict(A: GroupAction) -> dict:
    return A.to_dict()


__all__ = [
    "read_json", "dumps", "write_json", "category_from_dict", "category_to_dict",
    "presented_to_dict", "load_category", "load_explicit", "groupoid_from_dict",
    "functor_from_dict", "functor_to_dict", "load_functor", "load_grading",
    "action_from_dict", "load_action", "action_to_dict",
]
