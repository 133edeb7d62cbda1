"""Deterministic Graphviz export."""
from __future__ import annotations

import json


def _q(s: str) -> str:
    # JSON string escaping is valid DOT quoting for our names
    return json.dumps(s, ensure_ascii=False)


def render_dot(C, name: str = "C") -> str:
    """DOT text for a category or a cover ball.

    Nodes and edges come out in lexicographic order so identical inputs
    give byte-identical output. For a ball, boundary objects are dashed and
    objects over the same base object share a rank.
    """
    ball = None
    if hasattr(C, "boundary") and hasattr(C, "projection"):
        ball, C = C, C.category
    boundary = set(ball.boundary) if ball is not None else set()
    lines = [f"digraph {_q(name)} {{", "  rankdir=LR;"]
    for x in sorted(C.objects):
        style = ", style=dashed" if x in boundary else ""
        lines.append(f"  {_q(x)} [label={_q(x)}{style}];")
    if ball is not None:
        for b in sorted(ball.base_category.objects):
            members = sorted(x for x in C.objects if ball.projection.obj(x) == b)
            lines.append("  { rank=same; " + " ".join(_q(x) for x in members) + " }")
    for s, t, n in sorted((m.src, m.tgt, m.name) for m in C.morphisms):
        lines.append(f"  {_q(s)} -> {_q(t)} [label={_q(n)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
