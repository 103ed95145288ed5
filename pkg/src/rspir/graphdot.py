"""DOT export of a scheme's answer-pair graph.

Left nodes are database 1 answers, right nodes database 2 answers; every
pair is an edge colored by the message that pair decodes. For a valid
scheme with M1 = M2 = K each node touches all K colors exactly once.
"""
from __future__ import annotations

from .decode import DecodeTable
from .scheme import Scheme

PALETTE = (
    "red", "yellow", "green", "blue",
    "orange", "purple", "cyan", "magenta",
    "brown", "gray", "pink", "olive",
)


def export_bipartite_dot(s: Scheme, t: DecodeTable) -> str:
    if s.K > len(PALETTE):
        raise ValueError(f"palette supports up to {len(PALETTE)} messages, got K={s.K}")
    lines = [
        "graph rspir {",
        "  rankdir=LR;",
        "  node [shape=circle];",
        "  { rank=same; " + "; ".join(f"A{a}" for a in range(1, s.M1 + 1)) + "; }",
        "  { rank=same; " + "; ".join(f"B{b}" for b in range(1, s.M2 + 1)) + "; }",
    ]
    for a in range(1, s.M1 + 1):
        for b in range(1, s.M2 + 1):
            theta = t.entry(a, b).theta
            if theta is None:
                attrs = 'style=dashed, label="?"'
            else:
                attrs = f'color={PALETTE[theta - 1]}, label="W{theta}"'
            lines.append(f"  A{a} -- B{b} [{attrs}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
