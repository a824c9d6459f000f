"""Plain-text graph files.

::

    # comment
    mg <n> <m>
    v <id>
    e <edge-id> <u> <v> [<weight>]

Loops are ``u == v``; parallel edges are distinct edge ids. :func:`dumps`
writes a canonical form, so ``dumps(loads(dumps(g))) == dumps(g)``.
"""
from __future__ import annotations

from pathlib import Path

from .errors import GraphFormatError
from .multigraph import Multigraph


def dumps(g: Multigraph) -> str:
    lines = [f"mg {g.n} {g.m}"]
    lines += [f"v {v}" for v in g.vertices]
    for e, (u, v) in g.edge_items():
        if g.weighted:
            lines.append(f"e {e} {u} {v} {g.weight(e)}")
        else:
            lines.append(f"e {e} {u} {v}")
    return "\n".join(lines) + "\n"


def loads(text: str) -> Multigraph:
    header = None
    vertices: list[int] = []
    edges: dict[int, tuple[int, int]] = {}
    weights: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tok = line.split()
        try:
            if tok[0] == "mg" and len(tok) == 3:
                if header is not None:
                    raise GraphFormatError(f"line {lineno}: duplicate header")
                header = (int(tok[1]), int(tok[2]))
            elif header is None:
                raise GraphFormatError(f"line {lineno}: expected 'mg <n> <m>' header first")
            elif tok[0] == "v" and len(tok) == 2:
                vertices.append(int(tok[1]))
            elif tok[0] == "e" and len(tok) in (4, 5):
                e = int(tok[1])
                if e in edges:
                    raise GraphFormatError(f"line {lineno}: duplicate edge id {e}")
                edges[e] = (int(tok[2]), int(tok[3]))
                if len(tok) == 5:
                    weights[e] = int(tok[4])
                    if weights[e] < 0:
                        raise GraphFormatError(f"line {lineno}: negative weight")
            else:
                raise GraphFormatError(f"line {lineno}: cannot parse {raw!r}")
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: {exc}") from None
    if header is None:
        raise GraphFormatError("missing 'mg <n> <m>' header")
    if weights and len(weights) != len(edges):
        raise GraphFormatError("either every edge carries a weight or none does")
    g = Multigraph(vertices, edges, weights or None)
    if (g.n, g.m) != header:
        raise GraphFormatError(f"header says n={header[0]} m={header[1]}, found n={g.n} m={g.m}")
    return g


def read_graph(path) -> Multigraph:
    return loads(Path(path).read_text())


def write_graph(g: Multigraph, path) -> None:
    Path(path).write_text(dumps(g))
