"""Corpus specs, batch runs and the summary table."""
from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Iterator

from . import generators as gen
from .cover import cover_cubic, cover_general, cover_mindeg3, verify_bound
from .cover.core import CoverReport
from .cuts import is_bridgeless
from .errors import InvalidParameter
from .multigraph import Multigraph
from .oracle import cycle_space_dimension, shortest_cover
from .textformat import read_graph

METHODS = {"general": cover_general, "cubic": cover_cubic, "mindeg3": cover_mindeg3}
KINDS = ("named", "random-cubic", "pairing-cubic", "random-mindeg3", "planted-mindeg3", "random-general", "file-dir")


def choose_method(g: Multigraph) -> str:
    """The strongest construction whose hypothesis the graph meets."""
    if g.m and g.is_cubic():
        return "cubic"
    if g.n and g.min_degree() >= 3:
        return "mindeg3"
    return "general"


def run_cover(g: Multigraph, method: str = "auto") -> CoverReport:
    if method == "auto":
        method = choose_method(g)
    if method not in METHODS:
        raise InvalidParameter(f"unknown method {method!r}")
    return METHODS[method](g)


def cover_document(report: CoverReport, graph_id: str = "") -> dict:
    return {
        "graph_id": graph_id,
        "construction": report.construction,
        "m": report.m,
        "bound": {"num": report.bound_numerator, "den": report.bound_denominator},
        "cycles": [sorted(c) for c in report.cover.cycles],
        "total_length": report.cover.total_length,
        "d_histogram": {str(k): v for k, v in report.d_histogram.items()},
        "won": report.won,
    }


# ------------------------------------------------------------ specs
@dataclass
class CorpusSpec:
    kind: str
    n: int = 0
    m: int = 0
    count: int = 1
    seed: int = 0
    path: str = ""
    names: tuple = ()
    bridgeless: bool = True
    connected: bool = True
    extra: dict = field(default_factory=dict)

    @classmethod
    def parse(cls, text: str) -> "CorpusSpec":
        """``kind:key=value,...``, e.g. ``random-cubic:n=10,count=20,seed=1``."""
        kind, _, rest = text.partition(":")
        if kind not in KINDS:
            raise InvalidParameter(f"unknown corpus kind {kind!r}; choose from {', '.join(KINDS)}")
        spec = cls(kind)
        for item in filter(None, rest.split(",")):
            key, _, val = item.partition("=")
            if key in ("n", "m", "count", "seed"):
                setattr(spec, key, int(val))
            elif key == "path":
                spec.path = val
            elif key == "names":
                spec.names = tuple(val.split("+"))
            elif key in ("bridgeless", "connected"):
                setattr(spec, key, val.lower() in ("1", "true", "yes"))
            else:
                spec.extra[key] = val
        return spec

    def graphs(self) -> Iterator[tuple[str, Multigraph]]:
        for gid, g in self._raw():
            if self.bridgeless and not is_bridgeless(g):
                continue
            if self.connected and len([c for c in g.components() if any(g.degree(v) for v in c)]) > 1:
                continue
            yield gid, g

    def _raw(self):
        k = self.kind
        if k == "named":
            for name in self.names or tuple(gen.NAMED):
                yield name, gen.NAMED[name]()
        elif k == "file-dir":
            for p in sorted(Path(self.path).glob("*")):
                if p.is_file():
                    yield p.stem, read_graph(p)
        else:
            for i in range(self.count):
                s = self.seed * 100_003 + i
                gid = f"{k}-n{self.n}-s{self.seed}-{i:04d}"
                if k == "random-cubic":
                    yield gid, gen.gen_cubic_bridgeless(self.n, s)
                elif k == "pairing-cubic":
                    yield gid, gen.gen_cubic_pairing(self.n, s)
                elif k == "random-mindeg3":
                    yield gid, gen.gen_mindeg3(self.n, self.m, s)
                elif k == "planted-mindeg3":
                    yield gid, gen.gen_planted(self.n, self.m, s)
                elif k == "random-general":
                    yield gid, gen.gen_bridgeless(self.n, self.m, s, int(self.extra.get("maxdeg", 8)))


# ------------------------------------------------------------ runs
@dataclass
class Row:
    graph_id: str
    n: int
    m: int
    method: str
    length: int
    bound: Fraction
    ok: bool
    optimum: int | None = None
    won: str | None = None
    problems: list = field(default_factory=list)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.length, self.m) if self.m else Fraction(0)


def run_one(item, method: str = "auto", oracle_max_dim: int | None = 12) -> Row:
    gid, g = item
    report = run_cover(g, method)
    check = verify_bound(report)
    opt = None
    if oracle_max_dim is not None and cycle_space_dimension(g) <= oracle_max_dim:
        opt = shortest_cover(g).total_length
    return Row(gid, g.n, g.m, report.construction, report.cover.total_length, report.bound, bool(check),
               opt, report.won, check.problems)


def run_corpus(spec: CorpusSpec, method: str = "auto", oracle_max_dim: int | None = 12,
               workers: int = 1) -> list[Row]:
    items = list(spec.graphs())
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            rows = list(ex.map(run_one, items, [method] * len(items), [oracle_max_dim] * len(items)))
    else:
        rows = [run_one(it, method, oracle_max_dim) for it in items]
    return sorted(rows, key=lambda r: r.graph_id)


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator} ({float(x):.4f})"


def summary_table(rows: list[Row]) -> str:
    head = ["graph", "n", "m", "method", "length", "bound", "optimum", "length/m", "ok"]
    body = [[r.graph_id, str(r.n), str(r.m), r.method, str(r.length), str(r.bound),
             "-" if r.optimum is None else str(r.optimum), _frac(r.ratio), "yes" if r.ok else "NO"]
            for r in rows]
    widths = [max(len(x) for x in col) for col in zip(head, *body)]
    lines = ["  ".join(x.ljust(w) for x, w in zip(line, widths)).rstrip() for line in [head] + body]
    failed = sum(1 for r in rows if not r.ok)
    worst = max((r.ratio for r in rows), default=Fraction(0))
    lines.append(f"{len(rows)} graphs, {failed} failed, worst length/m {_frac(worst)}")
    return "\n".join(lines) + "\n"


def rows_json(rows: list[Row]) -> str:
    return json.dumps([{"graph_id": r.graph_id, "n": r.n, "m": r.m, "method": r.method, "length": r.length,
                        "bound": str(r.bound), "optimum": r.optimum, "ok": r.ok} for r in rows], indent=1)
