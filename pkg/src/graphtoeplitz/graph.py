"""Directed graphs, their text format, and the structural predicates used by
the faithfulness and simplicity criteria.

Conventions: an edge ``f`` goes from ``src = s(f)`` to ``dst = r(f)``.
Vertices listed in ``omega`` are declared to emit infinitely many edges in
addition to the listed ones.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Mapping

OMEGA = "omega"


class GraphError(ValueError):
    """Raised for malformed graph input or references to unknown ids."""


@dataclass(frozen=True)
class Edge:
    id: str
    src: str
    dst: str


def _check_id(ident: str) -> None:
    if not ident or any(ch.isspace() for ch in ident):
        raise GraphError(f"invalid identifier {ident!r}")


@dataclass(frozen=True)
class DirectedGraph:
    """Immutable directed graph with optional omega-emitter annotations."""

    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]
    omega: frozenset[str] = frozenset()
    _edge_index: Mapping[str, Edge] = field(init=False, repr=False, compare=False)
    _vertex_set: frozenset[str] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        verts = tuple(sorted(self.vertices))
        if len(set(verts)) != len(verts):
            raise GraphError("duplicate vertex id")
        for v in verts:
            _check_id(v)
        vset = set(verts)
        index: dict[str, Edge] = {}
        for e in self.edges:
            _check_id(e.id)
            if e.id in index or e.id in vset:
                raise GraphError(f"duplicate id {e.id!r}")
            if e.src not in vset or e.dst not in vset:
                raise GraphError(f"edge {e.id!r} references undeclared vertex")
            index[e.id] = e
        if not set(self.omega) <= vset:
            raise GraphError("omega vertices must be declared vertices")
        object.__setattr__(self, "vertices", verts)
        object.__setattr__(self, "edges", tuple(sorted(self.edges, key=lambda e: e.id)))
        object.__setattr__(self, "omega", frozenset(self.omega))
        object.__setattr__(self, "_edge_index", index)
        object.__setattr__(self, "_vertex_set", frozenset(verts))

    @classmethod
    def from_edges(
        cls,
        vertices: Iterable[str],
        edges: Iterable[tuple[str, str, str]],
        omega: Iterable[str] = (),
    ) -> "DirectedGraph":
        return cls(tuple(vertices), tuple(Edge(*e) for e in edges), frozenset(omega))

    def edge(self, f: str) -> Edge:
        try:
            return self._edge_index[f]
        except KeyError:
            raise GraphError(f"unknown edge {f!r}") from None

    def has_vertex(self, v: str) -> bool:
        return v in self._vertex_set

    def check_vertex(self, v: str) -> None:
        if v not in self._vertex_set:
            raise GraphError(f"unknown vertex {v!r}")

    def source(self, f: str) -> str:
        return self.edge(f).src

    def range(self, f: str) -> str:
        return self.edge(f).dst

    def edges_from(self, v: str) -> list[Edge]:
        self.check_vertex(v)
        return [e for e in self.edges if e.src == v]

    def edges_into(self, v: str) -> list[Edge]:
        self.check_vertex(v)
        return [e for e in self.edges if e.dst == v]

    @property
    def edge_ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.edges)

    def to_text(self) -> str:
        lines = []
        for v in self.vertices:
            lines.append(f"vertex {v} omega" if v in self.omega else f"vertex {v}")
        lines.extend(f"edge {e.id} {e.src} {e.dst}" for e in self.edges)
        return "\n".join(lines) + "\n"


def parse_graph(text: str) -> DirectedGraph:
    """Parse the line-oriented graph format.

    Each nonblank, non-comment line is ``vertex <id> [omega]`` or
    ``edge <id> <src> <dst>``. Errors carry the 1-based line number.
    """
    vertices: list[str] = []
    omega: set[str] = set()
    edges: list[Edge] = []
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        kind = parts[0]
        if kind == "vertex" and len(parts) in (2, 3):
            vid = parts[1]
            if len(parts) == 3 and parts[2] != OMEGA:
                raise GraphError(f"line {lineno}: unknown vertex flag {parts[2]!r}")
            if vid in seen:
                raise GraphError(f"line {lineno}: duplicate id {vid!r}")
            seen.add(vid)
            vertices.append(vid)
            if len(parts) == 3:
                omega.add(vid)
        elif kind == "edge" and len(parts) == 4:
            eid, src, dst = parts[1:]
            if eid in seen:
                raise GraphError(f"line {lineno}: duplicate id {eid!r}")
            for v in (src, dst):
                if v not in vertices:
                    raise GraphError(f"line {lineno}: edge {eid!r} references undeclared vertex {v!r}")
            seen.add(eid)
            edges.append(Edge(eid, src, dst))
        else:
            raise GraphError(f"line {lineno}: malformed line {raw.strip()!r}")
    return DirectedGraph(tuple(vertices), tuple(edges), frozenset(omega))


def out_degree(g: DirectedGraph, v: str) -> int | str:
    """Number of listed edges leaving ``v``, or ``OMEGA`` for declared infinite emitters."""
    g.check_vertex(v)
    if v in g.omega:
        return OMEGA
    return len(g.edges_from(v))


def sinks(g: DirectedGraph) -> list[str]:
    return [v for v in g.vertices if v not in g.omega and not g.edges_from(v)]


def sources(g: DirectedGraph) -> list[str]:
    targets = {e.dst for e in g.edges}
    return [v for v in g.vertices if v not in targets]


def _successors(g: DirectedGraph) -> dict[str, list[str]]:
    succ: dict[str, list[str]] = {v: [] for v in g.vertices}
    for e in g.edges:
        succ[e.src].append(e.dst)
    return succ


def reachable_from(g: DirectedGraph, v: str) -> set[str]:
    """Vertices reachable from ``v`` by a path of length >= 0."""
    g.check_vertex(v)
    succ = _successors(g)
    seen = {v}
    queue = deque([v])
    while queue:
        w = queue.popleft()
        for x in succ[w]:
            if x not in seen:
                seen.add(x)
                queue.append(x)
    return seen


def hereditary_closure(g: DirectedGraph, vertices: Iterable[str]) -> list[str]:
    """Smallest superset closed under following edges forward."""
    closed: set[str] = set()
    for v in vertices:
        closed |= reachable_from(g, v)
    return sorted(closed)


def is_transitive(g: DirectedGraph) -> tuple[bool, tuple[str, str] | None]:
    """Whether every ordered pair of vertices is joined by a directed path.

    The pair ``(v, v)`` is always joined by the empty path. Returns the first
    failing pair in lexicographic order as a witness.
    """
    for v in g.vertices:
        reach = reachable_from(g, v)
        for w in g.vertices:
            if w not in reach:
                return False, (v, w)
    return True, None


def compact_ideal_support(g: DirectedGraph) -> list[str]:
    """Vertices ``v`` whose point mass acts compactly on the left: the finite emitters."""
    return [v for v in g.vertices if v not in g.omega]


@dataclass(frozen=True)
class SimplicityVerdict:
    simple: bool | None
    reasons: tuple[str, ...]

    @property
    def applicable(self) -> bool:
        return self.simple is not None


def simplicity_verdict(g: DirectedGraph) -> SimplicityVerdict:
    """Decide simplicity of the Toeplitz algebra of ``g``.

    Simple iff every vertex emits infinitely many edges and the graph is
    transitive. Graphs with no edges and no omega vertices fall outside the
    criterion and get ``simple=None``.
    """
    if not g.edges and not g.omega:
        return SimplicityVerdict(None, ("not applicable: graph has no edges",))
    reasons = [f"vertex {v} emits finitely many edges" for v in g.vertices if v not in g.omega]
    ok, witness = is_transitive(g)
    if not ok:
        reasons.append(f"({witness[0]},{witness[1]}) not joined")
    return SimplicityVerdict(not reasons, tuple(reasons))
