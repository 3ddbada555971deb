"""The free monoid on the edge alphabet, its prefix order, and graph paths.

Words are plain tuples of edge ids; the empty tuple is the identity ``e``.
A word need not be composable in any graph. ``GraphPath`` is the
composable specialization, where a path ``f1 ... fn`` requires
``r(fi) == s(f(i+1))`` and length-0 paths are vertices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence, Union

from .graph import DirectedGraph, GraphError

Word = tuple[str, ...]
EMPTY: Word = ()


class _Infinity:
    """The join of two incomparable words."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()
JoinResult = Union[Word, _Infinity]


class NotPrefix(ValueError):
    pass


class NonComposable(GraphError):
    pass


def le(s: Sequence[str], t: Sequence[str]) -> bool:
    """``s <= t`` in the prefix order."""
    return len(s) <= len(t) and tuple(t[: len(s)]) == tuple(s)


def join(s: JoinResult, t: JoinResult) -> JoinResult:
    """Least upper bound in the prefix order, or ``INFINITY`` if none exists."""
    if s is INFINITY or t is INFINITY:
        return INFINITY
    if le(s, t):
        return tuple(t)
    if le(t, s):
        return tuple(s)
    return INFINITY


def longest_common_prefix(s: Sequence[str], t: Sequence[str]) -> Word:
    n = 0
    for a, b in zip(s, t):
        if a != b:
            break
        n += 1
    return tuple(s[:n])


def left_quotient(s: Sequence[str], t: Sequence[str]) -> Word:
    """The unique ``r`` with ``s + r == t``."""
    if not le(s, t):
        raise NotPrefix(f"{format_word(s)} is not a prefix of {format_word(t)}")
    return tuple(t[len(s):])


def d_st(s: Sequence[str], t: Sequence[str], c: Sequence[str]) -> Word:
    """Nonidentity word separating ``s^-1 c`` from ``t^-1 c``.

    With ``a = s^-1 c`` and ``b = t^-1 c`` comparable and distinct, returns
    ``a^-1 b`` if ``a < b`` and ``b^-1 a`` otherwise.
    """
    s, t, c = tuple(s), tuple(t), tuple(c)
    if s == t:
        raise ValueError("d_st requires s != t")
    if not (le(s, c) and le(t, c)):
        raise ValueError("d_st requires s <= c and t <= c")
    a = left_quotient(s, c)
    b = left_quotient(t, c)
    if join(a, b) is INFINITY:
        raise ValueError("d_st requires s^-1 c and t^-1 c to be comparable")
    return left_quotient(a, b) if len(a) < len(b) else left_quotient(b, a)


def parse_word(text: str) -> Word:
    """Parse a comma-separated edge list; ``""`` or ``@v`` give the empty word."""
    text = text.strip()
    if not text or text.startswith("@"):
        return EMPTY
    letters = tuple(x.strip() for x in text.split(","))
    if any(not x or any(ch.isspace() for ch in x) for x in letters):
        raise ValueError(f"malformed word literal {text!r}")
    return letters


def format_word(w: Sequence[str]) -> str:
    return ",".join(w) if w else "e"


@dataclass(frozen=True, order=True)
class GraphPath:
    """A composable path with explicit endpoints.

    For length-0 paths ``start == end`` is the vertex and ``edges`` is empty.
    """

    edges: Word
    start: str
    end: str

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def is_vertex(self) -> bool:
        return not self.edges

    def le(self, other: "GraphPath") -> bool:
        """Prefix order on paths; a vertex is below every path leaving it."""
        return self.start == other.start and le(self.edges, other.edges)

    def quotient(self, other: "GraphPath") -> "GraphPath":
        """The path ``r`` with ``self . r == other``; requires ``self.le(other)``."""
        if not self.le(other):
            raise NotPrefix(f"{self} is not a prefix of {other}")
        return GraphPath(other.edges[len(self.edges):], self.end, other.end)

    def concat(self, other: "GraphPath") -> "GraphPath":
        if self.end != other.start:
            raise NonComposable(f"cannot compose {self} with {other}")
        return GraphPath(self.edges + other.edges, self.start, other.end)

    def literal(self) -> str:
        return ",".join(self.edges) if self.edges else f"@{self.start}"

    def __str__(self) -> str:
        return self.literal()


def vertex_path(g: DirectedGraph, v: str) -> GraphPath:
    g.check_vertex(v)
    return GraphPath(EMPTY, v, v)


def is_graph_path(g: DirectedGraph, w: Sequence[str]) -> bool:
    edges = [g.edge(f) for f in w]
    return all(a.dst == b.src for a, b in zip(edges, edges[1:]))


def to_path(g: DirectedGraph, w: Sequence[str], vertex: str | None = None) -> GraphPath:
    """Promote a word to a graph path; the empty word needs a basepoint vertex."""
    w = tuple(w)
    if not w:
        if vertex is None:
            raise ValueError("the empty word needs a vertex")
        return vertex_path(g, vertex)
    if not is_graph_path(g, w):
        raise NonComposable(f"word {format_word(w)} is not composable")
    return GraphPath(w, g.source(w[0]), g.range(w[-1]))


def parse_path(g: DirectedGraph, text: str) -> GraphPath:
    text = text.strip()
    if text.startswith("@"):
        return vertex_path(g, text[1:])
    return to_path(g, parse_word(text))


def enumerate_paths(g: DirectedGraph, max_len: int) -> list[list[GraphPath]]:
    """All graph paths of length ``0..max_len``, grouped by length, each level sorted."""
    if g.omega:
        raise GraphError("cannot enumerate paths of a graph with omega vertices")
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    levels = [[vertex_path(g, v) for v in g.vertices]]
    by_src: dict[str, list] = {v: g.edges_from(v) for v in g.vertices}
    frontier = [GraphPath((e.id,), e.src, e.dst) for e in g.edges]
    for k in range(1, max_len + 1):
        if k > 1:
            frontier = [
                GraphPath(p.edges + (e.id,), p.start, e.dst)
                for p in levels[-1]
                for e in by_src[p.end]
            ]
        levels.append(sorted(frontier, key=lambda p: p.edges))
    return levels


def all_words(alphabet: Iterable[str], max_len: int) -> list[Word]:
    """Every word of length ``<= max_len`` over ``alphabet``, shortest first."""
    letters = sorted(alphabet)
    out: list[Word] = [EMPTY]
    level: list[Word] = [EMPTY]
    for _ in range(max_len):
        level = [w + (a,) for w in level for a in letters]
        out.extend(level)
    return out
