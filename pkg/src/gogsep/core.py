"""Graphs, graphs of groups, and words in the path groupoid.

A graph is given by directed edges closed under a fixed-point-free
involution: declaring an edge ``e: u -> w`` also creates its reverse
``~e: w -> u``.  A graph of groups attaches a vertex group oracle to
every vertex; all edge groups are trivial, so a word is an alternating
chain  g0 e1 g1 ... en gn  with each ``gi`` an element of the vertex
group where it sits.  Reduction deletes ``e 1 ~e`` subwords and merges
the flanking elements; reduced words are the canonical representatives
of path-groupoid elements.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import (
    ComposabilityError,
    EdgeChainBroken,
    ElementOutOfGroup,
    EndpointMismatch,
    ForeignElement,
    GogsepError,
)
from .oracles import VertexGroup

__all__ = [
    "Graph",
    "GraphOfGroups",
    "Word",
    "bar",
    "validate",
    "reduce_word",
    "cyclic_reduce",
    "groupoid_mul",
    "groupoid_inv",
]


def bar(edge: str) -> str:
    """The reverse of a directed edge id."""
    return edge[1:] if edge.startswith("~") else "~" + edge


class Graph:
    """Finite graph with involutive directed edges."""

    def __init__(self):
        self._vertices: list[str] = []
        self._iota: dict[str, str] = {}

    def add_vertex(self, v: str):
        if not isinstance(v, str) or not v:
            raise GogsepError(f"vertex id must be a non-empty string: {v!r}")
        if v in self._vertices:
            raise GogsepError(f"duplicate vertex {v!r}")
        self._vertices.append(v)
        return v

    def add_edge(self, name: str, frm: str, to: str):
        """Declare the edge pair name: frm -> to and ~name: to -> frm."""
        if not isinstance(name, str) or not name or name.startswith("~"):
            raise GogsepError(f"edge id must not start with '~': {name!r}")
        if name in self._iota:
            raise GogsepError(f"duplicate edge {name!r}")
        for v in (frm, to):
            if v not in self._vertices:
                raise GogsepError(f"edge {name!r} touches unknown vertex {v!r}")
        self._iota[name] = frm
        self._iota[bar(name)] = to
        return name

    @property
    def vertices(self) -> list[str]:
        return list(self._vertices)

    @property
    def directed_edges(self) -> list[str]:
        return sorted(self._iota)

    def edge_pairs(self) -> list[str]:
        """Canonical orientation (the non-~ id) of every edge pair."""
        return sorted(e for e in self._iota if not e.startswith("~"))

    def has_vertex(self, v) -> bool:
        return v in self._vertices

    def has_edge(self, e) -> bool:
        return e in self._iota

    def iota(self, e: str) -> str:
        if e not in self._iota:
            raise GogsepError(f"unknown edge {e!r}")
        return self._iota[e]

    def tau(self, e: str) -> str:
        return self.iota(bar(e))

    def edges_at(self, v: str) -> list[str]:
        """Directed edges with iota(e) = v, in sorted id order."""
        return sorted(e for e, src in self._iota.items() if src == v)

    def is_connected(self) -> bool:
        if not self._vertices:
            return True
        seen = {self._vertices[0]}
        stack = [self._vertices[0]]
        while stack:
            v = stack.pop()
            for e in self.edges_at(v):
                w = self.tau(e)
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self._vertices)


class GraphOfGroups:
    """A connected graph with a vertex group oracle at every vertex."""

    def __init__(self, graph: Graph, vertex_group: dict, base: Optional[str] = None):
        self.graph = graph
        self.vertex_group: dict[str, VertexGroup] = dict(vertex_group)
        for v in graph.vertices:
            if v not in self.vertex_group:
                raise GogsepError(f"vertex {v!r} has no group oracle")
        for v in self.vertex_group:
            if not graph.has_vertex(v):
                raise GogsepError(f"oracle attached to unknown vertex {v!r}")
        if not graph.is_connected():
            raise GogsepError("graph of groups must be connected")
        if base is not None and not graph.has_vertex(base):
            raise GogsepError(f"base vertex {base!r} not in graph")
        self.base = base

    def group_at(self, v: str) -> VertexGroup:
        if v not in self.vertex_group:
            raise GogsepError(f"unknown vertex {v!r}")
        return self.vertex_group[v]

    def identity_word(self, v: str) -> "Word":
        return Word(self, v, (self.group_at(v).identity(),), ())


@dataclass(frozen=True)
class Word:
    """Alternating word g0 e1 g1 ... en gn with an explicit start vertex.

    Immutable; arithmetic returns new reduced words.  Equality is
    structural on (start, groups, edges), so only compare words over the
    same graph of groups.
    """

    gog: GraphOfGroups
    start: str
    groups: tuple
    edges: tuple

    def __post_init__(self):
        if len(self.groups) != len(self.edges) + 1:
            raise GogsepError("word needs n+1 group letters for n edges")

    @property
    def n(self) -> int:
        return len(self.edges)

    def vertex_at(self, i: int) -> str:
        """The vertex where group letter i sits."""
        return self.start if i == 0 else self.gog.graph.tau(self.edges[i - 1])

    @property
    def end(self) -> str:
        return self.vertex_at(self.n)

    def is_loop(self) -> bool:
        return self.start == self.end

    def validate(self):
        g = self.gog.graph
        if not g.has_vertex(self.start):
            raise EdgeChainBroken(f"unknown start vertex {self.start!r}")
        v = self.start
        for i, e in enumerate(self.edges):
            if not g.has_edge(e):
                raise EdgeChainBroken(f"unknown edge {e!r}")
            if g.iota(e) != v:
                raise EdgeChainBroken(
                    f"edge {e!r} leaves {g.iota(e)!r}, expected {v!r}"
                )
            v = g.tau(e)
        for i, x in enumerate(self.groups):
            try:
                self.gog.group_at(self.vertex_at(i)).check(x)
            except ForeignElement as exc:
                raise ElementOutOfGroup(
                    f"letter {i} at vertex {self.vertex_at(i)!r}: {exc}"
                ) from exc
        return self

    def is_reduced(self) -> bool:
        for i in range(self.n - 1):
            mid_oracle = self.gog.group_at(self.vertex_at(i + 1))
            if self.edges[i + 1] == bar(self.edges[i]) and mid_oracle.is_identity(
                self.groups[i + 1]
            ):
                return False
        return True

    def reduce(self) -> "Word":
        """Delete e 1 ~e subwords until none remain (confluent)."""
        gog = self.gog
        graph = gog.graph
        groups = [self.groups[0]]
        edges: list[str] = []
        verts = [self.start]
        for e, g in zip(self.edges, self.groups[1:]):
            if (
                edges
                and e == bar(edges[-1])
                and gog.group_at(graph.iota(e)).is_identity(groups[-1])
            ):
                edges.pop()
                groups.pop()
                verts.pop()
                prev = groups.pop()
                groups.append(gog.group_at(verts[-1]).mul(prev, g))
            else:
                edges.append(e)
                groups.append(g)
                verts.append(graph.tau(e))
        return Word(gog, self.start, tuple(groups), tuple(edges))

    def cyclic_reduce(self) -> "Word":
        """Cyclically reduced conjugate of a loop; may move the base vertex."""
        if not self.is_loop():
            raise EndpointMismatch("cyclic reduction needs a loop")
        w = self.reduce()
        while (
            w.n >= 2
            and w.edges[0] == bar(w.edges[-1])
            and w.gog.group_at(w.start).is_identity(
                w.gog.group_at(w.start).mul(w.groups[-1], w.groups[0])
            )
        ):
            w = Word(
                w.gog,
                w.gog.graph.tau(w.edges[0]),
                w.groups[1:-1],
                w.edges[1:-1],
            )
        return w

    def inverse(self) -> "Word":
        gog = self.gog
        groups = []
        for i in range(self.n, -1, -1):
            groups.append(gog.group_at(self.vertex_at(i)).inv(self.groups[i]))
        edges = tuple(bar(e) for e in reversed(self.edges))
        return Word(gog, self.end, tuple(groups), edges).reduce()

    def __mul__(self, other: "Word") -> "Word":
        if self.gog is not other.gog:
            raise ComposabilityError("words over different graphs of groups")
        if self.end != other.start:
            raise ComposabilityError(
                f"cannot compose: ends at {self.end!r}, next starts at {other.start!r}"
            )
        joined = self.gog.group_at(self.end).mul(self.groups[-1], other.groups[0])
        return Word(
            self.gog,
            self.start,
            self.groups[:-1] + (joined,) + other.groups[1:],
            self.edges + other.edges,
        ).reduce()

    def is_identity_loop(self) -> bool:
        w = self.reduce()
        return w.n == 0 and w.gog.group_at(w.start).is_identity(w.groups[0])

    def letters(self) -> list:
        """Flat alternating list g0, e1, g1, ..., en, gn."""
        out: list = [self.groups[0]]
        for e, g in zip(self.edges, self.groups[1:]):
            out.append(e)
            out.append(g)
        return out

    def as_strings(self) -> list[str]:
        out = []
        for i, x in enumerate(self.letters()):
            if i % 2 == 0:
                oracle = self.gog.group_at(self.vertex_at(i // 2))
                out.append(oracle.format_element(x))
            else:
                out.append(x)
        return out

    def key(self):
        """Hashable identity of the word (structure only)."""
        return (self.start, self.groups, self.edges)

    def __eq__(self, other):
        return isinstance(other, Word) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Word({self.start!r}, {self.as_strings()})"


def validate(gog: GraphOfGroups, w: Word):
    """Check chain consistency and letter membership; describe endpoints."""
    if w.gog is not gog:
        raise GogsepError("word belongs to a different graph of groups")
    w.validate()
    return {"start": w.start, "end": w.end, "is_loop": w.is_loop()}


def reduce_word(w: Word) -> Word:
    return w.reduce()


def cyclic_reduce(l: Word) -> Word:
    return l.cyclic_reduce()


def groupoid_mul(a: Word, b: Word) -> Word:
    return a * b


def groupoid_inv(w: Word) -> Word:
    return w.inverse()
