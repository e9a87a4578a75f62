"""Decorated morphisms of graphs of groups with trivial edge groups.

A morphism from a domain graph of groups into a target carries, on top
of the graph map, one subgroup handle per domain vertex (the domain
vertex group, represented literally as a subgroup of the target vertex
group it maps into) and one target element delta_e per directed domain
edge, placed in the group at the image of iota(e).  Base-change loops
lambda_v are kept in the data model but normalized to identity; every
algorithm here requires that normal form.

Right cosets S*delta rule all coset bookkeeping.  The induced map on
words sends a group letter to itself and a domain edge e to

    delta_e  phi(e)  delta_{~e}^(-1)

so that distinct lifts of a target edge at a vertex v are exactly the
distinct right cosets  vgroup_image(v) * delta_e, and the image of a
reduced word under an immersion is reduced.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Optional

from .core import GraphOfGroups, Word, bar
from .errors import (
    EndpointMismatch,
    ElementOutOfGroup,
    GogsepError,
    InfiniteIndex,
    InfiniteIndexVertex,
    NonIdentityLambda,
    NotAnImmersion,
    UntracedCoset,
)
from .oracles import SubgroupHandle

__all__ = [
    "DecoratedMorphism",
    "CheckReport",
    "LiftOutcome",
    "identity_morphism",
    "canonicalize_delta",
    "local_map",
    "check_immersion",
    "check_cover",
    "induced_image",
    "lift_loop",
    "subgroup_member",
    "subgroup_generators",
]


def canonicalize_delta(handle: SubgroupHandle, d):
    """Transversal representative of S*d when available, else d as given."""
    try:
        return handle.canonical_rep(d)
    except (InfiniteIndex, UntracedCoset):
        return d


class DecoratedMorphism:
    """Graph-of-groups morphism with subgroup and delta decorations."""

    def __init__(
        self,
        domain: GraphOfGroups,
        target: GraphOfGroups,
        vertex_map: dict,
        edge_map: dict,
        vgroup_image: dict,
        delta: dict,
        lam: Optional[dict] = None,
    ):
        self.domain = domain
        self.target = target
        self.vertex_map = dict(vertex_map)
        self.edge_map = dict(edge_map)
        self.vgroup_image = dict(vgroup_image)
        self.delta = dict(delta)
        self.lam = dict(lam) if lam else None
        self.validate()

    # -- structural validity ------------------------------------------------

    def validate(self):
        dom, tgt = self.domain.graph, self.target.graph
        for v in dom.vertices:
            u = self.vertex_map.get(v)
            if u is None or not tgt.has_vertex(u):
                raise GogsepError(f"vertex {v!r} has no valid image")
            if self.domain.group_at(v) is not self.target.group_at(u):
                raise GogsepError(
                    f"domain vertex {v!r} must carry the oracle of its image {u!r}"
                )
            handle = self.vgroup_image.get(v)
            if not isinstance(handle, SubgroupHandle):
                raise GogsepError(f"vertex {v!r} has no subgroup handle")
            if handle.group is not self.target.group_at(u):
                raise GogsepError(
                    f"subgroup at {v!r} lives in the wrong vertex group"
                )
        for e in dom.directed_edges:
            f = self.edge_map.get(e)
            if f is None or not tgt.has_edge(f):
                raise GogsepError(f"edge {e!r} has no valid image")
            if self.edge_map.get(bar(e)) != bar(f):
                raise GogsepError(f"edge map breaks the involution at {e!r}")
            if self.vertex_map[dom.iota(e)] != tgt.iota(f):
                raise GogsepError(f"edge map breaks iota at {e!r}")
            d = self.delta.get(e)
            oracle = self.target.group_at(tgt.iota(f))
            oracle.check(d)
        if self.lam:
            for v, loop in self.lam.items():
                if not dom.has_vertex(v):
                    raise GogsepError(f"lambda at unknown vertex {v!r}")
                if (
                    not isinstance(loop, Word)
                    or loop.start != self.vertex_map[v]
                    or not loop.is_loop()
                ):
                    raise GogsepError(f"lambda at {v!r} is not a loop at the image")
        return self

    def require_identity_lambda(self):
        if self.lam:
            for v, loop in self.lam.items():
                if not loop.is_identity_loop():
                    raise NonIdentityLambda(
                        f"lambda at {v!r} is not the identity loop"
                    )
        return self

    # -- conveniences --------------------------------------------------------

    def phi_v(self, v: str) -> str:
        return self.vertex_map[v]

    def phi_e(self, e: str) -> str:
        return self.edge_map[e]

    def oracle_at(self, v: str):
        """The ambient target oracle a domain vertex maps into."""
        return self.target.group_at(self.vertex_map[v])

    def fiber(self, u: str) -> list[str]:
        return sorted(v for v in self.domain.graph.vertices if self.vertex_map[v] == u)

    def edge_lifts(self, v: str, f: str) -> list[str]:
        """Domain edges at v mapping onto the target edge f, sorted."""
        return [e for e in self.domain.graph.edges_at(v) if self.edge_map[e] == f]

    def copy(self, **overrides) -> "DecoratedMorphism":
        data = dict(
            domain=self.domain,
            target=self.target,
            vertex_map=self.vertex_map,
            edge_map=self.edge_map,
            vgroup_image=self.vgroup_image,
            delta=self.delta,
            lam=self.lam,
        )
        data.update(overrides)
        return DecoratedMorphism(**data)


@dataclass
class CheckReport:
    ok: bool
    violations: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


@dataclass
class LiftOutcome:
    """Result of lifting a reduced target loop through a morphism.

    case "closed":   lift is a loop; ``element`` is the terminal vertex
                     group element (membership iff it lies in the base
                     vertex subgroup).
    case "open_end": lift exists but ends at a different fiber vertex.
    case "stuck":    no edge lift matches; ``consumed`` syllables were
                     lifted, ``carry`` is the pending coset element at
                     ``vertex`` for target edge ``target_edge``.
    """

    case: str
    path_edges: tuple = ()
    end_vertex: Optional[str] = None
    element: object = None
    consumed: int = 0
    vertex: Optional[str] = None
    target_edge: Optional[str] = None
    carry: object = None


def identity_morphism(gog: GraphOfGroups) -> DecoratedMorphism:
    """The degree-1 cover of a graph of groups by itself."""
    g = gog.graph
    return DecoratedMorphism(
        domain=gog,
        target=gog,
        vertex_map={v: v for v in g.vertices},
        edge_map={e: e for e in g.directed_edges},
        vgroup_image={v: gog.group_at(v).full_subgroup() for v in g.vertices},
        delta={e: gog.group_at(g.iota(e)).identity() for e in g.directed_edges},
    )


def local_map(m: DecoratedMorphism, v: str, f: str):
    """Lifts of target edge f at domain vertex v with their coset data.

    Returns [(edge, delta_edge)] sorted by edge id; the coset attached to
    a lift e is vgroup_image(v) * delta_e.
    """
    if not m.target.graph.has_edge(f):
        raise GogsepError(f"unknown target edge {f!r}")
    if m.target.graph.iota(f) != m.phi_v(v):
        raise GogsepError(f"target edge {f!r} is not at the image of {v!r}")
    return [(e, m.delta[e]) for e in m.edge_lifts(v, f)]


def check_immersion(m: DecoratedMorphism) -> CheckReport:
    """Local injectivity: lifts of one target edge occupy distinct cosets."""
    m.validate()
    violations = []
    for v in m.domain.graph.vertices:
        handle = m.vgroup_image[v]
        for f in m.target.graph.edges_at(m.phi_v(v)):
            entries = local_map(m, v, f)
            for i in range(len(entries)):
                for j in range(i + 1, len(entries)):
                    if handle.same_coset(entries[i][1], entries[j][1]):
                        violations.append(
                            {
                                "vertex": v,
                                "target_edge": f,
                                "edges": (entries[i][0], entries[j][0]),
                            }
                        )
    return CheckReport(not violations, violations)


def check_cover(m: DecoratedMorphism) -> CheckReport:
    """Local bijectivity: at every vertex the lifts exhaust the cosets."""
    report = check_immersion(m)
    if not report.ok:
        return report
    for v in m.domain.graph.vertices:
        if m.vgroup_image[v].index() is None:
            raise InfiniteIndexVertex(
                f"subgroup at {v!r} has infinite index; no finite cover exists"
            )
    violations = []
    for v in m.domain.graph.vertices:
        handle = m.vgroup_image[v]
        need = handle.index()
        for f in m.target.graph.edges_at(m.phi_v(v)):
            entries = local_map(m, v, f)
            if len(entries) != need:
                present = {handle.canonical_rep(d) for _, d in entries}
                missing = [r for r in handle.coset_reps() if r not in present]
                violations.append(
                    {
                        "vertex": v,
                        "target_edge": f,
                        "have": len(entries),
                        "need": need,
                        "missing": missing,
                    }
                )
    return CheckReport(not violations, violations)


def induced_image(m: DecoratedMorphism, w: Word) -> Word:
    """Image of a domain word: letters pass through, edges pick up deltas."""
    m.require_identity_lambda()
    if w.gog is not m.domain:
        raise GogsepError("word does not live on the morphism's domain")
    w.validate()
    for i in range(w.n + 1):
        v = w.vertex_at(i)
        if not m.vgroup_image[v].member(w.groups[i]):
            raise ElementOutOfGroup(
                f"letter {i} is outside the vertex subgroup at {v!r}"
            )
    tgt = m.target
    if w.n == 0:
        return Word(tgt, m.phi_v(w.start), (w.groups[0],), ()).reduce()
    groups = []
    edges = []
    first = w.start
    oracle = tgt.group_at(m.phi_v(first))
    groups.append(oracle.mul(w.groups[0], m.delta[w.edges[0]]))
    for i, e in enumerate(w.edges):
        edges.append(m.phi_e(e))
        at = m.domain.graph.tau(e)
        oracle = tgt.group_at(m.phi_v(at))
        x = oracle.mul(oracle.inv(m.delta[bar(e)]), w.groups[i + 1])
        if i + 1 < w.n:
            x = oracle.mul(x, m.delta[w.edges[i + 1]])
        groups.append(x)
    return Word(tgt, m.phi_v(first), tuple(groups), tuple(edges)).reduce()


def lift_loop(m: DecoratedMorphism, g: Word, u0: str) -> LiftOutcome:
    """Lift a reduced target loop at phi(u0) through the morphism.

    Consumes g syllable by syllable; at each step the unique lift of the
    next target edge whose coset matches the accumulated carry is taken.
    Immersions make the matching edge unique; covers make it total.
    """
    m.require_identity_lambda()
    if not m.domain.graph.has_vertex(u0):
        raise GogsepError(f"unknown base vertex {u0!r}")
    if g.gog is not m.target:
        raise GogsepError("loop does not live on the morphism's target")
    if g.start != m.phi_v(u0):
        raise EndpointMismatch(
            f"loop starts at {g.start!r}, expected {m.phi_v(u0)!r}"
        )
    if not g.is_loop():
        raise EndpointMismatch("lift_loop needs a loop")
    g = g.validate().reduce()
    v = u0
    carry = g.groups[0]
    path = []
    for i, f in enumerate(g.edges):
        handle = m.vgroup_image[v]
        matches = [
            e for e in m.edge_lifts(v, f) if handle.same_coset(carry, m.delta[e])
        ]
        if not matches:
            return LiftOutcome(
                case="stuck",
                path_edges=tuple(path),
                consumed=i,
                vertex=v,
                target_edge=f,
                carry=carry,
            )
        if len(matches) > 1:
            raise NotAnImmersion(
                f"multiple lifts of {f!r} at {v!r} share a coset: {matches}"
            )
        e = matches[0]
        path.append(e)
        v = m.domain.graph.tau(e)
        oracle = m.oracle_at(v)
        carry = oracle.mul(m.delta[bar(e)], g.groups[i + 1])
    if v == u0:
        return LiftOutcome(
            case="closed", path_edges=tuple(path), end_vertex=v, element=carry,
            consumed=g.n,
        )
    return LiftOutcome(
        case="open_end", path_edges=tuple(path), end_vertex=v, consumed=g.n
    )


def subgroup_member(m: DecoratedMorphism, u0: str, g: Word) -> bool:
    """Is the target loop g in the subgroup this immersion represents?"""
    outcome = lift_loop(m, g, u0)
    return outcome.case == "closed" and m.vgroup_image[u0].member(outcome.element)


def _tree_words(m: DecoratedMorphism, u0: str) -> dict:
    """Identity-lettered domain words along a BFS spanning tree from u0."""
    dom = m.domain
    words = {u0: Word(dom, u0, (dom.group_at(u0).identity(),), ())}
    tree_edges = set()
    queue = deque([u0])
    while queue:
        v = queue.popleft()
        for e in dom.graph.edges_at(v):
            w = dom.graph.tau(e)
            if w not in words:
                step = Word(
                    dom,
                    v,
                    (dom.group_at(v).identity(), dom.group_at(w).identity()),
                    (e,),
                )
                words[w] = words[v] * step
                tree_edges.add(e)
                tree_edges.add(bar(e))
                queue.append(w)
    if len(words) != len(dom.graph.vertices):
        raise GogsepError("domain is not connected from the base vertex")
    return words, tree_edges


def subgroup_generators(m: DecoratedMorphism, u0: str) -> list[Word]:
    """Target loops generating the subgroup represented by the morphism.

    One loop per vertex-subgroup generator (conjugated along the spanning
    tree) and one per non-tree edge pair.
    """
    m.require_identity_lambda()
    words, tree_edges = _tree_words(m, u0)
    dom = m.domain
    gens = []
    for v in sorted(dom.graph.vertices):
        for s in m.vgroup_image[v].generators:
            loop = words[v] * Word(dom, v, (s,), ()) * words[v].inverse()
            gens.append(induced_image(m, loop))
    for e in sorted(dom.graph.directed_edges):
        if e.startswith("~") or e in tree_edges:
            continue
        v, w = dom.graph.iota(e), dom.graph.tau(e)
        step = Word(
            dom, v, (dom.group_at(v).identity(), dom.group_at(w).identity()), (e,)
        )
        loop = words[v] * step * words[w].inverse()
        gens.append(induced_image(m, loop))
    return [g for g in gens if not g.is_identity_loop()]
