"""End-to-end separation of an element from a finitely generated subgroup.

Given loops generating a subgroup H at a base vertex and a reduced loop
g outside H, the pipeline folds a wedge into an immersion, modifies it
so the failure of g's lift is recorded in the graph (a witness element
at the base, or a grafted path g's lift runs off along), enlarges all
vertex subgroups to finite index without disturbing the recorded
failure, and completes to a finite cover.  The certificate is the
cover: g's lift at the base vertex fails to close into the base
subgroup while every generator's lift still does, and anyone can
re-check both facts by lifting.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

from .completion import complete_to_cover, restriction_check
from .core import Graph, GraphOfGroups, Word, bar
from .enlargement import enlarge, exclusion_sets
from .errors import AlreadyMember, GogsepError
from .folding import cover_index, fold, trim_core, wedge
from .morphism import (
    DecoratedMorphism,
    check_cover,
    check_immersion,
    lift_loop,
    subgroup_member,
)

__all__ = [
    "SeparationCertificate",
    "VerificationReport",
    "attach_separating_path",
    "separate_element",
    "verify_certificate",
]


@dataclass
class SeparationCertificate:
    """A finite cover exhibiting g outside the subgroup of the generators."""

    target: GraphOfGroups
    u0: str
    generators: list
    element: Word
    cover: DecoratedMorphism
    base_vertex: str
    degree: int
    seed: Optional[int] = None


@dataclass
class VerificationReport:
    ok: bool
    transcript: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def attach_separating_path(m: DecoratedMorphism, u0: str, g: Word):
    """Record why g's lift at u0 fails, modifying the immersion if needed.

    Returns (morphism, status) where status is one of
      ("loop", s):  lift closes with witness s outside the base subgroup;
                    the caller must keep s out of any enlarged subgroup.
      ("open", v):  lift closes combinatorially but at the wrong fiber
                    vertex v; nothing to modify.
      ("hair", v):  lift was stuck; the unread remainder of g is grafted
                    as a path of fresh trivial vertices ending at v, so
                    the lift now runs off the base loop.
    Raises AlreadyMember when g lies in the subgroup.
    """
    g = g.validate().reduce()
    outcome = lift_loop(m, g, u0)
    if outcome.case == "closed":
        if m.vgroup_image[u0].member(outcome.element):
            raise AlreadyMember("the element lies in the subgroup")
        return m, ("loop", outcome.element)
    if outcome.case == "open_end":
        return m, ("open", outcome.end_vertex)

    i = outcome.consumed
    at = outcome.vertex
    old = m.domain.graph
    graph = Graph()
    for v in old.vertices:
        graph.add_vertex(v)
    for p in old.edge_pairs():
        graph.add_edge(p, old.iota(p), old.tau(p))
    vertex_map = dict(m.vertex_map)
    edge_map = dict(m.edge_map)
    vgroup_image = dict(m.vgroup_image)
    delta = dict(m.delta)
    oracles = {v: m.domain.group_at(v) for v in old.vertices}

    taken_v = set(old.vertices)
    taken_e = set(old.directed_edges)
    prev = at
    for j in range(i, g.n):
        v = _fresh_name("q", taken_v)
        graph.add_vertex(v)
        u = g.vertex_at(j + 1)
        vertex_map[v] = u
        oracles[v] = m.target.group_at(u)
        vgroup_image[v] = m.target.group_at(u).trivial_subgroup()
        e = _fresh_name("h", taken_e)
        taken_e.add(bar(e))
        graph.add_edge(e, prev, v)
        f = g.edges[j]
        edge_map[e] = f
        edge_map[bar(e)] = bar(f)
        delta[e] = outcome.carry if j == i else g.groups[j]
        delta[bar(e)] = m.target.group_at(u).identity()
        prev = v

    dom = GraphOfGroups(graph, oracles, base=m.domain.base)
    grafted = DecoratedMorphism(
        dom, m.target, vertex_map, edge_map, vgroup_image, delta
    )
    report = check_immersion(grafted)
    if not report.ok:
        raise GogsepError(f"graft broke the immersion: {report.violations[:3]}")
    return grafted, ("hair", prev)


def _fresh_name(prefix: str, taken: set) -> str:
    i = 1
    while f"{prefix}{i}" in taken:
        i += 1
    name = f"{prefix}{i}"
    taken.add(name)
    return name


def separate_element(
    target: GraphOfGroups,
    u0: str,
    gens: Sequence[Word],
    g: Word,
    seed: Optional[int] = None,
) -> SeparationCertificate:
    """Produce a verified finite cover separating g from <gens> at u0."""
    gens = [w.validate().reduce() for w in gens]
    g = g.validate().reduce()
    if g.start != u0 or not g.is_loop():
        raise GogsepError(f"element must be a loop at {u0!r}")

    m = trim_core(fold(wedge(target, u0, gens)))
    v0 = m.domain.base
    m, status = attach_separating_path(m, v0, g)
    extra = {v0: [status[1]]} if status[0] == "loop" else None
    enlarged = enlarge(m, exclusion_sets(m, extra=extra))
    # subgroups are allowed (and meant) to grow; everything else is frozen
    moved = [
        viol
        for viol in restriction_check(m, enlarged).violations
        if viol["kind"] != "subgroup"
    ]
    if moved:
        raise GogsepError(f"enlargement moved edge decorations: {moved[:3]}")
    for v in m.domain.graph.vertices:
        old, new = m.vgroup_image[v], enlarged.vgroup_image[v]
        if not all(new.member(s) for s in old.generators):
            raise GogsepError(f"enlargement dropped part of the subgroup at {v!r}")
    cover = complete_to_cover(enlarged, seed=seed)
    if not restriction_check(enlarged, cover).ok:
        raise GogsepError("completion moved the immersion inside the cover")

    cert = SeparationCertificate(
        target=target,
        u0=u0,
        generators=gens,
        element=g,
        cover=cover,
        base_vertex=v0,
        degree=cover_index(cover),
        seed=seed,
    )
    report = verify_certificate(cert)
    if not report.ok:
        raise GogsepError(f"emitted certificate failed its own check: {report.transcript}")
    return cert


def verify_certificate(cert: SeparationCertificate) -> VerificationReport:
    """Re-check a certificate from scratch, recording one entry per step."""
    transcript = []

    def step(name, fn):
        try:
            ok, detail = fn()
        except GogsepError as exc:
            ok, detail = False, str(exc)
        transcript.append({"check": name, "ok": ok, "detail": detail})
        return ok

    def structure():
        cert.cover.validate().require_identity_lambda()
        if not cert.target.graph.has_vertex(cert.u0):
            return False, f"unknown base vertex {cert.u0!r}"
        if not cert.cover.domain.graph.has_vertex(cert.base_vertex):
            return False, f"unknown cover vertex {cert.base_vertex!r}"
        if cert.cover.vertex_map[cert.base_vertex] != cert.u0:
            return False, "base vertex sits over the wrong target vertex"
        return True, "morphism data well-formed"

    def is_cover():
        report = check_cover(cert.cover)
        return report.ok, (
            "locally bijective" if report.ok else report.violations[:3]
        )

    def degree():
        d = cover_index(cert.cover)
        return d == cert.degree, f"degree {d}, declared {cert.degree}"

    def generators_inside():
        bad = []
        for k, w in enumerate(cert.generators, start=1):
            if not subgroup_member(cert.cover, cert.base_vertex, w):
                bad.append(k)
        return not bad, (
            "all generator lifts close into the base subgroup"
            if not bad
            else f"generators {bad} fail to lift"
        )

    def element_outside():
        outcome = lift_loop(cert.cover, cert.element, cert.base_vertex)
        if outcome.case == "stuck":
            return False, "element lift got stuck in a cover (not a cover?)"
        if outcome.case == "open_end":
            return True, f"element lift ends at {outcome.end_vertex!r}"
        inside = cert.cover.vgroup_image[cert.base_vertex].member(outcome.element)
        return not inside, (
            "element lift closes outside the base subgroup"
            if not inside
            else "element lift lands in the base subgroup"
        )

    ok = step("structure", structure)
    ok = step("cover", is_cover) and ok
    if ok:
        ok = step("degree", degree) and ok
        ok = step("generators", generators_inside) and ok
        ok = step("element", element_outside) and ok
    return VerificationReport(ok, transcript)
