"""Completion of a finite-index immersion to a finite cover.

Every fiber is padded with fresh full-group vertices up to the common
degree d = max over target vertices of the summed subgroup indices.
For each target edge pair the existing lifts claim one coset slot on
each side; the free slots are then matched left-to-right, both sides
in lexicographic order, or with the right side shuffled by a seed.
The original morphism embeds in the result unchanged.
"""

from __future__ import annotations

import random
from typing import Optional

from .core import Graph, GraphOfGroups, bar
from .errors import GogsepError, InfiniteIndexVertex, NotACover, NotAnImmersion
from .morphism import CheckReport, DecoratedMorphism, check_cover, check_immersion

__all__ = ["complete_to_cover", "restriction_check"]


def _fresh(prefix: str, taken: set) -> str:
    i = 1
    while f"{prefix}{i}" in taken:
        i += 1
    name = f"{prefix}{i}"
    taken.add(name)
    return name


def complete_to_cover(
    m: DecoratedMorphism, seed: Optional[int] = None
) -> DecoratedMorphism:
    report = check_immersion(m)
    if not report.ok:
        raise NotAnImmersion(f"cannot complete: {report.violations[:3]}")
    for v in m.domain.graph.vertices:
        if m.vgroup_image[v].index() is None:
            raise InfiniteIndexVertex(
                f"subgroup at {v!r} has infinite index; completion needs finite index"
            )

    tgt = m.target.graph
    fibers = {u: m.fiber(u) for u in tgt.vertices}
    degrees = {
        u: sum(m.vgroup_image[v].index() for v in fibers[u]) for u in tgt.vertices
    }
    d = max(degrees.values())

    vertex_map = dict(m.vertex_map)
    vgroup_image = dict(m.vgroup_image)
    taken_vertices = set(m.domain.graph.vertices)
    for u in sorted(tgt.vertices):
        for _ in range(d - degrees[u]):
            z = _fresh("z", taken_vertices)
            fibers[u].append(z)
            vertex_map[z] = u
            vgroup_image[z] = m.target.group_at(u).full_subgroup()

    edge_map = dict(m.edge_map)
    delta = dict(m.delta)
    new_edges = []
    taken_edges = set(m.domain.graph.directed_edges)
    for f in tgt.edge_pairs():
        fb = bar(f)
        lhs = {}
        for v in sorted(fibers[tgt.iota(f)]):
            handle = vgroup_image[v]
            for r in handle.coset_reps():
                lhs[(v, handle.canonical_rep(r))] = None
        rhs = {}
        for w in sorted(fibers[tgt.tau(f)]):
            handle = vgroup_image[w]
            for r in handle.coset_reps():
                rhs[(w, handle.canonical_rep(r))] = None
        for e in m.domain.graph.directed_edges:
            if m.edge_map[e] != f:
                continue
            v, w = m.domain.graph.iota(e), m.domain.graph.tau(e)
            lkey = (v, vgroup_image[v].canonical_rep(m.delta[e]))
            rkey = (w, vgroup_image[w].canonical_rep(m.delta[bar(e)]))
            if lkey not in lhs or rkey not in rhs:
                raise GogsepError(f"lift {e!r} claims a slot outside its fiber")
            if lhs[lkey] is not None or rhs[rkey] is not None:
                raise NotAnImmersion(f"lifts of {f!r} collide on a coset slot")
            lhs[lkey] = e
            rhs[rkey] = e
        free_l = [k for k, taken in lhs.items() if taken is None]
        free_r = [k for k, taken in rhs.items() if taken is None]
        if len(free_l) != len(free_r):
            raise GogsepError("slot counts disagree; fibers are inconsistent")

        def slot_sort(key):
            v, rep = key
            return (v, m.target.group_at(vertex_map[v]).sort_key(rep))

        free_l.sort(key=slot_sort)
        free_r.sort(key=slot_sort)
        if seed is not None:
            random.Random(f"{seed}|{f}").shuffle(free_r)
        for (v, lrep), (w, rrep) in zip(free_l, free_r):
            e = _fresh("n", taken_edges)
            taken_edges.add(bar(e))
            new_edges.append((e, v, w))
            edge_map[e] = f
            edge_map[bar(e)] = fb
            delta[e] = lrep
            delta[bar(e)] = rrep

    graph = Graph()
    for v in m.domain.graph.vertices:
        graph.add_vertex(v)
    for z in sorted(taken_vertices - set(m.domain.graph.vertices)):
        graph.add_vertex(z)
    for p in m.domain.graph.edge_pairs():
        graph.add_edge(p, m.domain.graph.iota(p), m.domain.graph.tau(p))
    for e, v, w in new_edges:
        graph.add_edge(e, v, w)

    oracles = {v: m.target.group_at(vertex_map[v]) for v in graph.vertices}
    dom = GraphOfGroups(graph, oracles, base=m.domain.base)
    cover = DecoratedMorphism(
        dom, m.target, vertex_map, edge_map, vgroup_image, delta
    )
    ok = check_cover(cover)
    if not ok.ok:
        raise NotACover(f"completion failed to close up: {ok.violations[:3]}")
    return cover


def restriction_check(
    small: DecoratedMorphism, big: DecoratedMorphism
) -> CheckReport:
    """Does big restrict to small on small's vertices and edges, verbatim?"""
    violations = []
    if small.target is not big.target:
        violations.append({"kind": "target", "detail": "different targets"})
        return CheckReport(False, violations)
    for v in small.domain.graph.vertices:
        if not big.domain.graph.has_vertex(v):
            violations.append({"kind": "vertex-missing", "vertex": v})
            continue
        if small.vertex_map[v] != big.vertex_map[v]:
            violations.append({"kind": "vertex-image", "vertex": v})
        if small.vgroup_image[v].canonical_key() != big.vgroup_image[v].canonical_key():
            violations.append({"kind": "subgroup", "vertex": v})
    for e in small.domain.graph.directed_edges:
        if not big.domain.graph.has_edge(e):
            violations.append({"kind": "edge-missing", "edge": e})
            continue
        if small.edge_map[e] != big.edge_map[e]:
            violations.append({"kind": "edge-image", "edge": e})
            continue
        oracle = small.oracle_at(small.domain.graph.iota(e))
        same = oracle.is_identity(
            oracle.mul(small.delta[e], oracle.inv(big.delta[e]))
        )
        if not same:
            violations.append({"kind": "delta", "edge": e})
    return CheckReport(not violations, violations)
