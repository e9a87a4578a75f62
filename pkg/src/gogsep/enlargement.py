"""Vertex-subgroup enlargement driven by separability.

An immersion with infinite-index vertex subgroups cannot be completed
to a finite cover.  Enlarging each vertex subgroup to a finite-index
overgroup is safe exactly when the overgroup keeps the coset products
of distinct edge lifts apart; those products form the exclusion set of
the vertex, and each oracle's ``separate`` finds such an overgroup.
Edge decorations are left untouched so the enlarged morphism restricts
to the original one verbatim.
"""

from __future__ import annotations

from typing import Optional

from .errors import NotAnImmersion
from .morphism import DecoratedMorphism, check_immersion, local_map

__all__ = ["exclusion_sets", "enlarge"]


def exclusion_sets(m: DecoratedMorphism, extra: Optional[dict] = None) -> dict:
    """Per-vertex elements a finite-index overgroup must avoid.

    For each pair of distinct lifts of one target edge at v, both coset
    quotients delta_i * delta_j^-1 enter the set; identity products mean
    the morphism was not an immersion to begin with.  ``extra`` adds
    caller-chosen elements (e.g. the non-member witness at the base).
    """
    extra = extra or {}
    out = {}
    for v in m.domain.graph.vertices:
        oracle = m.oracle_at(v)
        handle = m.vgroup_image[v]
        seen = set()
        for f in m.target.graph.edges_at(m.phi_v(v)):
            entries = local_map(m, v, f)
            for i in range(len(entries)):
                for j in range(len(entries)):
                    if i == j:
                        continue
                    q = oracle.mul(
                        entries[i][1], oracle.inv(entries[j][1])
                    )
                    if oracle.is_identity(q) or handle.member(q):
                        raise NotAnImmersion(
                            f"lifts {entries[i][0]!r}, {entries[j][0]!r} of {f!r} "
                            f"share a coset at {v!r}"
                        )
                    seen.add(q)
        for x in extra.get(v, ()):
            oracle.check(x)
            seen.add(x)
        out[v] = sorted(seen, key=oracle.sort_key)
    return out


def enlarge(m: DecoratedMorphism, exclusions: dict) -> DecoratedMorphism:
    """Replace each vertex subgroup by a finite-index separator.

    Graph, edge decorations and maps are untouched; only vgroup_image
    changes, so distinct lifts stay in distinct cosets and the result
    is again an immersion through which the original factors.
    """
    new_vgroup = {}
    for v in m.domain.graph.vertices:
        new_vgroup[v] = m.vgroup_image[v].separate(exclusions.get(v, ()))
    enlarged = m.copy(vgroup_image=new_vgroup)
    report = check_immersion(enlarged)
    if not report.ok:
        raise NotAnImmersion(
            f"separation failed to keep lifts apart: {report.violations[:3]}"
        )
    return enlarged
