"""Independent cross-checks for immersions, covers and certificates.

Nothing here reuses the lifting machinery's bookkeeping: membership is
re-derived by brute-force closure over short reduced loops, cover
degrees by Todd-Coxeter coset enumeration over a presentation of the
fundamental group, and local bijectivity by mapping a ball of the
Bass-Serre tree.  Agreement between these and the decorated-morphism
algorithms is the package's main line of defense.
"""

from __future__ import annotations

import random
from collections import deque
from typing import Optional, Sequence

from .core import GraphOfGroups, Word, bar
from .errors import DidNotClose, GogsepError, NotAnImmersion, UnboundedEnumeration
from .morphism import CheckReport, DecoratedMorphism, subgroup_generators
from .separator import SeparationCertificate, VerificationReport, verify_certificate

__all__ = [
    "enumerate_ball_elements",
    "brute_member",
    "coset_enumerate",
    "tree_ball",
    "ball_map_check",
    "crosscheck",
    "random_loop",
]


def _require_finite(gog: GraphOfGroups, what: str):
    for v in gog.graph.vertices:
        if gog.group_at(v).kind != "finite":
            raise UnboundedEnumeration(
                f"{what} needs finite vertex groups; {v!r} is {gog.group_at(v).kind}"
            )


def enumerate_ball_elements(gog: GraphOfGroups, u0: str, n: int) -> list[Word]:
    """All reduced loops at u0 with at most n edges, in a fixed order."""
    _require_finite(gog, "ball enumeration")
    graph = gog.graph
    if not graph.has_vertex(u0):
        raise GogsepError(f"unknown vertex {u0!r}")
    base_oracle = gog.group_at(u0)
    out = []

    def emit(letters, edges):
        for g in base_oracle.elements:
            out.append(Word(gog, u0, tuple(letters) + (g,), tuple(edges)))

    def rec(v, letters, edges):
        if edges and v == u0:
            emit(letters, edges)
        if len(edges) == n:
            return
        oracle = gog.group_at(v)
        for e in graph.edges_at(v):
            backtrack = bool(edges) and e == bar(edges[-1])
            for x in oracle.elements:
                if backtrack and oracle.is_identity(x):
                    continue
                rec(graph.tau(e), letters + [x], edges + [e])

    emit([], [])
    rec(u0, [], [])
    return out


def brute_member(
    gog: GraphOfGroups,
    u0: str,
    gens: Sequence[Word],
    w: Word,
    pad: int = 2,
) -> bool:
    """Membership by closing <gens> over short loops, no folding involved.

    The closure runs inside the ball of radius |w| + 2*max|gen| + pad.
    A True answer is a genuine product expression; False only says no
    witness fits in the ball, which in practice settles small cases.
    """
    w = w.validate().reduce()
    gens = [g.validate().reduce() for g in gens]
    gens = [g for g in gens if not g.is_identity_loop()]
    if w.start != u0 or not w.is_loop():
        return False
    if w.is_identity_loop():
        return True
    bound = w.n + 2 * max((g.n for g in gens), default=0) + pad
    steps = []
    for g in gens:
        steps.append(g)
        steps.append(g.inverse())
    closure = {gog.identity_word(u0)}
    frontier = list(closure)
    while frontier:
        fresh = []
        for x in frontier:
            for g in steps:
                y = (g * x).reduce()
                if y.n <= bound and y not in closure:
                    closure.add(y)
                    fresh.append(y)
        frontier = fresh
    return w in closure


# ---------------------------------------------------------------------------
# coset enumeration

# Presentation of the fundamental group relative to a spanning tree:
# one symbol per nontrivial element of each vertex group with the full
# multiplication table as relators, plus one free stable letter per
# non-tree edge pair.  Loops translate letter-by-letter; tree edges
# vanish.


def _spanning_tree(gog: GraphOfGroups, root: str) -> set:
    tree = set()
    seen = {root}
    queue = deque([root])
    while queue:
        v = queue.popleft()
        for e in gog.graph.edges_at(v):
            w = gog.graph.tau(e)
            if w not in seen:
                seen.add(w)
                tree.add(e if not e.startswith("~") else bar(e))
                queue.append(w)
    return tree


def _presentation(gog: GraphOfGroups, root: str):
    _require_finite(gog, "coset enumeration")
    symbols = []
    inv = {}
    relators = []
    for v in sorted(gog.graph.vertices):
        oracle = gog.group_at(v)
        nontrivial = [x for x in oracle.elements if not oracle.is_identity(x)]
        for x in nontrivial:
            s = ("g", v, x)
            symbols.append(s)
            inv[s] = ("g", v, oracle.inv(x))
        for x in nontrivial:
            for y in nontrivial:
                word = [("g", v, x), ("g", v, y)]
                z = oracle.mul(x, y)
                if not oracle.is_identity(z):
                    word.append(("g", v, oracle.inv(z)))
                relators.append(word)
    tree = _spanning_tree(gog, root)
    for p in gog.graph.edge_pairs():
        if p in tree:
            continue
        s, si = ("t", p), ("T", p)
        symbols.extend([s, si])
        inv[s] = si
        inv[si] = s
    return symbols, inv, relators, tree


def _translate(gog: GraphOfGroups, w: Word, tree: set) -> list:
    out = []
    for i in range(w.n + 1):
        v = w.vertex_at(i)
        oracle = gog.group_at(v)
        if not oracle.is_identity(w.groups[i]):
            out.append(("g", v, w.groups[i]))
        if i < w.n:
            e = w.edges[i]
            p = bar(e) if e.startswith("~") else e
            if p not in tree:
                out.append(("t", p) if e == p else ("T", p))
    return out


class _CosetTable:
    def __init__(self, inv, cap):
        self.inv = inv
        self.cap = cap
        self.rows = [{}]
        self.parent = [0]
        self.pending = deque()

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def alive(self):
        return [a for a in range(len(self.rows)) if self.find(a) == a]

    def define(self, a, s):
        if len(self.rows) > self.cap:
            raise DidNotClose(self.cap)
        b = len(self.rows)
        self.rows.append({})
        self.parent.append(b)
        self.set(a, s, b)
        return b

    def set(self, a, s, b):
        a, b = self.find(a), self.find(b)
        for x, sym, y in ((a, s, b), (b, self.inv[s], a)):
            cur = self.rows[x].get(sym)
            if cur is None:
                self.rows[x][sym] = y
            elif self.find(cur) != self.find(y):
                self.pending.append((cur, y))
        self.merge()

    def merge(self):
        while self.pending:
            a, b = self.pending.popleft()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            keep, dead = min(a, b), max(a, b)
            self.parent[dead] = keep
            row = self.rows[dead]
            self.rows[dead] = {}
            for s, t in row.items():
                t = self.find(t)
                cur = self.rows[self.find(keep)].get(s)
                if cur is None:
                    self.rows[self.find(keep)][s] = t
                    back = self.rows[t].get(self.inv[s])
                    if back is None:
                        self.rows[t][self.inv[s]] = self.find(keep)
                    elif self.find(back) != self.find(keep):
                        self.pending.append((back, keep))
                elif self.find(cur) != t:
                    self.pending.append((cur, t))

    def scan_fill(self, a, word):
        """Trace a relator from a back to a, defining cosets as needed."""
        if not word:
            return
        while True:
            a = self.find(a)
            i, f = 0, a
            while i < len(word):
                nxt = self.rows[self.find(f)].get(word[i])
                if nxt is None:
                    break
                f = self.find(nxt)
                i += 1
            if i == len(word):
                if self.find(f) != self.find(a):
                    self.pending.append((f, a))
                    self.merge()
                return
            j, b = len(word) - 1, a
            while j > i:
                prv = self.rows[self.find(b)].get(self.inv[word[j]])
                if prv is None:
                    break
                b = self.find(prv)
                j -= 1
            if j == i:
                self.set(f, word[i], b)
                return
            self.define(self.find(f), word[i])


def coset_enumerate(
    gog: GraphOfGroups,
    u0: str,
    loops: Sequence[Word],
    cap: int = 20000,
) -> int:
    """Index of the subgroup the loops generate, by Todd-Coxeter.

    Works purely on a presentation of the fundamental group; raises
    DidNotClose when more than ``cap`` cosets get defined.
    """
    symbols, inv, relators, tree = _presentation(gog, u0)
    subwords = []
    for w in loops:
        w = w.validate().reduce()
        if w.start != u0 or not w.is_loop():
            raise GogsepError("coset enumeration needs loops at the base vertex")
        t = _translate(gog, w, tree)
        if t:
            subwords.append(t)
    table = _CosetTable(inv, cap)

    def state():
        live = table.alive()
        return (len(table.rows), len(live), sum(len(table.rows[a]) for a in live))

    while True:
        before = state()
        for w in subwords:
            table.scan_fill(0, w)
        for a in range(len(table.rows)):
            if table.find(a) != a:
                continue
            for r in relators:
                table.scan_fill(a, r)
        for a in range(len(table.rows)):
            if table.find(a) != a:
                continue
            for s in symbols:
                if table.rows[a].get(s) is None:
                    table.define(a, s)
        if state() == before:
            break
    return len(table.alive())


# ---------------------------------------------------------------------------
# tree balls


def tree_ball(
    gog: GraphOfGroups,
    base: str,
    radius: int,
    letters: Optional[dict] = None,
) -> list:
    """Vertices of the Bass-Serre tree ball as (element, edge) paths.

    Children of a node at v are all (x, e) with x in the letter set of v
    and e an edge at v, except the backtracking (identity, reverse of
    the arriving edge).  Default letter sets are the full vertex groups.
    """
    if letters is None:
        _require_finite(gog, "tree ball")
        letters = {
            v: list(gog.group_at(v).elements) for v in gog.graph.vertices
        }
    graph = gog.graph
    nodes = [()]
    frontier = [((), base)]
    for _ in range(radius):
        nxt = []
        for path, v in frontier:
            oracle = gog.group_at(v)
            arrived = path[-1][1] if path else None
            for e in graph.edges_at(v):
                backtrack = arrived is not None and e == bar(arrived)
                for x in letters[v]:
                    if backtrack and oracle.is_identity(x):
                        continue
                    child = path + ((x, e),)
                    nxt.append((child, graph.tau(e)))
        nodes.extend(p for p, _ in nxt)
        frontier = nxt
    return nodes


def _map_tree_node(m: DecoratedMorphism, base: str, path) -> tuple:
    """Image of a domain tree node; raises if the image path backtracks."""
    out = []
    v = base
    prev = None
    for x, e in path:
        oracle = m.oracle_at(v)
        y = oracle.mul(x, m.delta[e])
        if prev is not None:
            y = oracle.mul(oracle.inv(m.delta[bar(prev)]), y)
        f = m.phi_e(e)
        if out and f == bar(out[-1][1]) and oracle.is_identity(y):
            raise NotAnImmersion(
                f"tree image backtracks along {e!r} at {v!r}"
            )
        out.append((y, f))
        prev = e
        v = m.domain.graph.tau(e)
    return tuple(out)


def ball_map_check(
    m: DecoratedMorphism, radius: int, expect_cover: bool = False
) -> CheckReport:
    """Inject (or biject) a domain tree ball into the target tree ball.

    Domain letter sets are the vertex subgroups, so the domain tree is
    the Bass-Serre tree of the subgroup's graph of groups; an immersion
    must embed it into the target tree, a cover must match it exactly.
    """
    _require_finite(m.target, "ball map check")
    base = m.domain.base
    if base is None:
        base = sorted(m.domain.graph.vertices)[0]
    letters = {}
    for v in m.domain.graph.vertices:
        handle = m.vgroup_image[v]
        members = getattr(handle, "members", None)
        if members is None:
            raise UnboundedEnumeration(f"subgroup at {v!r} is not finite")
        letters[v] = sorted(members, key=handle.group.sort_key)
    violations = []
    domain_nodes = tree_ball(m.domain, base, radius, letters=letters)
    images = []
    for path in domain_nodes:
        try:
            images.append(_map_tree_node(m, base, path))
        except NotAnImmersion as exc:
            violations.append({"kind": "backtrack", "node": path, "detail": str(exc)})
    if len(set(images)) != len(images):
        violations.append({"kind": "not-injective", "radius": radius})
    if expect_cover:
        target_nodes = tree_ball(m.target, m.phi_v(base), radius)
        if len(domain_nodes) != len(target_nodes):
            violations.append(
                {
                    "kind": "count",
                    "domain": len(domain_nodes),
                    "target": len(target_nodes),
                }
            )
        elif set(images) != set(target_nodes):
            violations.append({"kind": "not-onto", "radius": radius})
    return CheckReport(not violations, violations)


def crosscheck(
    cert: SeparationCertificate,
    radius: int = 2,
    cap: int = 20000,
) -> VerificationReport:
    """Validate a certificate against machinery it was not built from.

    Re-runs the certificate checks, then compares the declared degree
    with a Todd-Coxeter enumeration of the cover's loop subgroup and
    embeds a tree ball.  Steps needing finite vertex groups are marked
    skipped on targets with integer or free kinds.
    """
    transcript = list(verify_certificate(cert).transcript)
    finite = all(
        cert.target.group_at(v).kind == "finite"
        for v in cert.target.graph.vertices
    )
    if finite:
        loops = subgroup_generators(cert.cover, cert.base_vertex)
        try:
            idx = coset_enumerate(cert.target, cert.u0, loops, cap=cap)
            ok = idx == cert.degree
            detail = f"enumerated index {idx}, declared degree {cert.degree}"
        except DidNotClose as exc:
            ok, detail = False, str(exc)
        transcript.append({"check": "coset-enumeration", "ok": ok, "detail": detail})
        report = ball_map_check(cert.cover, radius, expect_cover=True)
        transcript.append(
            {
                "check": "tree-ball",
                "ok": report.ok,
                "detail": f"radius {radius}"
                if report.ok
                else report.violations[:3],
            }
        )
    else:
        transcript.append(
            {
                "check": "coset-enumeration",
                "ok": True,
                "detail": "skipped: target has infinite vertex groups",
            }
        )
        transcript.append(
            {
                "check": "tree-ball",
                "ok": True,
                "detail": "skipped: target has infinite vertex groups",
            }
        )
    return VerificationReport(all(t["ok"] for t in transcript), transcript)


def random_loop(
    gog: GraphOfGroups,
    u0: str,
    rng: random.Random,
    max_edges: int = 6,
    letter_bound: int = 3,
) -> Word:
    """Random reduced loop at u0: a walk steered home, then reduced."""
    graph = gog.graph
    dist = {u0: 0}
    queue = deque([u0])
    while queue:
        v = queue.popleft()
        for e in graph.edges_at(v):
            w = graph.tau(e)
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    letters = [gog.group_at(u0).random_element(rng, letter_bound)]
    edges = []
    v = u0
    budget = rng.randint(0, max_edges)
    while len(edges) < budget or v != u0:
        options = graph.edges_at(v)
        if len(edges) >= budget:
            options = [e for e in options if dist[graph.tau(e)] < dist[v]] or options
        e = rng.choice(options)
        edges.append(e)
        v = graph.tau(e)
        letters.append(gog.group_at(v).random_element(rng, letter_bound))
        if len(edges) > max_edges + len(graph.vertices):
            break
    while v != u0:
        e = min(graph.edges_at(v), key=lambda e: dist[graph.tau(e)])
        edges.append(e)
        v = graph.tau(e)
        letters.append(gog.group_at(v).random_element(rng, letter_bound))
    return Word(gog, u0, tuple(letters), tuple(edges)).reduce()
