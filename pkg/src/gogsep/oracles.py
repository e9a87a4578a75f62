"""Vertex group oracles and their subgroup handles.

Three kinds of coefficient group can sit at a vertex:

* ``finite``  -- explicit multiplication table over named elements,
* ``integer`` -- the group of integers, subgroups are m*Z,
* ``free``    -- a free group of given rank, subgroups are folded core
  automata (Stallings graphs) with a marked base state.

All element values are plain Python data (str / int / tuple of nonzero
ints) so equality and hashing are structural.  Every kind exposes the
same surface: arithmetic, parsing, subgroup generation, and a subgroup
handle with membership, index, right-coset transversals, canonical coset
representatives and a separability routine that returns a finite-index
oversubgroup avoiding a finite excluded set.

Right cosets S*t are used throughout the package.
"""

from __future__ import annotations

import math
from collections import deque

from .errors import (
    ForeignElement,
    GogsepError,
    InfiniteIndex,
    NotSeparated,
    UnboundedEnumeration,
    UntracedCoset,
)

__all__ = [
    "VertexGroup",
    "FiniteGroup",
    "IntGroup",
    "FreeGroup",
    "SubgroupHandle",
    "subgroup_generate",
    "member",
    "subgroup_index",
    "coset_reps",
    "canonical_rep",
    "separate_in_vertex_group",
]


class VertexGroup:
    """Common surface of a vertex group oracle."""

    kind = "abstract"

    def identity(self):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def inv(self, a):
        raise NotImplementedError

    def check(self, g):
        """Raise ForeignElement unless g is a valid element value."""
        raise NotImplementedError

    def is_identity(self, g):
        self.check(g)
        return g == self.identity()

    def subgroup(self, generators) -> "SubgroupHandle":
        raise NotImplementedError

    def trivial_subgroup(self) -> "SubgroupHandle":
        return self.subgroup([])

    def full_subgroup(self) -> "SubgroupHandle":
        raise NotImplementedError

    def parse_element(self, text):
        raise NotImplementedError

    def format_element(self, g) -> str:
        raise NotImplementedError

    def sort_key(self, g):
        """Deterministic ordering key; only compared within one oracle."""
        raise NotImplementedError

    def elements_within(self, bound):
        """Elements of size <= bound; exact element list for finite kind."""
        raise NotImplementedError

    def random_element(self, rng, bound=3):
        raise NotImplementedError

    def describe(self) -> str:
        raise NotImplementedError

    def to_json(self):
        raise NotImplementedError

    def conjugate(self, t, g):
        """t * g * t^-1."""
        return self.mul(self.mul(t, g), self.inv(t))


class SubgroupHandle:
    """Common surface of a subgroup of a vertex group."""

    def __init__(self, group: VertexGroup, generators):
        self.group = group
        self.generators = tuple(generators)

    def member(self, g) -> bool:
        raise NotImplementedError

    def index(self):
        """[G : S] as an int, or None when infinite."""
        raise NotImplementedError

    def coset_reps(self):
        """Right-coset transversal, identity first, deterministic order."""
        raise NotImplementedError

    def canonical_rep(self, g):
        """The transversal representative t with S*g = S*t."""
        raise NotImplementedError

    def separate(self, excluded) -> "SubgroupHandle":
        """Finite-index K >= S with K disjoint from the excluded set."""
        raise NotImplementedError

    def conjugated(self, t) -> "SubgroupHandle":
        """The subgroup t * S * t^-1."""
        g = self.group
        return g.subgroup([g.conjugate(t, x) for x in self.generators])

    def canonical_key(self):
        """Presentation-independent canonical data, equal iff same subgroup."""
        raise NotImplementedError

    def elements_within(self, bound):
        raise NotImplementedError

    def is_trivial(self) -> bool:
        raise NotImplementedError

    def describe(self) -> str:
        gens = ", ".join(self.group.format_element(g) for g in self.generators)
        return f"<{gens}>" if gens else "<1>"

    def same_coset(self, a, b) -> bool:
        """S*a == S*b, i.e. a * b^-1 in S."""
        return self.member(self.group.mul(a, self.group.inv(b)))

    def __eq__(self, other):
        return (
            isinstance(other, SubgroupHandle)
            and self.group is other.group
            and self.canonical_key() == other.canonical_key()
        )

    def __hash__(self):
        return hash(self.canonical_key())

    def __repr__(self):
        return f"{type(self).__name__}({self.describe()})"


# ---------------------------------------------------------------------------
# finite kind


class FiniteGroup(VertexGroup):
    """Finite group given by an explicit multiplication table.

    ``elements`` fixes the canonical element order used for transversals;
    the identity is detected from the table.  Ingestion is capped at
    ``max_order`` elements (default 64).
    """

    kind = "finite"

    def __init__(self, elements, table, name=None, max_order=64):
        elements = list(elements)
        if len(set(elements)) != len(elements):
            raise GogsepError("duplicate element names in finite group")
        if len(elements) > max_order:
            raise GogsepError(
                f"finite group order {len(elements)} exceeds cap {max_order}"
            )
        if not elements:
            raise GogsepError("finite group needs at least one element")
        self.elements = elements
        self._pos = {g: i for i, g in enumerate(elements)}
        self.table = {a: dict(row) for a, row in table.items()}
        self.name = name
        self._validate()

    def _validate(self):
        els = set(self.elements)
        for a in self.elements:
            row = self.table.get(a)
            if row is None or set(row) != els or not set(row.values()) <= els:
                raise GogsepError(f"multiplication table broken at {a!r}")
        ident = None
        for e in self.elements:
            if all(
                self.table[e][x] == x and self.table[x][e] == x
                for x in self.elements
            ):
                ident = e
                break
        if ident is None:
            raise GogsepError("finite group table has no identity")
        self._identity = ident
        self._inv = {}
        for a in self.elements:
            for b in self.elements:
                if self.table[a][b] == ident and self.table[b][a] == ident:
                    self._inv[a] = b
                    break
            else:
                raise GogsepError(f"no inverse for {a!r}")
        for a in self.elements:
            for b in self.elements:
                ab = self.table[a][b]
                for c in self.elements:
                    if self.table[ab][c] != self.table[a][self.table[b][c]]:
                        raise GogsepError(
                            f"associativity fails at ({a!r},{b!r},{c!r})"
                        )

    @classmethod
    def cyclic(cls, n, letter="a", name=None):
        """Cyclic group of order n with elements 1, a, a2, ..."""
        names = ["1"] + [letter if k == 1 else f"{letter}{k}" for k in range(1, n)]
        table = {
            names[i]: {names[j]: names[(i + j) % n] for j in range(n)}
            for i in range(n)
        }
        return cls(names, table, name=name or f"C{n}")

    def order(self):
        return len(self.elements)

    def identity(self):
        return self._identity

    def mul(self, a, b):
        self.check(a)
        self.check(b)
        return self.table[a][b]

    def inv(self, a):
        self.check(a)
        return self._inv[a]

    def check(self, g):
        if g not in self._pos:
            raise ForeignElement(f"{g!r} is not an element of {self.describe()}")

    def subgroup(self, generators):
        return FiniteSubgroup(self, generators)

    def full_subgroup(self):
        return FiniteSubgroup(self, list(self.elements))

    def parse_element(self, text):
        if not isinstance(text, str) or text not in self._pos:
            raise ForeignElement(f"unknown element {text!r} of {self.describe()}")
        return text

    def format_element(self, g):
        self.check(g)
        return g

    def sort_key(self, g):
        return self._pos[g]

    def elements_within(self, bound=None):
        return list(self.elements)

    def random_element(self, rng, bound=3):
        return rng.choice(self.elements)

    def describe(self):
        return self.name or f"finite[{len(self.elements)}]"

    def to_json(self):
        doc = {
            "kind": "finite",
            "elements": list(self.elements),
            "table": {a: dict(self.table[a]) for a in self.elements},
        }
        if self.name:
            doc["name"] = self.name
        return doc


class FiniteSubgroup(SubgroupHandle):
    def __init__(self, group, generators):
        for g in generators:
            group.check(g)
        super().__init__(group, generators)
        closure = {group.identity()}
        frontier = [group.identity()]
        while frontier:
            nxt = []
            for s in frontier:
                for g in self.generators:
                    p = group.table[s][g]
                    if p not in closure:
                        closure.add(p)
                        nxt.append(p)
            frontier = nxt
        self.members = frozenset(closure)
        self._reps = None

    def member(self, g):
        self.group.check(g)
        return g in self.members

    def index(self):
        return len(self.group.elements) // len(self.members)

    def _transversal(self):
        if self._reps is None:
            order = [self.group.identity()] + [
                g for g in self.group.elements if g != self.group.identity()
            ]
            reps, rep_of = [], {}
            for t in order:
                if t not in rep_of:
                    reps.append(t)
                    for s in self.members:
                        rep_of[self.group.table[s][t]] = t
            self._reps = (reps, rep_of)
        return self._reps

    def coset_reps(self):
        return list(self._transversal()[0])

    def canonical_rep(self, g):
        self.group.check(g)
        return self._transversal()[1][g]

    def separate(self, excluded):
        for x in excluded:
            if self.member(x):
                raise NotSeparated(
                    f"{self.group.format_element(x)} lies in the subgroup"
                )
        return self

    def canonical_key(self):
        return ("finite", tuple(sorted(self.members, key=self.group.sort_key)))

    def elements_within(self, bound=None):
        return sorted(self.members, key=self.group.sort_key)

    def is_trivial(self):
        return len(self.members) == 1

    def describe(self):
        return f"order {len(self.members)} of {self.group.describe()}"


# ---------------------------------------------------------------------------
# integer kind


class IntGroup(VertexGroup):
    """The infinite cyclic group of integers; subgroups are m*Z."""

    kind = "integer"

    def identity(self):
        return 0

    def mul(self, a, b):
        self.check(a)
        self.check(b)
        return a + b

    def inv(self, a):
        self.check(a)
        return -a

    def check(self, g):
        if not isinstance(g, int) or isinstance(g, bool):
            raise ForeignElement(f"{g!r} is not an integer element")

    def subgroup(self, generators):
        return IntSubgroup(self, generators)

    def full_subgroup(self):
        return IntSubgroup(self, [1])

    def parse_element(self, text):
        if isinstance(text, int) and not isinstance(text, bool):
            return text
        if isinstance(text, str):
            t = text.strip()
            if t and (t.lstrip("+-").isdigit()):
                return int(t)
        raise ForeignElement(f"{text!r} is not a decimal integer")

    def format_element(self, g):
        self.check(g)
        return str(g)

    def sort_key(self, g):
        return g

    def elements_within(self, bound):
        if bound is None:
            raise UnboundedEnumeration("integer oracle needs an element bound")
        return list(range(-bound, bound + 1))

    def random_element(self, rng, bound=4):
        return rng.randint(-bound, bound)

    def describe(self):
        return "Z"

    def to_json(self):
        return {"kind": "integer"}


class IntSubgroup(SubgroupHandle):
    def __init__(self, group, generators):
        for g in generators:
            group.check(g)
        super().__init__(group, generators)
        self.modulus = math.gcd(*[abs(g) for g in generators]) if generators else 0

    def member(self, g):
        self.group.check(g)
        if self.modulus == 0:
            return g == 0
        return g % self.modulus == 0

    def index(self):
        return self.modulus if self.modulus > 0 else None

    def coset_reps(self):
        if self.modulus == 0:
            raise InfiniteIndex("trivial subgroup of Z has no finite transversal")
        return list(range(self.modulus))

    def canonical_rep(self, g):
        self.group.check(g)
        if self.modulus == 0:
            raise InfiniteIndex("trivial subgroup of Z: cosets are untransversaled")
        return g % self.modulus

    def separate(self, excluded):
        excluded = list(excluded)
        for x in excluded:
            if self.member(x):
                raise NotSeparated(f"{x} lies in {self.describe()}")
        if self.modulus != 0:
            return self
        n = 1 + max((abs(x) for x in excluded), default=0)
        return IntSubgroup(self.group, [n])

    def conjugated(self, t):
        self.group.check(t)
        return IntSubgroup(self.group, list(self.generators))

    def canonical_key(self):
        return ("integer", self.modulus)

    def elements_within(self, bound):
        if bound is None:
            raise UnboundedEnumeration("integer subgroup needs an element bound")
        if self.modulus == 0:
            return [0]
        m = self.modulus
        return [k * m for k in range(-(bound // m), bound // m + 1)]

    def is_trivial(self):
        return self.modulus == 0

    def describe(self):
        return f"{self.modulus}Z" if self.modulus else "0Z"


# ---------------------------------------------------------------------------
# free kind

# Elements are reduced tuples of nonzero ints: letter k is the k-th basis
# element, -k its inverse.  The empty tuple is the identity.


def _reduce_free(word):
    out = []
    for l in word:
        if out and out[-1] == -l:
            out.pop()
        else:
            out.append(l)
    return tuple(out)


def _mul_free(a, b):
    out = list(a)
    for l in b:
        if out and out[-1] == -l:
            out.pop()
        else:
            out.append(l)
    return tuple(out)


def _inv_free(a):
    return tuple(-l for l in reversed(a))


class _Automaton:
    """Mutable folding automaton over letters +-1..+-rank, base state 0.

    Transitions are stored in both directions: (s, l) -> t always comes
    with (t, -l) -> s.  Folding is union-find driven; stale targets are
    resolved through find() and squeezed out by normalize().
    """

    def __init__(self, rank):
        self.rank = rank
        self.adj = [dict()]
        self.parent = [0]
        self.pending = []

    def new_state(self):
        self.adj.append({})
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, s):
        root = s
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[s] != root:
            self.parent[s], s = root, self.parent[s]
        return root

    def _half(self, s, l, t):
        s, t = self.find(s), self.find(t)
        cur = self.adj[s].get(l)
        if cur is None:
            self.adj[s][l] = t
        else:
            cur = self.find(cur)
            self.adj[s][l] = cur
            if cur != t:
                self.pending.append((cur, t))

    def connect(self, s, l, t):
        self._half(s, l, t)
        self._half(t, -l, s)

    def add_loop(self, word):
        cur = 0
        for i, l in enumerate(word):
            nxt = 0 if i == len(word) - 1 else self.new_state()
            self.connect(cur, l, nxt)
            cur = nxt

    def fold(self):
        while self.pending:
            a, b = self.pending.pop()
            a, b = self.find(a), self.find(b)
            if a == b:
                continue
            if b < a:
                a, b = b, a
            self.parent[b] = a
            moved, self.adj[b] = self.adj[b], {}
            for l, t in moved.items():
                self._half(a, l, self.find(t))

    def normalized(self):
        """(state list, {(s, l): t}) with union-find fully applied."""
        self.fold()
        live = sorted({self.find(s) for s in range(len(self.parent))})
        trans = {}
        for s in live:
            for l, t in self.adj[s].items():
                trans[(s, l)] = self.find(t)
        base = self.find(0)
        reachable = {base}
        queue = deque([base])
        while queue:
            s = queue.popleft()
            for l in _letters(self.rank):
                t = trans.get((s, l))
                if t is not None and t not in reachable:
                    reachable.add(t)
                    queue.append(t)
        trans = {k: v for k, v in trans.items() if k[0] in reachable}
        return base, sorted(reachable), trans


def _letters(rank):
    for k in range(1, rank + 1):
        yield k
        yield -k


def _trim_to_core(base, states, trans):
    """Drop valence<=1 states other than the base, cascading."""
    states = set(states)
    changed = True
    while changed:
        changed = False
        for s in sorted(states):
            if s == base:
                continue
            incident = [(l, t) for (q, l), t in trans.items() if q == s]
            if len(incident) <= 1:
                states.discard(s)
                for l, t in incident:
                    del trans[(s, l)]
                    if (t, -l) in trans:
                        del trans[(t, -l)]
                changed = True
    return sorted(states), trans


def _relabel_bfs(base, states, trans, rank):
    """Canonical renumbering: BFS from base, letters in 1,-1,2,-2 order."""
    number = {base: 0}
    order = [base]
    queue = deque([base])
    while queue:
        s = queue.popleft()
        for l in _letters(rank):
            t = trans.get((s, l))
            if t is not None and t not in number:
                number[t] = len(order)
                order.append(t)
                queue.append(t)
    out = {}
    for (s, l), t in trans.items():
        if s in number and t in number:
            out[(number[s], l)] = number[t]
    return len(order), out


class FreeGroup(VertexGroup):
    """Free group of finite rank; subgroups carried as folded core automata."""

    kind = "free"

    def __init__(self, rank):
        if not isinstance(rank, int) or isinstance(rank, bool) or rank < 0:
            raise GogsepError(f"free group rank must be a non-negative int: {rank!r}")
        self.rank = rank

    def identity(self):
        return ()

    def mul(self, a, b):
        self.check(a)
        self.check(b)
        return _mul_free(a, b)

    def inv(self, a):
        self.check(a)
        return _inv_free(a)

    def check(self, g):
        if not isinstance(g, tuple):
            raise ForeignElement(f"{g!r} is not a free group word")
        for i, l in enumerate(g):
            if not isinstance(l, int) or l == 0 or abs(l) > self.rank:
                raise ForeignElement(f"letter {l!r} out of rank {self.rank}")
            if i and g[i - 1] == -l:
                raise ForeignElement(f"word {g!r} is not reduced")

    def subgroup(self, generators):
        return FreeSubgroup(self, generators)

    def full_subgroup(self):
        return FreeSubgroup(self, [(k,) for k in range(1, self.rank + 1)])

    def parse_element(self, text):
        if not isinstance(text, str):
            raise ForeignElement(f"{text!r} is not a free group word string")
        t = text.strip()
        if t == "1":
            return ()
        letters = []
        for part in t.split("."):
            body = part[:-1] if part.endswith("-") else part
            if not body.startswith("x") or not body[1:].isdigit():
                raise ForeignElement(f"bad syllable {part!r} in {text!r}")
            k = int(body[1:])
            if not 1 <= k <= self.rank:
                raise ForeignElement(f"letter x{k} out of rank {self.rank}")
            letters.append(-k if part.endswith("-") else k)
        word = _reduce_free(letters)
        if len(word) != len(letters):
            raise ForeignElement(f"{text!r} is not reduced")
        return word

    def format_element(self, g):
        self.check(g)
        if not g:
            return "1"
        return ".".join(f"x{abs(l)}" + ("-" if l < 0 else "") for l in g)

    def sort_key(self, g):
        return (len(g), g)

    def elements_within(self, bound):
        if bound is None:
            raise UnboundedEnumeration("free oracle needs an element bound")
        out = [()]
        layer = [()]
        for _ in range(bound):
            nxt = []
            for w in layer:
                for l in _letters(self.rank):
                    if w and w[-1] == -l:
                        continue
                    nxt.append(w + (l,))
            out.extend(nxt)
            layer = nxt
        return out

    def random_element(self, rng, bound=3):
        n = rng.randint(0, bound)
        word = []
        for _ in range(n):
            choices = [
                l
                for l in _letters(self.rank)
                if not (word and word[-1] == -l)
            ]
            if not choices:
                break
            word.append(rng.choice(choices))
        return tuple(word)

    def describe(self):
        return f"F{self.rank}"

    def to_json(self):
        return {"kind": "free", "rank": self.rank}


class FreeSubgroup(SubgroupHandle):
    """Finitely generated subgroup as a folded, trimmed core automaton.

    The automaton is canonically numbered (BFS from the base in letter
    order), so equal subgroups carry identical data regardless of the
    generating set they came from.
    """

    def __init__(self, group, generators, _auto=None):
        gens = []
        for g in generators:
            group.check(g)
            if g:
                gens.append(g)
        super().__init__(group, tuple(gens))
        if _auto is not None:
            self.size, self.delta = _auto
        else:
            auto = _Automaton(group.rank)
            for g in gens:
                auto.add_loop(g)
            base, states, trans = auto.normalized()
            states, trans = _trim_to_core(base, states, trans)
            self.size, self.delta = _relabel_bfs(base, states, trans, group.rank)

    def trace(self, word, start=0):
        """Follow word from a state; None when a transition is missing."""
        s = start
        for l in word:
            s = self.delta.get((s, l))
            if s is None:
                return None
        return s

    def member(self, g):
        self.group.check(g)
        return self.trace(g) == 0

    def is_complete(self):
        return all(
            (s, l) in self.delta
            for s in range(self.size)
            for l in _letters(self.group.rank)
        )

    def index(self):
        return self.size if self.is_complete() else None

    def _spanning_reps(self):
        """BFS-tree coset representative word for every state."""
        reps = {0: ()}
        tree = set()
        queue = deque([0])
        while queue:
            s = queue.popleft()
            for l in _letters(self.group.rank):
                t = self.delta.get((s, l))
                if t is not None and t not in reps:
                    reps[t] = reps[s] + (l,)
                    tree.add((s, l))
                    tree.add((t, -l))
                    queue.append(t)
        return reps, tree

    def coset_reps(self):
        if not self.is_complete():
            raise InfiniteIndex(f"{self.describe()} has infinite index")
        reps, _ = self._spanning_reps()
        return [reps[s] for s in range(self.size)]

    def canonical_rep(self, g):
        self.group.check(g)
        s = self.trace(g)
        if s is None:
            raise UntracedCoset(
                f"coset of {self.group.format_element(g)} not represented"
            )
        reps, _ = self._spanning_reps()
        return reps[s]

    def separate(self, excluded):
        excluded = sorted(
            {_reduce_free(x) for x in excluded}, key=self.group.sort_key
        )
        for x in excluded:
            if self.member(x):
                raise NotSeparated(
                    f"{self.group.format_element(x)} lies in the subgroup"
                )
        size, delta = self.size, dict(self.delta)
        # Hair: materialize the full path of each excluded word so its
        # endpoint is pinned away from the base before completion.
        for x in excluded:
            s = 0
            for l in x:
                t = delta.get((s, l))
                if t is None:
                    t = size
                    size += 1
                    delta[(s, l)] = t
                    delta[(t, -l)] = s
                s = t
        # Complete each letter's partial injection to a permutation.
        for k in range(1, self.group.rank + 1):
            missing_src = [s for s in range(size) if (s, k) not in delta]
            missing_dst = [s for s in range(size) if (s, -k) not in delta]
            for s, t in zip(missing_src, missing_dst):
                delta[(s, k)] = t
                delta[(t, -k)] = s
        result = FreeSubgroup(
            self.group, [], _auto=_relabel_bfs(0, list(range(size)), delta, self.group.rank)
        )
        gens = result._schreier_generators()
        return FreeSubgroup(self.group, gens)

    def _schreier_generators(self):
        reps, tree = self._spanning_reps()
        gens = []
        for s in range(self.size):
            for k in range(1, self.group.rank + 1):
                t = self.delta.get((s, k))
                if t is None or (s, k) in tree:
                    continue
                w = _mul_free(_mul_free(reps[s], (k,)), _inv_free(reps[t]))
                if w:
                    gens.append(w)
        return gens

    def canonical_key(self):
        return ("free", self.size, tuple(sorted(self.delta.items())))

    def elements_within(self, bound):
        if bound is None:
            raise UnboundedEnumeration("free subgroup needs an element bound")
        out = []
        stack = [(0, ())]
        while stack:
            s, w = stack.pop()
            if s == 0:
                out.append(w)
            if len(w) == bound:
                continue
            for l in _letters(self.group.rank):
                if w and w[-1] == -l:
                    continue
                t = self.delta.get((s, l))
                if t is not None:
                    stack.append((t, w + (l,)))
        return sorted(set(out), key=self.group.sort_key)

    def is_trivial(self):
        return self.size == 1 and not self.delta

    def describe(self):
        gens = ", ".join(self.group.format_element(g) for g in self.generators)
        idx = self.index()
        tag = f"index {idx}" if idx is not None else "infinite index"
        return f"<{gens or '1'}> ({tag})"


# ---------------------------------------------------------------------------
# module-level operation names


def subgroup_generate(oracle: VertexGroup, generators) -> SubgroupHandle:
    """Canonical subgroup handle for the subgroup generated by ``generators``."""
    return oracle.subgroup(generators)


def member(handle: SubgroupHandle, g) -> bool:
    return handle.member(g)


def subgroup_index(handle: SubgroupHandle):
    return handle.index()


def coset_reps(handle: SubgroupHandle):
    return handle.coset_reps()


def canonical_rep(handle: SubgroupHandle, g):
    return handle.canonical_rep(g)


def separate_in_vertex_group(handle: SubgroupHandle, excluded) -> SubgroupHandle:
    """Finite-index oversubgroup of ``handle`` avoiding ``excluded``.

    Precondition: no excluded element lies in the subgroup (NotSeparated).
    """
    return handle.separate(excluded)


def oracle_from_json(doc, path="$", max_order=64) -> VertexGroup:
    """Build an oracle from its JSON description."""
    from .errors import SchemaError

    if not isinstance(doc, dict):
        raise SchemaError(path, "oracle must be an object")
    kind = doc.get("kind")
    if kind == "finite":
        if "elements" not in doc or "table" not in doc:
            raise SchemaError(path, "finite oracle needs elements and table")
        try:
            return FiniteGroup(
                doc["elements"], doc["table"], name=doc.get("name"),
                max_order=max_order,
            )
        except GogsepError as exc:
            raise SchemaError(path, str(exc)) from exc
    if kind == "cyclic":
        order = doc.get("order")
        if not isinstance(order, int) or order < 1 or order > max_order:
            raise SchemaError(f"{path}.order", f"bad cyclic order {order!r}")
        return FiniteGroup.cyclic(
            order, letter=doc.get("letter", "a"), name=doc.get("name")
        )
    if kind == "integer":
        return IntGroup()
    if kind == "free":
        rank = doc.get("rank")
        try:
            return FreeGroup(rank)
        except GogsepError as exc:
            raise SchemaError(f"{path}.rank", str(exc)) from exc
    raise SchemaError(f"{path}.kind", f"unknown oracle kind {kind!r}")
