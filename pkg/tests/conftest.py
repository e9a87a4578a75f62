import random
from pathlib import Path

import pytest

from gogsep import (
    FiniteGroup,
    FreeGroup,
    Graph,
    GraphOfGroups,
    IntGroup,
    random_loop,
    word_from_json,
)

INSTANCES = Path(__file__).resolve().parent.parent / "instances"


def W(gog, start, *flat):
    """Word from its flat JSON spelling: element, edge, element, ..."""
    return word_from_json(gog, {"start": start, "word": list(flat)})


def make_pslz():
    g = Graph()
    g.add_vertex("u")
    g.add_vertex("w")
    g.add_edge("e", "u", "w")
    return GraphOfGroups(
        g,
        {"u": FiniteGroup.cyclic(2, "a"), "w": FiniteGroup.cyclic(3, "b")},
        base="u",
    )


def make_dinfty():
    g = Graph()
    g.add_vertex("u")
    g.add_vertex("w")
    g.add_edge("e", "u", "w")
    return GraphOfGroups(
        g,
        {"u": FiniteGroup.cyclic(2, "a"), "w": FiniteGroup.cyclic(2, "b")},
        base="u",
    )


def make_z2():
    g = Graph()
    g.add_vertex("x")
    g.add_vertex("y")
    g.add_edge("e", "x", "y")
    return GraphOfGroups(g, {"x": IntGroup(), "y": IntGroup()}, base="x")


def make_c2c3c2():
    g = Graph()
    for v in ("u", "w", "z"):
        g.add_vertex(v)
    g.add_edge("e", "u", "w")
    g.add_edge("f", "w", "z")
    return GraphOfGroups(
        g,
        {
            "u": FiniteGroup.cyclic(2, "a"),
            "w": FiniteGroup.cyclic(3, "b"),
            "z": FiniteGroup.cyclic(2, "c"),
        },
        base="u",
    )


def make_rose2():
    g = Graph()
    g.add_vertex("o")
    g.add_edge("p", "o", "o")
    g.add_edge("q", "o", "o")
    return GraphOfGroups(g, {"o": FiniteGroup.cyclic(1, name="C1")}, base="o")


def make_f2c2():
    g = Graph()
    g.add_vertex("x")
    g.add_vertex("u")
    g.add_edge("e", "x", "u")
    return GraphOfGroups(
        g, {"x": FreeGroup(2), "u": FiniteGroup.cyclic(2, "a")}, base="x"
    )


@pytest.fixture
def pslz():
    return make_pslz()


@pytest.fixture
def dinfty():
    return make_dinfty()


@pytest.fixture
def z2():
    return make_z2()


@pytest.fixture
def c2c3c2():
    return make_c2c3c2()


@pytest.fixture
def rose2():
    return make_rose2()


@pytest.fixture
def f2c2():
    return make_f2c2()


def gen_corpus(gog, u0, rng, count, max_edges=4, letter_bound=2):
    """Random nonidentity loops at u0 for fuzzing."""
    out = []
    while len(out) < count:
        w = random_loop(gog, u0, rng, max_edges=max_edges, letter_bound=letter_bound)
        if not w.is_identity_loop():
            out.append(w)
    return out


@pytest.fixture
def rng():
    return random.Random(20260815)
