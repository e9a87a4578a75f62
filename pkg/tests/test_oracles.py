import pytest

from gogsep import (
    FiniteGroup,
    FreeGroup,
    IntGroup,
    oracle_from_json,
    separate_in_vertex_group,
    subgroup_generate,
)
from gogsep.errors import (
    ForeignElement,
    GogsepError,
    InfiniteIndex,
    NotSeparated,
    SchemaError,
    UntracedCoset,
)


# -- finite kind -------------------------------------------------------------


def test_cyclic_table_and_ops():
    g = FiniteGroup.cyclic(6, "a")
    assert g.order() == 6
    assert g.identity() == "1"
    assert g.mul("a2", "a5") == "a"
    assert g.inv("a2") == "a4"
    with pytest.raises(ForeignElement):
        g.check("zz")


def test_table_validation_rejects_garbage():
    with pytest.raises(GogsepError):
        FiniteGroup(["1", "a"], {"1": {"1": "1", "a": "a"}})
    # non-associative magma with an identity
    els = ["1", "a", "b"]
    table = {
        "1": {"1": "1", "a": "a", "b": "b"},
        "a": {"1": "a", "a": "1", "b": "b"},
        "b": {"1": "b", "a": "b", "b": "a"},
    }
    with pytest.raises(GogsepError):
        FiniteGroup(els, table)


def test_max_order_cap():
    with pytest.raises(GogsepError):
        FiniteGroup.cyclic(65)


def test_finite_subgroup_closure_and_cosets():
    g = FiniteGroup.cyclic(6, "a")
    h = subgroup_generate(g, ["a2"])
    assert sorted(h.members) == ["1", "a2", "a4"]
    assert h.index() == 2
    reps = h.coset_reps()
    assert reps[0] == "1" and len(reps) == 2
    assert h.canonical_rep("a3") == h.canonical_rep("a5")
    assert h.same_coset("a", "a3")
    assert not h.same_coset("a", "a2")


def test_finite_separate_is_identity_or_fails():
    g = FiniteGroup.cyclic(6, "a")
    h = subgroup_generate(g, ["a2"])
    assert separate_in_vertex_group(h, ["a"]) is h
    with pytest.raises(NotSeparated):
        separate_in_vertex_group(h, ["a4"])


def test_finite_conjugated_subgroup():
    g = FiniteGroup.cyclic(6, "a")
    h = subgroup_generate(g, ["a3"])
    # abelian: conjugation fixes the subgroup
    assert h.conjugated("a").canonical_key() == h.canonical_key()


# -- integer kind ------------------------------------------------------------


def test_int_subgroup_gcd_and_cosets():
    g = IntGroup()
    h = subgroup_generate(g, [6, 10])
    assert h.modulus == 2
    assert h.member(-4) and not h.member(3)
    assert h.coset_reps() == [0, 1]
    assert h.canonical_rep(-3) == 1
    triv = subgroup_generate(g, [])
    assert triv.index() is None
    with pytest.raises(InfiniteIndex):
        triv.canonical_rep(5)


def test_int_separate_picks_modulus_above_excluded():
    g = IntGroup()
    triv = subgroup_generate(g, [])
    k = separate_in_vertex_group(triv, [3, -5])
    assert k.modulus == 6
    assert not any(k.member(x) for x in (3, -5))
    h = subgroup_generate(g, [4])
    assert separate_in_vertex_group(h, [2]) is h
    with pytest.raises(NotSeparated):
        separate_in_vertex_group(h, [8])


def test_int_parse_and_format():
    g = IntGroup()
    assert g.parse_element("-17") == -17
    assert g.parse_element(3) == 3
    assert g.format_element(-2) == "-2"
    with pytest.raises(ForeignElement):
        g.parse_element("x")
    with pytest.raises(ForeignElement):
        g.check(True)


# -- free kind ---------------------------------------------------------------


def test_free_parse_format_round_trip():
    g = FreeGroup(2)
    x = g.parse_element("x1.x2-.x1")
    assert x == (1, -2, 1)
    assert g.format_element(x) == "x1.x2-.x1"
    assert g.parse_element("1") == ()
    with pytest.raises(ForeignElement):
        g.parse_element("x1.x1-")
    with pytest.raises(ForeignElement):
        g.parse_element("x3")


def test_free_mul_reduces():
    g = FreeGroup(2)
    a = g.parse_element("x1.x2")
    assert g.mul(a, g.inv(a)) == ()
    assert g.mul((1, 2), (-2, 1)) == (1, 1)


def test_free_subgroup_membership_and_index():
    g = FreeGroup(2)
    h = subgroup_generate(g, [(1, 1)])  # <x^2>
    assert h.member((1, 1)) and h.member((-1, -1, -1, -1))
    assert not h.member((1,))
    assert h.index() is None
    full = subgroup_generate(g, [(1,), (2,)])
    assert full.index() == 1
    with pytest.raises(UntracedCoset):
        h.canonical_rep((2,))


def test_free_separate_builds_finite_index_overgroup():
    g = FreeGroup(2)
    h = subgroup_generate(g, [(1, 1)])
    k = separate_in_vertex_group(h, [(1,)])
    assert k.index() is not None
    assert k.member((1, 1))
    assert not k.member((1,))
    # conjugate generator, exclude the conjugated-away element
    h2 = subgroup_generate(g, [(1, 2, -1)])
    k2 = separate_in_vertex_group(h2, [(2,)])
    assert k2.member((1, 2, -1)) and not k2.member((2,))
    assert k2.index() is not None
    with pytest.raises(NotSeparated):
        separate_in_vertex_group(h, [(1, 1, 1, 1)])


def test_free_schreier_index_formula():
    g = FreeGroup(2)
    # index-2 subgroup <x^2, y, xyx^-1>: rank 3 by Nielsen-Schreier
    h = subgroup_generate(g, [(1, 1), (2,), (1, 2, -1)])
    assert h.index() == 2
    assert len(h.coset_reps()) == 2
    assert h.canonical_rep((1, 2)) == h.canonical_rep((1,))


def test_free_canonical_key_is_presentation_independent():
    g = FreeGroup(2)
    a = subgroup_generate(g, [(1,)])
    b = subgroup_generate(g, [(-1,)])
    assert a.canonical_key() == b.canonical_key()
    c = subgroup_generate(g, [(2,)])
    assert a.canonical_key() != c.canonical_key()


def test_free_elements_within_counts():
    g = FreeGroup(2)
    full = subgroup_generate(g, [(1,), (2,)])
    # reduced words of length <= 2 over 4 letters: 1 + 4 + 12
    assert len(full.elements_within(2)) == 17


# -- JSON ingestion ----------------------------------------------------------


def test_oracle_from_json_kinds():
    assert oracle_from_json({"kind": "integer"}).kind == "integer"
    assert oracle_from_json({"kind": "free", "rank": 2}).rank == 2
    g = oracle_from_json({"kind": "cyclic", "order": 3, "letter": "b"})
    assert g.elements == ["1", "b", "b2"]
    full = oracle_from_json(
        {
            "kind": "finite",
            "elements": ["1", "a"],
            "table": {"1": {"1": "1", "a": "a"}, "a": {"1": "a", "a": "1"}},
        }
    )
    assert full.order() == 2


@pytest.mark.parametrize(
    "doc,needle",
    [
        ({"kind": "nope"}, "$.kind"),
        ({"kind": "cyclic", "order": 0}, "$.order"),
        ({"kind": "finite"}, "$"),
        ({"kind": "free", "rank": "two"}, "$.rank"),
        ("not a dict", "$"),
    ],
)
def test_oracle_from_json_schema_errors(doc, needle):
    with pytest.raises(SchemaError) as err:
        oracle_from_json(doc)
    assert needle in str(err.value)
