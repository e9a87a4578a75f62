import dataclasses

import pytest

from gogsep import (
    attach_separating_path,
    check_immersion,
    fold,
    separate_element,
    subgroup_member,
    trim_core,
    verify_certificate,
    wedge,
)
from gogsep.errors import AlreadyMember, GogsepError

from conftest import W


def ab_loop(pslz):
    return W(pslz, "u", "a", "e", "b", "~e", "1")


# -- attach statuses ---------------------------------------------------------


def test_attach_loop_status(pslz):
    m = trim_core(fold(wedge(pslz, "u", [ab_loop(pslz)])))
    out, status = attach_separating_path(m, "v0", W(pslz, "u", "a"))
    assert status == ("loop", "a")
    assert out is m  # nothing to modify; the witness does the separating


def test_attach_open_status(pslz):
    ab = ab_loop(pslz)
    m = trim_core(fold(wedge(pslz, "u", [(ab * ab).reduce()])))
    out, status = attach_separating_path(m, "v0", ab)
    assert status == ("open", "v1_2")
    assert out is m


def test_attach_hair_status(pslz):
    m = trim_core(fold(wedge(pslz, "u", [ab_loop(pslz)])))
    b = W(pslz, "u", "1", "e", "b", "~e", "1")
    out, status = attach_separating_path(m, "v0", b)
    assert status == ("hair", "q1")
    assert sorted(out.domain.graph.vertices) == ["q1", "v0", "v1_1"]
    assert out.domain.graph.iota("h1") == "v1_1"
    assert out.domain.graph.tau("h1") == "q1"
    assert out.delta["h1"] == "b2"  # the carry the lift was stuck on
    assert check_immersion(out).ok
    # on the grafted immersion the lift now runs off the base loop
    _, status2 = attach_separating_path(out, "v0", b)
    assert status2 == ("open", "q1")


def test_attach_rejects_members(pslz):
    ab = ab_loop(pslz)
    m = trim_core(fold(wedge(pslz, "u", [ab])))
    with pytest.raises(AlreadyMember):
        attach_separating_path(m, "v0", (ab * ab).reduce())
    with pytest.raises(AlreadyMember):
        attach_separating_path(m, "v0", pslz.identity_word("u"))


# -- end-to-end degrees ------------------------------------------------------


def test_separate_pslz_loop_case(pslz):
    cert = separate_element(pslz, "u", [ab_loop(pslz)], W(pslz, "u", "a"), seed=0)
    assert cert.degree == 3
    assert verify_certificate(cert).ok
    assert cert.base_vertex == "v0"
    assert subgroup_member(cert.cover, "v0", ab_loop(pslz))


def test_separate_pslz_hair_case(pslz):
    b = W(pslz, "u", "1", "e", "b", "~e", "1")
    cert = separate_element(pslz, "u", [ab_loop(pslz)], b, seed=0)
    assert cert.degree == 4
    assert verify_certificate(cert).ok
    assert "q1" in cert.cover.domain.graph.vertices


def test_separate_dinfty(dinfty):
    gens = [W(dinfty, "u", "a", "e", "b", "~e", "1")]
    cert = separate_element(dinfty, "u", gens, W(dinfty, "u", "a"), seed=0)
    assert cert.degree == 2 and verify_certificate(cert).ok


def test_separate_z2(z2):
    gens = [
        W(z2, "x", "0", "e", "1", "~e", "0"),
        W(z2, "x", "1", "e", "1", "~e", "-1"),
    ]
    cert = separate_element(z2, "x", gens, W(z2, "x", "1"), seed=0)
    assert cert.degree == 2 and verify_certificate(cert).ok


def test_separate_rose2(rose2):
    gens = [
        W(rose2, "o", "1", "p", "1", "p", "1"),
        W(rose2, "o", "1", "q", "1"),
    ]
    cert = separate_element(rose2, "o", gens, W(rose2, "o", "1", "p", "1"), seed=0)
    assert cert.degree == 2 and verify_certificate(cert).ok


def test_separate_c2c3c2(c2c3c2):
    gens = [
        W(c2c3c2, "u", "a", "e", "b", "~e", "1"),
        W(c2c3c2, "u", "1", "e", "b", "f", "c", "~f", "b", "~e", "1"),
    ]
    g = W(c2c3c2, "u", "1", "e", "b", "f", "c", "~f", "b2", "~e", "1")
    cert = separate_element(c2c3c2, "u", gens, g, seed=0)
    assert cert.degree == 4 and verify_certificate(cert).ok


def test_separate_free_vertex_group(f2c2):
    gens = [W(f2c2, "x", "x1"), W(f2c2, "x", "1", "e", "a", "~e", "1")]
    cert = separate_element(f2c2, "x", gens, W(f2c2, "x", "x2"), seed=0)
    assert cert.degree == 2 and verify_certificate(cert).ok


def test_separate_rejects_members_and_bad_loops(pslz):
    ab = ab_loop(pslz)
    with pytest.raises(AlreadyMember):
        separate_element(pslz, "u", [ab], ab.inverse())
    with pytest.raises(GogsepError):
        separate_element(pslz, "u", [ab], W(pslz, "w", "b"))


# -- verification ------------------------------------------------------------


def test_verify_transcript_steps(pslz):
    cert = separate_element(pslz, "u", [ab_loop(pslz)], W(pslz, "u", "a"), seed=0)
    report = verify_certificate(cert)
    assert report.ok
    assert [t["check"] for t in report.transcript] == [
        "structure", "cover", "degree", "generators", "element",
    ]
    assert all(t["ok"] for t in report.transcript)


def test_verify_rejects_wrong_degree(pslz):
    cert = separate_element(pslz, "u", [ab_loop(pslz)], W(pslz, "u", "a"), seed=0)
    bad = dataclasses.replace(cert, degree=cert.degree + 1)
    report = verify_certificate(bad)
    assert not report.ok
    failed = [t["check"] for t in report.transcript if not t["ok"]]
    assert failed == ["degree"]


def test_verify_rejects_broken_cover(pslz):
    cert = separate_element(pslz, "u", [ab_loop(pslz)], W(pslz, "u", "a"), seed=0)
    # collapse two edge decorations onto one coset
    twisted = cert.cover.copy(
        delta={**cert.cover.delta, "c1_1": cert.cover.delta["~c1_2"]}
    )
    report = verify_certificate(dataclasses.replace(cert, cover=twisted))
    assert not report.ok
    assert [t["check"] for t in report.transcript] == ["structure", "cover"]


def test_verify_rejects_member_element(pslz):
    ab = ab_loop(pslz)
    cert = separate_element(pslz, "u", [ab], W(pslz, "u", "a"), seed=0)
    bad = dataclasses.replace(cert, element=(ab * ab).reduce())
    report = verify_certificate(bad)
    failed = [t["check"] for t in report.transcript if not t["ok"]]
    assert failed == ["element"]


def test_verify_rejects_outside_generators(pslz):
    cert = separate_element(pslz, "u", [ab_loop(pslz)], W(pslz, "u", "a"), seed=0)
    bad = dataclasses.replace(cert, generators=[W(pslz, "u", "a")])
    report = verify_certificate(bad)
    failed = [t["check"] for t in report.transcript if not t["ok"]]
    assert "generators" in failed
