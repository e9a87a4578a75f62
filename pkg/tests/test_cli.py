import json

from gogsep.cli import main

from conftest import INSTANCES

PSLZ = str(INSTANCES / "pslz.json")
GENS = str(INSTANCES / "pslz_gens.json")
ELEMENT = str(INSTANCES / "pslz_element.json")


def write_json(path, doc):
    path.write_text(json.dumps(doc) + "\n")
    return str(path)


def test_fold_member_rank_index(tmp_path, capsys):
    folded = tmp_path / "folded.json"
    assert main(["fold", PSLZ, "--gens", GENS, "-o", str(folded)]) == 0
    assert "kurosh rank 1" in capsys.readouterr().err

    a_loop = write_json(tmp_path / "a.json", {"start": "u", "word": ["a"]})
    assert main(["member", str(folded), "--word", a_loop]) == 0
    assert json.loads(capsys.readouterr().out) == {"member": False}

    ab_loop = write_json(
        tmp_path / "ab.json", {"start": "u", "word": ["a", "e", "b", "~e", "1"]}
    )
    assert main(["member", str(folded), "--word", ab_loop]) == 0
    assert json.loads(capsys.readouterr().out) == {"member": True}

    assert main(["rank", str(folded)]) == 0
    assert json.loads(capsys.readouterr().out) == {
        "kurosh_rank": 1,
        "reduced_kurosh_rank": 0,
    }

    assert main(["index", str(folded)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["vertex_indices"] == {"v0": 2, "v1_1": 3}
    assert "cover_degree" not in out


def test_complete_then_index(tmp_path, capsys):
    folded = tmp_path / "folded.json"
    main(["fold", PSLZ, "--gens", GENS, "-o", str(folded)])
    cover = tmp_path / "cover.json"
    assert main(["complete", str(folded), "-o", str(cover)]) == 0
    assert "degree 3" in capsys.readouterr().err
    assert main(["index", str(cover)]) == 0
    assert json.loads(capsys.readouterr().out)["cover_degree"] == 3


def test_separate_verify_crosscheck(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    assert (
        main(
            [
                "separate", PSLZ,
                "--gens", GENS,
                "--element", ELEMENT,
                "--seed", "0",
                "-o", str(cert),
            ]
        )
        == 0
    )
    capsys.readouterr()
    assert main(["verify", str(cert)]) == 0
    out = capsys.readouterr().out
    assert "verdict: pass" in out and "FAIL" not in out
    assert main(["crosscheck", str(cert), "--radius", "2"]) == 0
    out = capsys.readouterr().out
    assert "coset-enumeration" in out and "tree-ball" in out


def test_separate_seed_determinism(tmp_path):
    one, two = tmp_path / "one.json", tmp_path / "two.json"
    for path in (one, two):
        main(
            [
                "separate", PSLZ,
                "--gens", GENS,
                "--element", ELEMENT,
                "--seed", "7",
                "-o", str(path),
            ]
        )
    assert one.read_bytes() == two.read_bytes()


def test_verify_fails_on_tampered_certificate(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    main(
        [
            "separate", PSLZ,
            "--gens", GENS,
            "--element", ELEMENT,
            "--seed", "0",
            "-o", str(cert),
        ]
    )
    doc = json.loads(cert.read_text())
    doc["degree"] = 5
    cert.write_text(json.dumps(doc))
    capsys.readouterr()
    assert main(["verify", str(cert)]) == 1
    out = capsys.readouterr().out
    assert "FAIL degree" in out and "verdict: fail" in out


def test_member_rejects_already_member_element(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    element = write_json(
        tmp_path / "abab.json",
        {"start": "u", "word": ["a", "e", "b", "~e", "a", "e", "b", "~e", "1"]},
    )
    code = main(
        ["separate", PSLZ, "--gens", GENS, "--element", element, "-o", str(cert)]
    )
    assert code == 1
    assert "error:" in capsys.readouterr().err
    assert not cert.exists()


def test_schema_error_exit_code(tmp_path, capsys):
    bad = write_json(tmp_path / "bad.json", {"vertices": {}})
    assert main(["rank", bad]) == 2
    assert "schema error" in capsys.readouterr().err
    assert main(["rank", str(tmp_path / "missing.json")]) == 2
    capsys.readouterr()


def test_enlarge_roundtrip(tmp_path, capsys):
    z2doc = write_json(
        tmp_path / "z2.json",
        {
            "vertices": {"x": {"kind": "integer"}, "y": {"kind": "integer"}},
            "edges": [{"id": "e", "from": "x", "to": "y"}],
            "base": "x",
        },
    )
    gens = write_json(
        tmp_path / "gens.json",
        [
            {"start": "x", "word": ["0", "e", "1", "~e", "0"]},
            {"start": "x", "word": ["1", "e", "1", "~e", "-1"]},
        ],
    )
    folded = tmp_path / "folded.json"
    main(["fold", z2doc, "--gens", gens, "-o", str(folded)])
    enlarged = tmp_path / "enlarged.json"
    assert main(["enlarge", str(folded), "-o", str(enlarged)]) == 0
    capsys.readouterr()
    assert main(["index", str(enlarged)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert all(isinstance(v, int) for v in out["vertex_indices"].values())


def test_paper_left_convention_round_trip(tmp_path, capsys):
    folded = tmp_path / "folded.json"
    main(["fold", PSLZ, "--gens", GENS, "--convention", "paper-left",
          "-o", str(folded)])
    doc = json.loads(folded.read_text())
    assert doc["convention"] == "paper-left"
    capsys.readouterr()
    # the reader undoes the inversion: membership answers stay the same
    ab_loop = write_json(
        tmp_path / "ab.json", {"start": "u", "word": ["a", "e", "b", "~e", "1"]}
    )
    assert main(["member", str(folded), "--word", ab_loop]) == 0
    assert json.loads(capsys.readouterr().out) == {"member": True}


def test_export_dot(tmp_path, capsys):
    out = tmp_path / "g.dot"
    assert main(["export-dot", PSLZ, "-o", str(out)]) == 0
    text = out.read_text()
    assert text.startswith("graph target {")
    assert '"u" -- "w"' in text
    folded = tmp_path / "folded.json"
    main(["fold", PSLZ, "--gens", GENS, "-o", str(folded)])
    capsys.readouterr()
    assert main(["export-dot", str(folded)]) == 0
    dot = capsys.readouterr().out
    assert dot.startswith("graph domain {")
    assert "v0 -> u" in dot and "d=a" in dot
    cert = tmp_path / "cert.json"
    main(
        ["separate", PSLZ, "--gens", GENS, "--element", ELEMENT,
         "--seed", "0", "-o", str(cert)]
    )
    capsys.readouterr()
    assert main(["export-dot", str(cert)]) == 0
    dot = capsys.readouterr().out
    assert dot.startswith("graph domain {") and "v0 -> u" in dot
