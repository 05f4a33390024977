import json
from dataclasses import replace
from pathlib import Path

import pytest

from catkit.cli import EXIT_OK, EXIT_STRUCTURAL, EXIT_VIOLATIONS, main
from catkit.core.fincat import chain_category, cyclic_group_category
from catkit.core.monad import poset_endomap_monad
from catkit.core.monoidal import monoid_monoidal
from catkit.io.fileformat import FORMAT_VERSION, load, save

SHIPPED = Path(__file__).resolve().parent.parent / "corpus"


def test_version(capsys) -> None:
    with pytest.raises(SystemExit) as exc:
        main(["--version"])
    assert exc.value.code == 0
    assert FORMAT_VERSION in capsys.readouterr().out


def test_check_interchange_passes(capsys) -> None:
    assert main(["check-interchange", "--tuple", "cl3"]) == EXIT_OK
    out = capsys.readouterr().out
    assert out.startswith("catkit check-interchange --tuple cl3\n")
    assert "  PASS  interchange:cl3" in out
    assert "        kind = lax" in out
    assert "summary: checks=1 passed=1 failed=0 violations=0" in out


def test_oplax_flag_rereads_the_tuple(capsys) -> None:
    assert main(["check-interchange", "--tuple", "cl3", "--oplax"]) == EXIT_VIOLATIONS
    out = capsys.readouterr().out
    assert "FAIL  interchange:cl3" in out
    assert "        kind = oplax" in out
    assert "        agree = true" in out


def test_lift_precondition_failure_is_a_violation(capsys) -> None:
    assert main(["lift-kleisli", "--tuple", "cl3b_op"]) == EXIT_VIOLATIONS
    assert "error = PreconditionError" in capsys.readouterr().out


def test_unknown_name_is_structural(capsys) -> None:
    assert main(["check-interchange", "--tuple", "nope"]) == EXIT_STRUCTURAL
    captured = capsys.readouterr()
    assert captured.out == ""
    assert "error:" in captured.err


def test_product_check_needs_two_names(capsys) -> None:
    assert main(["product-check", "--tuple", "cl2"]) == EXIT_STRUCTURAL
    assert main(["product-check", "--tuple", "cl2", "--tuple", "z2"]) == EXIT_OK
    assert "PASS  product-lift:cl2xz2" in capsys.readouterr().out


def test_validate_reports_a_broken_monad(tmp_path, capsys) -> None:
    c = chain_category(3)
    bad = poset_endomap_monad(c, {"0": "1", "1": "2", "2": "2"}, name="grow")
    path = tmp_path / "grow.json"
    save(bad, str(path))
    assert main(["validate", str(path)]) == EXIT_VIOLATIONS
    out = capsys.readouterr().out
    assert "  PASS  category:chain3" in out
    assert "  FAIL  monad:grow" in out


def test_malformed_file_is_structural(tmp_path, capsys) -> None:
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    assert main(["validate", str(path)]) == EXIT_STRUCTURAL
    assert "broken.json:1:" in capsys.readouterr().err


def test_report_is_identical_for_any_worker_count(capsys) -> None:
    outputs = []
    for workers in ("1", "4"):
        argv = ["kleisli", "--monad", "cl3", "--monad", "z2s", "--report", "json", "--workers", workers]
        assert main(argv) == EXIT_OK
        outputs.append(capsys.readouterr().out)
    assert outputs[0] == outputs[1]
    data = json.loads(outputs[0])
    assert [c["name"] for c in data["checks"]] == ["kleisli:cl3", "kleisli:z2s"]
    assert data["exit_code"] == 0


def test_em_notes(capsys) -> None:
    assert main(["em", "--monad", "cl3"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "        algebras = 2" in out
    assert "        carriers = 1,2" in out


def test_corpus_writes_a_loadable_file(tmp_path, capsys) -> None:
    path = tmp_path / "corpus.json"
    assert main(["corpus", "-o", str(path)]) == EXIT_OK
    ws = load(str(path))
    assert "cl3b_op" in ws.tuples
    assert "Z2_twist" in ws.braidings
    assert "  tuples = 9" in capsys.readouterr().out


def test_corpus_needs_an_output_path(capsys) -> None:
    assert main(["corpus"]) == EXIT_STRUCTURAL
    assert "error: corpus needs -o PATH" in capsys.readouterr().err


def test_bad_corpus_file_is_structural(tmp_path, capsys) -> None:
    path = tmp_path / "broken.yaml"
    path.write_text("tuples: [\n", encoding="utf-8")
    assert main(["sweep", "--corpus-file", str(path)]) == EXIT_STRUCTURAL
    assert "broken.yaml:" in capsys.readouterr().err
    assert main(["sweep", "--corpus-file", str(tmp_path / "missing.yaml")]) == EXIT_STRUCTURAL
    assert main(["sweep", "--groups", "nope"]) == EXIT_STRUCTURAL
    assert main(["kleisli", "--workers", "0"]) == EXIT_STRUCTURAL


def test_lift_writes_the_lifted_structure(tmp_path) -> None:
    path = tmp_path / "lifted.json"
    assert main(["lift-kleisli", "--tuple", "cl3", "-o", str(path)]) == EXIT_OK
    ws = load(str(path))
    assert "chain3_max_Kl(cl3)" in ws.monoidal
    assert "Kl(cl3)" in ws.categories
    assert main(["validate", str(path)]) == EXIT_OK


def test_sweep_over_small_groups(tmp_path, capsys) -> None:
    profile = tmp_path / "profile.json"
    code = main(["sweep", "--groups", "monoids,braidings", "--profile", str(profile)])
    out = capsys.readouterr().out
    assert code == EXIT_OK
    assert "  PASS  braiding:Z2_twist" in out
    assert "        expected = invalid" in out
    assert "  PASS  monad-laws:chain3" in out
    families = json.loads(profile.read_text(encoding="utf-8"))["families"]
    assert families["braiding"]["checks"] == 3


def test_validate_names_the_broken_pentagon(tmp_path, capsys) -> None:
    ms = monoid_monoidal(cyclic_group_category(2))
    bad = replace(ms, assoc={("*", "*", "*"): "s"})
    path = tmp_path / "pentagon.json"
    save(bad, str(path))
    assert main(["validate", str(path)]) == EXIT_VIOLATIONS
    out = capsys.readouterr().out
    assert f"  FAIL  monoidal:{ms.name}" in out
    assert "        - pentagon at " in out


def test_shipped_chain3_file(capsys) -> None:
    path = str(SHIPPED / "chain3.ck")
    assert main(["check-interchange", "--tuple", "cl3", path]) == EXIT_OK
    out = capsys.readouterr().out
    assert "  PASS  interchange:cl3" in out
    assert "        agree = true" in out
    assert "        monoidal-in-monads = valid" in out
    assert "        monad-on-monoidal = valid" in out
    assert main(["validate", path]) == EXIT_OK


def test_shipped_broken_pentagon_file(capsys) -> None:
    assert main(["validate", str(SHIPPED / "broken_pentagon.ck")]) == EXIT_VIOLATIONS
    out = capsys.readouterr().out
    assert "  PASS  category:Z2" in out
    assert "  FAIL  monoidal:broken_pentagon" in out
    assert "        - pentagon at (*,*,*,*): " in out
