import json
from pathlib import Path

import pytest

from catkit.core.corpus import build_corpus
from catkit.core.errors import DuplicateName, FormatError, MissingEntity
from catkit.core.fincat import chain_category, check_category, check_naturality
from catkit.core.monad import closure_monad
from catkit.io.fileformat import FORMAT_VERSION, collect, dumps, encode_category, load, loads, save


def _chain2_doc() -> dict:
    return {
        "name": "c2",
        "objects": ["0", "1"],
        "morphisms": [
            {"id": "i0", "dom": "0", "cod": "0"},
            {"id": "i1", "dom": "1", "cod": "1"},
            {"id": "f", "dom": "0", "cod": "1"},
        ],
        "identities": {"0": "i0", "1": "i1"},
        "composition": [
            ["i0", "i0", "i0"],
            ["i1", "i1", "i1"],
            ["f", "i0", "f"],
            ["i1", "f", "f"],
        ],
    }


def test_round_trip_is_byte_identical() -> None:
    ws = build_corpus(groups=["tuples", "braidings"]).workspace
    text = dumps(ws)
    again = dumps(loads(text))
    assert again == text
    assert json.loads(text)["format"] == FORMAT_VERSION


def test_save_and_load_file(tmp_path, cl3) -> None:
    path = tmp_path / "cl3.json"
    save(cl3, str(path))
    ws = load(str(path))
    assert ws.monads.names() == ["cl3"]
    assert ws.categories.names() == ["chain3"]
    assert ws.monads.get("cl3") == cl3
    assert path.read_text(encoding="utf-8").endswith("}\n")


def test_collect_pulls_in_dependencies(tuples) -> None:
    ws = collect([tuples.get("z2")])
    assert ws.tuples.names() == ["z2"]
    assert ws.monoidal.names() == ["Z2_mul"]
    assert ws.monads.names() == ["z2s"]
    assert ws.categories.names() == ["Z2"]


def test_encode_category_is_sorted(chain3) -> None:
    rec = encode_category(chain3)
    ids = [m["id"] for m in rec["morphisms"]]
    assert ids == sorted(ids)
    assert rec["composition"] == sorted(rec["composition"])


def test_files_can_reference_each_other(tmp_path) -> None:
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text(json.dumps({"format": FORMAT_VERSION, "categories": [_chain2_doc()]}), encoding="utf-8")
    functor = {
        "name": "id",
        "source": "c2",
        "target": "c2",
        "ob_map": {"0": "0", "1": "1"},
        "mor_map": {"i0": "i0", "i1": "i1", "f": "f"},
    }
    b.write_text(json.dumps({"functors": [functor]}), encoding="utf-8")
    ws = load([str(a), str(b)])
    assert ws.functors.get("id").target is ws.categories.get("c2")


def test_duplicate_names_are_rejected() -> None:
    doc = {"format": FORMAT_VERSION, "categories": [_chain2_doc(), _chain2_doc()]}
    with pytest.raises(DuplicateName):
        loads(json.dumps(doc))


def test_syntax_error_reports_position() -> None:
    text = '{\n  "categories": [,]\n}\n'
    with pytest.raises(FormatError) as exc:
        loads(text, "broken.json")
    assert exc.value.line == 2
    assert exc.value.path == "broken.json"
    assert "broken.json:2:" in str(exc.value)


def test_unknown_section_and_version() -> None:
    with pytest.raises(FormatError):
        loads(json.dumps({"sets": []}))
    with pytest.raises(FormatError):
        loads(json.dumps({"format": "catkit-ff/0"}))


def test_dangling_functor_image_is_a_format_error() -> None:
    functor = {
        "name": "bad",
        "source": "c2",
        "target": "c2",
        "ob_map": {"0": "0", "1": "1"},
        "mor_map": {"i0": "i0", "i1": "i1", "f": "g"},
    }
    doc = {"categories": [_chain2_doc()], "functors": [functor]}
    with pytest.raises(FormatError):
        loads(json.dumps(doc))


def test_dangling_category_structure_is_a_format_error() -> None:
    cat = _chain2_doc()
    cat["composition"].append(["f", "i0", "nope"])
    with pytest.raises(FormatError):
        loads(json.dumps({"categories": [cat]}))


def test_unresolved_reference() -> None:
    doc = {"monads": [{"name": "m", "category": "nowhere", "endo": {"name": "S"}, "unit": {}, "mult": {}}]}
    with pytest.raises(MissingEntity):
        loads(json.dumps(doc))


def test_dangling_component_loads_and_is_reported() -> None:
    functor = {
        "name": "id",
        "source": "c2",
        "target": "c2",
        "ob_map": {"0": "0", "1": "1"},
        "mor_map": {"i0": "i0", "i1": "i1", "f": "f"},
    }
    nat = {"name": "t", "source": "id", "target": "id", "components": {"0": "i0", "1": "missing"}}
    ws = loads(json.dumps({"categories": [_chain2_doc()], "functors": [functor], "nattrans": [nat]}))
    laws = {v.law for v in check_naturality(ws.nattrans.get("t"))}
    assert laws == {"naturality-typing"}


def test_unreadable_file(tmp_path) -> None:
    with pytest.raises(FormatError):
        load(str(tmp_path / "missing.json"))


def test_shipped_chain3_file() -> None:
    ws = load(str(Path(__file__).resolve().parent.parent / "corpus" / "chain3.ck"))
    counts = ws.counts()
    assert (counts["categories"], counts["monads"], counts["monoidal"], counts["tuples"]) == (1, 1, 1, 1)
    c = ws.categories.get("chain3")
    assert check_category(c) == []
    assert c == chain_category(3)
    assert ws.monads.get("cl3") == closure_monad(c, ["1", "2"])
    assert ws.tuples.get("cl3").monoidal is ws.monoidal.get("chain3_max")
