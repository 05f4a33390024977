import pytest

from catkit.core.corpus import build_corpus
from catkit.core.errors import ConfigError, FormatError


def test_default_corpus(corpus) -> None:
    ws = corpus.workspace
    assert ws.tuples.names() == sorted(["id3", "cl2", "cl3", "cl3b", "cl3b_op", "cl4", "z2", "z2_op", "cl2xz2"])
    assert corpus.invalid == {("braidings", "Z2_twist")}
    assert corpus.expects_valid("tuples", "cl3")
    assert "cl2xz2s" in ws.monads


def test_group_limit() -> None:
    ws = build_corpus(groups=["chains"], limit=2).workspace
    assert ws.categories.names() == ["chain2", "chain3"]
    assert ws.monads.size() == 0


def test_references_are_built_on_demand() -> None:
    ws = build_corpus(groups=["tuples"], limit=1).workspace
    assert ws.tuples.names() == ["id3"]
    assert ws.monoidal.names() == ["chain3_max"]
    assert ws.monads.names() == ["id_chain3"]


def test_unknown_group() -> None:
    with pytest.raises(ConfigError):
        build_corpus(groups=["nope"])


def test_custom_corpus_file(tmp_path) -> None:
    path = tmp_path / "corpus.yaml"
    path.write_text(
        "closures:\n"
        "  - {name: top2, chain: 2, fixed: [\"1\"]}\n"
        "monoidal:\n"
        "  - {name: c2, max: chain2}\n"
        "tuples:\n"
        "  - {name: t, monoidal: c2, monad: top2, expect: invalid}\n",
        encoding="utf-8",
    )
    corpus = build_corpus(groups=["tuples"], corpus_file=str(path))
    assert corpus.workspace.tuples.names() == ["t"]
    assert corpus.workspace.monads.names() == ["top2"]
    assert not corpus.expects_valid("tuples", "t")


def test_missing_corpus_file(tmp_path) -> None:
    with pytest.raises(ConfigError):
        build_corpus(corpus_file=str(tmp_path / "missing.yaml"))


def test_malformed_corpus_file_reports_its_position(tmp_path) -> None:
    path = tmp_path / "broken.yaml"
    path.write_text("chains: [2, 3\nclosures: []\n", encoding="utf-8")
    with pytest.raises(FormatError) as exc:
        build_corpus(corpus_file=str(path))
    assert exc.value.path == str(path)
    assert exc.value.line > 0


def test_corpus_file_must_be_a_mapping(tmp_path) -> None:
    path = tmp_path / "list.yaml"
    path.write_text("- chains\n", encoding="utf-8")
    with pytest.raises(FormatError):
        build_corpus(corpus_file=str(path))
