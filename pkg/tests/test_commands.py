from catkit.core.commands import Flags, run
from catkit.core.corpus import build_corpus


def test_sweep_over_tuples_products_and_braidings() -> None:
    corpus = build_corpus(groups=["tuples", "products", "braidings"])
    ws = corpus.workspace
    report = run("sweep", ws, Flags(workers=4, expect_invalid=frozenset(corpus.invalid)))
    failed = [(c.name, [v.describe() for v in c.violations][:3]) for c in report.checks if not c.passed]
    assert failed == []
    assert report.passed

    names = {c.name for c in report.checks}
    tuples = [t for _, t in ws.tuples.items()]
    assert {t.kind for t in tuples} == {"lax", "oplax"}
    for t in tuples:
        assert f"interchange:{t.name}" in names
        if corpus.expects_valid("tuples", t.name):
            lift = "lift-kleisli" if t.kind == "lax" else "lift-em"
            assert f"{lift}:{t.name}" in names

    corrupted = [c for c in report.checks if c.name.startswith("interchange-corruptions:")]
    assert len(corrupted) == len(tuples)
    for c in corrupted:
        notes = dict(c.notes)
        total = int(notes["corrupted"])
        assert total >= 100
        assert notes["agreement"] == f"{total}/{total}"
        assert int(notes["invalid"]) > 0


def test_sweep_lifts_braidings_onto_matching_tuples() -> None:
    corpus = build_corpus(groups=["tuples", "braidings"])
    report = run("sweep", corpus.workspace, Flags(expect_invalid=frozenset(corpus.invalid), min_corruptions=1))
    by_name = {c.name: c for c in report.checks}
    assert by_name["braiding:Z2_twist"].passed
    assert dict(by_name["braiding:Z2_twist"].notes)["expected"] == "invalid"
    assert "lift-braided:z2:Z2_sym" in by_name
    assert not any(name.endswith(":Z2_twist") and name.startswith("lift-braided") for name in by_name)
