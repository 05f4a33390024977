from dataclasses import replace

import pytest

from catkit.core.errors import BoundaryError, SearchAborted
from catkit.core.fincat import (
    Functor,
    chain_category,
    check_category,
    check_functor,
    check_naturality,
    compose_functors,
    enumerate_functors,
    find_isomorphism,
    identity_functor,
    identity_nattrans,
    monoid_category,
    opposite_category,
    product_category,
    projection,
    split_object,
    terminal_category,
    vertical_compose,
    whisker,
)


def _laws(report) -> set:
    return {v.law for v in report}


def test_chain_is_a_category(chain3) -> None:
    assert chain3.objects == ("0", "1", "2")
    assert len(chain3.morphisms) == 6
    assert check_category(chain3) == []


def test_chain_composition(chain3) -> None:
    assert chain3.compose("1<=2", "0<=1") == "0<=2"
    assert chain3.compose_path("1<=2", "1<=1", "0<=1") == "0<=2"
    assert chain3.try_compose("0<=1", "1<=2") is None
    with pytest.raises(BoundaryError):
        chain3.compose("0<=1", "1<=2")


def test_missing_composite_is_reported(chain3) -> None:
    table = dict(chain3.table)
    del table[("1<=2", "0<=1")]
    broken = replace(chain3, table=table, _cache={})
    assert "composition-totality" in _laws(check_category(broken))


def test_non_associative_table_is_reported() -> None:
    mul = {
        ("e", "e"): "e",
        ("e", "a"): "a",
        ("e", "b"): "b",
        ("a", "e"): "a",
        ("b", "e"): "b",
        ("a", "a"): "b",
        ("a", "b"): "a",
        ("b", "a"): "b",
        ("b", "b"): "a",
    }
    c = monoid_category("M3", ["e", "a", "b"], mul, "e")
    assert "associativity" in _laws(check_category(c))


def test_product_category(chain3) -> None:
    prod = product_category(chain3, chain3)
    assert len(prod.objects) == 9
    assert len(prod.morphisms) == 36
    assert check_category(prod) == []
    assert split_object(prod, "(0,2)") == ("0", "2")
    assert product_category(chain3, chain3) is prod
    assert check_functor(projection(prod, 1)) == []


def test_opposite_category(chain3) -> None:
    op = opposite_category(chain3)
    assert check_category(op) == []
    assert op.dom("0<=1") == "1"
    assert opposite_category(op).name == chain3.name


def test_identity_functor_and_nattrans(chain3) -> None:
    idf = identity_functor(chain3)
    assert check_functor(idf) == []
    assert check_naturality(identity_nattrans(idf)) == []
    assert compose_functors(idf, idf) == idf


def test_vertical_compose_identities(chain3) -> None:
    ident = identity_nattrans(identity_functor(chain3))
    assert vertical_compose(ident, ident).components == ident.components


def test_ill_typed_functor_is_reported(chain3) -> None:
    bad = Functor(
        name="bad",
        source=chain3,
        target=chain3,
        ob_map={"0": "0", "1": "1", "2": "2"},
        mor_map={**{m.id: m.id for m in chain3.morphisms}, "0<=1": "0<=0"},
    )
    assert "functor-typing" in _laws(check_functor(bad))


def test_enumerate_functors_between_chains() -> None:
    c2 = chain_category(2)
    assert len(list(enumerate_functors(c2, c2))) == 3


def test_chain_is_isomorphic_to_its_opposite(chain3) -> None:
    found = find_isomorphism(chain3, opposite_category(chain3))
    assert found is not None
    forward, backward = found
    assert forward.ob("0") == "2"
    assert check_functor(forward) == []
    both = compose_functors(backward, forward)
    assert all(both.ob(a) == a for a in chain3.objects)


def test_isomorphism_search_rejects_size_mismatch(chain3, z2) -> None:
    assert find_isomorphism(chain3, z2) is None


def test_isomorphism_search_respects_cap(chain3) -> None:
    with pytest.raises(SearchAborted):
        find_isomorphism(chain3, opposite_category(chain3), max_objects=2)


def test_terminal_category(chain3) -> None:
    one = terminal_category()
    assert check_category(one) == []
    assert len(list(enumerate_functors(one, chain3))) == 3


def test_whiskering(cl3) -> None:
    s_eta = whisker(cl3.endo, cl3.unit)
    assert s_eta.at("0") == "1<=1"
    assert check_naturality(s_eta) == []
    eta_s = whisker(cl3.unit, cl3.endo)
    assert eta_s.at("0") == "1<=1"
    assert check_naturality(eta_s) == []
    with pytest.raises(BoundaryError):
        whisker(cl3.endo, cl3.endo)


def test_redirected_unit_composite_is_named(chain3) -> None:
    broken = replace(chain3, table={**chain3.table, ("0<=1", "0<=0"): "0<=2"}, _cache={})
    report = check_category(broken)
    assert [(v.law, v.where) for v in report] == [
        ("compose-typing", "(0<=1, 0<=0)"),
        ("right-unit", "(0<=1, 0<=0)"),
    ]
    assert report[1].lhs == "0<=2"
    assert report[1].rhs == "0<=1"


def test_product_with_terminal_is_the_category(chain3, z2) -> None:
    for c in (chain3, z2):
        prod = product_category(c, terminal_category())
        assert check_category(prod) == []
        found = find_isomorphism(prod, c)
        assert found is not None
        forward, backward = found
        assert check_functor(forward) == []
        assert check_functor(backward) == []
        assert forward.ob(f"({c.objects[0]},*)") == c.objects[0]


def test_product_is_symmetric_up_to_isomorphism(chain3, z2) -> None:
    c2 = chain_category(2)
    for left, right in ((c2, chain3), (chain3, z2)):
        found = find_isomorphism(product_category(left, right), product_category(right, left))
        assert found is not None
        forward, backward = found
        assert check_functor(forward) == []
        both = compose_functors(backward, forward)
        assert all(both.ob(a) == a for a in forward.source.objects)
