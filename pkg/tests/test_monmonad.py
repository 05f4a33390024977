from dataclasses import replace

import pytest

from catkit.core.errors import BoundaryError, StructuralError
from catkit.core.monad import check_oplax_morphism
from catkit.core.monmonad import (
    Corruption,
    apply_corruptions,
    check_forgetting,
    check_interchange_equivalence,
    corruptions,
    identity_tuple,
    iter_corrupted_results,
    product_tuple,
    single_corruptions,
    tensor_morphism,
    thin_tuple,
    validate_as_monad_on_monoidal,
    validate_as_monoidal_in_monads,
    validate_tuple,
    with_kind,
)
from catkit.core.monoidal import max_monoidal


def test_closure_tuple_is_lax_monoidal(tuples) -> None:
    res = check_interchange_equivalence(tuples.get("cl3"))
    assert res.agree
    assert res.valid


def test_identity_tuple(chain3) -> None:
    t = identity_tuple(max_monoidal(chain3))
    assert validate_as_monoidal_in_monads(t) == []
    assert validate_as_monad_on_monoidal(t) == []


def test_tensor_is_an_oplax_monad_morphism(tuples) -> None:
    assert check_oplax_morphism(tensor_morphism(tuples.get("cl3"))) == []


def test_closure_without_bottom_fixed_is_not_oplax(cl3) -> None:
    t = thin_tuple("cl3_op", max_monoidal(cl3.base), cl3, kind="oplax")
    res = check_interchange_equivalence(t)
    assert res.agree
    assert res.in_monads and res.on_monoidal


def test_with_kind_inverts_cells(tuples) -> None:
    z2 = tuples.get("z2")
    op = with_kind(z2, "oplax")
    assert op.kind == "oplax"
    assert op.phi_unit == "s"
    assert validate_tuple(op) == []
    with pytest.raises(StructuralError):
        with_kind(tuples.get("cl3"), "oplax")


def test_corpus_oplax_tuples_are_valid(tuples) -> None:
    for name in ("cl3b_op", "z2_op"):
        res = check_interchange_equivalence(tuples.get(name))
        assert res.valid, name


def test_unknown_kind_is_a_structure_violation(tuples) -> None:
    t = replace(tuples.get("cl2"), kind="sideways")
    assert {v.law for v in validate_as_monad_on_monoidal(t)} == {"structure"}


def test_product_tuple_is_valid(tuples) -> None:
    res = check_interchange_equivalence(tuples.get("cl2xz2"))
    assert res.valid


def test_single_corruptions_of_z2(tuples) -> None:
    singles = single_corruptions(tuples.get("z2"))
    assert len(singles) == 13
    assert Corruption("phi", ("*", "*"), "e") in singles
    assert {ch.field for ch in singles} == {"phi", "phi_unit", "eta", "mu", "assoc", "lambda", "rho", "tensor", "endo"}


def test_corruption_label_and_apply(tuples) -> None:
    z2 = tuples.get("z2")
    bad = apply_corruptions(z2, [Corruption("phi_unit", (), "e")])
    assert bad.name == "z2!phi_unit[]=e"
    assert bad.phi_unit == "e"
    assert z2.phi_unit == "s"


def test_corrupted_z2_tuples_are_invalid_and_agree(tuples) -> None:
    z2 = tuples.get("z2")
    results = list(iter_corrupted_results(z2, min_count=20))
    assert len(results) == 20
    assert all(r.agree for r in results)
    assert all(not r.valid for r in results[:13])


def test_corruption_sampling_cap(tuples) -> None:
    cl2 = tuples.get("cl2")
    assert len(single_corruptions(cl2)) == 66
    assert len(corruptions(cl2, min_count=1, max_count=10)) == 10


def test_mixed_kind_product_is_rejected(tuples) -> None:
    with pytest.raises(BoundaryError):
        product_tuple(tuples.get("cl2"), tuples.get("z2_op"))


def test_valid_tuples_forget_to_valid_structures(tuples) -> None:
    for name, t in tuples.items():
        assert check_interchange_equivalence(t).valid, name
        assert check_forgetting(t) == [], name
        assert validate_tuple(t) == [], name


def test_corrupted_mult_fails_after_forgetting_the_monoidal_data(tuples) -> None:
    bad = apply_corruptions(tuples.get("z2"), [Corruption("mu", ("*",), "e")])
    laws = {v.law for v in check_forgetting(bad)}
    assert laws
    assert all(law.startswith("forget-monoidal/") for law in laws)
    assert validate_tuple(bad) != []


def test_corrupted_associator_fails_after_forgetting_the_monad(tuples) -> None:
    bad = apply_corruptions(tuples.get("z2"), [Corruption("assoc", ("*", "*", "*"), "s")])
    laws = {v.law for v in check_forgetting(bad)}
    assert "forget-monad/pentagon" in laws
    assert not any(law.startswith("forget-monoidal/") for law in laws)
