import pytest

from catkit.core.errors import PreconditionError
from catkit.core.fincat import pair_id
from catkit.core.lift import (
    check_lift_product_compatibility,
    kleisli_tensor_oracle,
    lift_em,
    lift_em_braided,
    lift_kleisli,
    lift_kleisli_braided,
    lifted_summary,
    uncorrected_tensor_defects,
)
from catkit.core.monmonad import thin_tuple
from catkit.core.monoidal import check_monoidal, identity_braiding, max_monoidal
from catkit.core.resolutions import algebra_id


def test_kleisli_lift_of_closure(tuples) -> None:
    t = tuples.get("cl3")
    lk = lift_kleisli(t)
    assert lk.lifted.base is lk.resolution.kleisli_cat
    assert lk.lifted.name == "chain3_max_Kl(cl3)"
    assert lk.lifted.unit_object == "0"
    assert check_monoidal(lk.lifted) == []
    assert dict(lifted_summary(lk.lifted))["morphisms"] == "7"


def test_kleisli_tensor_matches_brute_force(tuples) -> None:
    t = tuples.get("cl3")
    lk = lift_kleisli(t)
    oracle = kleisli_tensor_oracle(t)
    tensor = lk.lifted.tensor
    assert len(oracle) == len(tensor.mor_map)
    for (k1, k2), want in oracle.items():
        assert tensor.mor(pair_id(k1, k2)) == want


def test_kleisli_lift_of_z2(tuples) -> None:
    lk = lift_kleisli(tuples.get("z2"))
    assert check_monoidal(lk.lifted) == []
    kc = lk.resolution.kleisli_cat
    assert all(kc.identity("*") == v for v in lk.free_as_monoidal.tensorator.values())


def test_kleisli_lift_needs_a_lax_tuple(tuples) -> None:
    with pytest.raises(PreconditionError):
        lift_kleisli(tuples.get("cl3b_op"))


def test_em_lift_of_oplax_closure(tuples) -> None:
    le = lift_em(tuples.get("cl3b_op"))
    assert le.lifted.base is le.resolution.em_cat
    assert le.lifted.unit_object == algebra_id("0", "0<=0")
    assert len(le.lifted.base.objects) == 2
    assert check_monoidal(le.lifted) == []
    assert uncorrected_tensor_defects(tuples.get("cl3b_op")) == []


def test_em_lift_of_z2(tuples) -> None:
    t = tuples.get("z2_op")
    le = lift_em(t)
    assert le.lifted.base.objects == (algebra_id("*", "s"),)
    assert check_monoidal(le.lifted) == []
    assert uncorrected_tensor_defects(t) != []


def test_em_lift_needs_an_oplax_tuple(tuples) -> None:
    with pytest.raises(PreconditionError):
        lift_em(tuples.get("cl3"))


def test_em_lift_rejects_invalid_oplax_data(cl3) -> None:
    bad = thin_tuple("cl3_op", max_monoidal(cl3.base), cl3, kind="oplax")
    with pytest.raises(PreconditionError) as exc:
        lift_em(bad)
    assert exc.value.report


def test_braided_kleisli_lift(tuples, corpus) -> None:
    b = corpus.workspace.braidings.get("Z2_sym")
    lifted = lift_kleisli_braided(tuples.get("z2"), b)
    assert lifted.braiding.name == "Z2_sym_Kl"
    assert lifted.braiding.symmetric


def test_braided_em_lift(tuples, corpus) -> None:
    b = corpus.workspace.braidings.get("chain3_max_sym")
    lifted = lift_em_braided(tuples.get("cl3b_op"), b)
    assert lifted.braiding.symmetric
    assert len(lifted.braiding.components) == 4


def test_braided_lift_rejects_a_non_braiding(tuples, corpus) -> None:
    twist = corpus.workspace.braidings.get("Z2_twist")
    with pytest.raises(PreconditionError):
        lift_kleisli_braided(tuples.get("z2"), twist)


def test_braided_lift_needs_the_same_monoidal_structure(tuples) -> None:
    other = identity_braiding(tuples.get("cl2").monoidal)
    with pytest.raises(PreconditionError):
        lift_kleisli_braided(tuples.get("cl3"), other)


def test_lift_commutes_with_products(tuples) -> None:
    assert check_lift_product_compatibility(tuples.get("cl2"), tuples.get("z2")) == []
