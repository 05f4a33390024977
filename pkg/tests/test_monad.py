from dataclasses import replace

import pytest

from catkit.core.errors import PreconditionError
from catkit.core.fincat import identity_nattrans, terminal_category
from catkit.core.monad import (
    MonadTransformation,
    central_monad,
    check_comonad,
    check_comonad_morphism,
    check_lax_morphism,
    check_monad,
    check_monad_transformation,
    check_oplax_morphism,
    closure_monad,
    closure_operators,
    compose_lax,
    compose_oplax,
    identity_lax,
    identity_monad,
    identity_oplax,
    monotone_maps,
    mult_as_lax,
    mult_as_oplax,
    opposite_lax_morphism,
    opposite_monad,
    poset_endomap_monad,
    product_monad,
    product_projection,
    terminal_morphism,
)


def test_closure_is_a_monad(cl3) -> None:
    assert cl3.endo.ob_map == {"0": "1", "1": "1", "2": "2"}
    assert check_monad(cl3) == []


def test_identity_monad(chain3) -> None:
    assert check_monad(identity_monad(chain3)) == []


def test_non_idempotent_endomap_is_rejected(chain3) -> None:
    m = poset_endomap_monad(chain3, {"0": "1", "1": "2", "2": "2"})
    assert check_monad(m) != []


def test_deflationary_endomap_is_rejected(chain3) -> None:
    m = poset_endomap_monad(chain3, {"0": "0", "1": "0", "2": "0"})
    laws = {v.law for v in check_monad(m)}
    assert "unit-naturality-typing" in laws


def test_only_closures_pass_on_chain3(chain3) -> None:
    accepted = [m for m in monotone_maps(chain3) if not check_monad(poset_endomap_monad(chain3, m))]
    assert len(monotone_maps(chain3)) == 10
    assert len(accepted) == len(closure_operators(chain3)) == 4


def test_closure_needs_a_fixed_point_above(chain3) -> None:
    with pytest.raises(PreconditionError):
        closure_monad(chain3, ["1"])


def test_central_monad_on_z2(z2, z2s) -> None:
    assert check_monad(z2s) == []
    bad = central_monad(z2, "e", "s")
    assert "left-unit" in {v.law for v in check_monad(bad)}


def test_identity_morphisms(cl3) -> None:
    assert check_oplax_morphism(identity_oplax(cl3)) == []
    assert check_lax_morphism(identity_lax(cl3)) == []
    assert check_oplax_morphism(compose_oplax(identity_oplax(cl3), identity_oplax(cl3))) == []


def test_multiplication_as_morphism(cl3, z2s) -> None:
    for m in (cl3, z2s):
        assert check_oplax_morphism(mult_as_oplax(m)) == []
        assert check_lax_morphism(mult_as_lax(m)) == []


def test_product_monad_and_projections(cl3, z2s) -> None:
    pm = product_monad(cl3, z2s)
    assert pm.name == "cl3xz2s"
    assert len(pm.base.objects) == 3
    assert check_monad(pm) == []
    assert check_oplax_morphism(product_projection(cl3, z2s, 0)) == []
    assert check_lax_morphism(product_projection(cl3, z2s, 1, lax=True)) == []


def test_terminal_morphism(cl3) -> None:
    one = terminal_category()
    assert check_oplax_morphism(terminal_morphism(cl3, "oplax", one)) == []
    assert check_lax_morphism(terminal_morphism(cl3, "lax", one)) == []


def test_identity_transformation(cl3) -> None:
    f = identity_oplax(cl3)
    t = MonadTransformation(name="1", source=f, target=f, cell=identity_nattrans(f.carrier))
    assert check_monad_transformation(t) == []


def test_opposite_monad_is_a_comonad(cl3, z2s) -> None:
    assert check_comonad(opposite_monad(cl3)) == []
    assert check_comonad(opposite_monad(z2s)) == []


def test_product_monad_is_invalid_when_a_factor_is(chain3, z2, cl3, z2s) -> None:
    bad_z2 = central_monad(z2, "e", "s")
    grow = poset_endomap_monad(chain3, {"0": "1", "1": "2", "2": "2"})
    for pm in (product_monad(cl3, bad_z2), product_monad(bad_z2, cl3), product_monad(grow, z2s)):
        assert check_monad(pm)
    assert "left-unit" in {v.law for v in check_monad(product_monad(cl3, bad_z2))}
    assert check_monad(product_monad(cl3, z2s)) == []


def test_compose_with_multiplication(cl3, z2s) -> None:
    for m in (cl3, z2s):
        mu = mult_as_oplax(m)
        assert compose_oplax(mu, identity_oplax(m)) == mu
        assert compose_oplax(identity_oplax(mu.target), mu) == mu
        mu_lax = mult_as_lax(m)
        assert compose_lax(mu_lax, identity_lax(mu_lax.source)) == mu_lax
        assert check_lax_morphism(compose_lax(identity_lax(m), mu_lax)) == []


def test_compose_projection_with_terminal(cl3, z2s) -> None:
    one = terminal_category()
    oplax = compose_oplax(terminal_morphism(cl3, "oplax", one), product_projection(cl3, z2s, 0))
    assert check_oplax_morphism(oplax) == []
    assert oplax == terminal_morphism(product_monad(cl3, z2s), "oplax", one)
    lax = compose_lax(terminal_morphism(z2s, "lax", one), product_projection(cl3, z2s, 1, lax=True))
    assert check_lax_morphism(lax) == []


def test_lax_morphism_dualizes_to_a_comonad_morphism(cl3, z2s) -> None:
    for m in (cl3, z2s):
        for f in (identity_lax(m), mult_as_lax(m)):
            assert check_lax_morphism(f) == []
            assert check_comonad_morphism(opposite_lax_morphism(f)) == []


def test_corrupted_lax_morphism_fails_on_both_sides(z2s) -> None:
    f = mult_as_lax(z2s)
    bad = replace(f, interchange=replace(f.interchange, components={"*": "e"}))
    lax = check_lax_morphism(bad)
    co = check_comonad_morphism(opposite_lax_morphism(bad))
    assert [(v.law, v.where) for v in lax] == [("lax-unit", "*"), ("lax-mult", "*")]
    assert [(v.law, v.where) for v in co] == [("comonad-counit", "*"), ("comonad-comult", "*")]
