from dataclasses import replace

import pytest

from catkit.core.errors import BoundaryError
from catkit.core.fincat import chain_category, identity_nattrans
from catkit.core.monoidal import (
    Braiding,
    MonoidalTransformation,
    OplaxMonoidalFunctor,
    check_braided_functor,
    check_braiding,
    check_lax_monoidal_functor,
    check_monoidal,
    check_monoidal_functor,
    check_monoidal_transformation,
    check_oplax_monoidal_functor,
    coherence_report,
    compose_monoidal_functors,
    identity_braiding,
    identity_monoidal_functor,
    max_monoidal,
    monoid_monoidal,
    opposite_monoidal,
    opposite_monoidal_functor,
    product_braiding,
    product_monoidal,
)


def _laws(report) -> set:
    return {v.law for v in report}


def test_max_on_a_chain(chain3) -> None:
    ms = max_monoidal(chain3)
    assert ms.name == "chain3_max"
    assert ms.unit_object == "0"
    assert ms.ob("1", "2") == "2"
    assert check_monoidal(ms) == []


def test_monoid_as_one_object_monoidal(z2) -> None:
    ms = monoid_monoidal(z2)
    assert ms.mor("s", "s") == "e"
    assert check_monoidal(ms) == []


def test_bad_associator_breaks_pentagon_and_triangle(z2) -> None:
    ms = monoid_monoidal(z2)
    bad = replace(ms, assoc={("*", "*", "*"): "s"})
    laws = _laws(check_monoidal(bad))
    assert {"pentagon", "triangle"} <= laws
    assert {"pentagon", "triangle"} <= _laws(coherence_report(bad))


def test_product_and_opposite_monoidal(chain3, z2) -> None:
    prod = product_monoidal(max_monoidal(chain3), monoid_monoidal(z2))
    assert prod.unit_object == "(0,*)"
    assert check_monoidal(prod) == []
    assert check_monoidal(opposite_monoidal(max_monoidal(chain3))) == []


def test_identity_monoidal_functor(chain3) -> None:
    ms = max_monoidal(chain3)
    lax = identity_monoidal_functor(ms, "lax")
    assert check_lax_monoidal_functor(lax) == []
    assert check_monoidal_functor(compose_monoidal_functors(lax, lax)) == []
    with pytest.raises(BoundaryError):
        check_oplax_monoidal_functor(lax)
    oplax = identity_monoidal_functor(ms, "oplax")
    assert check_oplax_monoidal_functor(oplax) == []


def test_opposite_of_lax_is_oplax(chain3) -> None:
    lax = identity_monoidal_functor(max_monoidal(chain3), "lax")
    op = opposite_monoidal_functor(lax)
    assert op.kind == "oplax"
    assert check_oplax_monoidal_functor(op) == []


def test_unit_cell_in_the_wrong_direction(cl3) -> None:
    ms = max_monoidal(cl3.base)
    c = ms.base
    f = OplaxMonoidalFunctor(
        name="S",
        source=ms,
        target=ms,
        carrier=cl3.endo,
        tensorator={(a, b): "x" for a in c.objects for b in c.objects},
        unit_cell="0<=1",
    )
    with pytest.raises(BoundaryError, match="lax data"):
        check_monoidal_functor(f)


def test_symmetric_braiding_on_max(chain3) -> None:
    b = identity_braiding(max_monoidal(chain3))
    assert b.symmetric
    assert check_braiding(b) == []


def test_twist_on_z2_is_not_a_braiding(z2) -> None:
    ms = monoid_monoidal(z2)
    twist = Braiding(name="twist", monoidal=ms, components={("*", "*"): "s"})
    laws = _laws(check_braiding(twist))
    assert {"hexagon-1", "hexagon-2"} <= laws
    assert "braiding-naturality" not in laws


def test_product_braiding(chain3, z2) -> None:
    b = product_braiding(identity_braiding(max_monoidal(chain3)), identity_braiding(monoid_monoidal(z2)))
    assert b.symmetric
    assert check_braiding(b) == []


def test_identity_functor_is_braided() -> None:
    ms = max_monoidal(chain_category(2))
    b = identity_braiding(ms)
    assert check_braided_functor(identity_monoidal_functor(ms), b, b) == []


def test_identity_monoidal_transformation(chain3) -> None:
    ms = max_monoidal(chain3)
    lax = identity_monoidal_functor(ms, "lax")
    ident = MonoidalTransformation(name="1", source=lax, target=lax, cell=identity_nattrans(lax.carrier))
    assert check_monoidal_transformation(ident) == []
    oplax = identity_monoidal_functor(ms, "oplax")
    mixed = MonoidalTransformation(name="x", source=lax, target=oplax, cell=identity_nattrans(lax.carrier))
    with pytest.raises(BoundaryError):
        check_monoidal_transformation(mixed)
