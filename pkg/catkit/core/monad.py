from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Union

from catkit.core.errors import BoundaryError, PreconditionError, StructuralError
from catkit.core.fincat import (
    FinCat,
    Functor,
    NatTrans,
    check_functor,
    check_naturality,
    compose_functors,
    functor_product,
    identity_functor,
    identity_nattrans,
    is_identity_functor,
    nattrans_pairing,
    nattrans_product,
    opposite_category,
    opposite_functor,
    opposite_nattrans,
    pair_id,
    pairing_functor,
    product_category,
    projection,
    same_category,
    terminal_category,
    terminal_functor,
    vertical_compose,
    whisker_left,
    whisker_right,
)
from catkit.core.models import LawCollector, Report

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Monad:
    name: str
    base: FinCat
    endo: Functor
    unit: NatTrans
    mult: NatTrans

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Monad):
            return NotImplemented
        return self.endo == other.endo and self.unit == other.unit and self.mult == other.mult

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True, eq=False)
class Comonad:
    name: str
    base: FinCat
    endo: Functor
    counit: NatTrans
    comult: NatTrans


@dataclass(frozen=True, eq=False)
class OplaxMonadMorphism:
    """(F, τ) with τ: F∘S ⇒ S'∘F."""

    name: str
    source: Monad
    target: Monad
    carrier: Functor
    interchange: NatTrans

    kind = "oplax"

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, OplaxMonadMorphism):
            return NotImplemented
        return self.carrier == other.carrier and self.interchange == other.interchange

    __hash__ = None  # type: ignore[assignment]


@dataclass(frozen=True, eq=False)
class LaxMonadMorphism:
    """(F, τ) with τ: S'∘F ⇒ F∘S."""

    name: str
    source: Monad
    target: Monad
    carrier: Functor
    interchange: NatTrans

    kind = "lax"

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, LaxMonadMorphism):
            return NotImplemented
        return self.carrier == other.carrier and self.interchange == other.interchange

    __hash__ = None  # type: ignore[assignment]


MonadMorphism = Union[OplaxMonadMorphism, LaxMonadMorphism]


@dataclass(frozen=True, eq=False)
class MonadTransformation:
    name: str
    source: MonadMorphism
    target: MonadMorphism
    cell: NatTrans

    @property
    def kind(self) -> str:
        return self.source.kind


# ---------------------------------------------------------------------------
# Checkers
# ---------------------------------------------------------------------------


def check_monad(m: Monad) -> Report:
    c, S = m.base, m.endo
    if not same_category(S.source, c) or not same_category(S.target, c):
        raise BoundaryError(f"monad {m.name}: endofunctor {S.name} is not on {c.name}")
    if not is_identity_functor(m.unit.source) or not same_category(m.unit.source.source, c):
        raise BoundaryError(f"monad {m.name}: unit does not start at the identity functor")
    if m.unit.target != S:
        raise BoundaryError(f"monad {m.name}: unit does not end at {S.name}")
    if m.mult.source != compose_functors(S, S):
        raise BoundaryError(f"monad {m.name}: multiplication does not start at {S.name}∘{S.name}")
    if m.mult.target != S:
        raise BoundaryError(f"monad {m.name}: multiplication does not end at {S.name}")

    col = LawCollector()
    col.extend(check_functor(S))
    col.extend(check_naturality(m.unit, law="unit-naturality"))
    col.extend(check_naturality(m.mult, law="mult-naturality"))
    for a in c.objects:
        eta, mu = m.unit.at(a), m.mult.at(a)
        sa = S.ob(a)
        sid = c.identity(sa)
        eta_s = m.unit.at(sa)
        mu_s = m.mult.at(sa)
        s_eta = S.mor_map.get(eta) if c.has_morphism(eta) else None
        s_mu = S.mor_map.get(mu) if c.has_morphism(mu) else None
        col.equal("left-unit", a, c.try_compose(mu, eta_s), sid)
        col.equal("right-unit", a, c.try_compose(mu, s_eta), sid)
        col.equal("associativity", a, c.try_compose(mu, mu_s), c.try_compose(mu, s_mu))
    return col.report()


def _check_morphism_boundary(f: MonadMorphism) -> None:
    F = f.carrier
    if not same_category(F.source, f.source.base) or not same_category(F.target, f.target.base):
        raise BoundaryError(f"monad morphism {f.name}: carrier {F.name} does not match the monads' bases")
    bad = check_functor(F)
    if bad:
        raise StructuralError(f"monad morphism {f.name}: carrier {F.name} is not a functor ({bad[0].describe()})")


def check_oplax_morphism(f: OplaxMonadMorphism) -> Report:
    _check_morphism_boundary(f)
    S, T = f.source, f.target
    F, tau = f.carrier, f.interchange
    d = T.base
    if tau.source != compose_functors(F, S.endo) or tau.target != compose_functors(T.endo, F):
        raise BoundaryError(f"oplax morphism {f.name}: interchange is not F∘S ⇒ S'∘F")

    col = LawCollector()
    col.extend(check_naturality(tau, law="interchange-naturality"))
    for a in S.base.objects:
        t_a = tau.at(a)
        # τ ∘ F(η) = η'_F
        f_eta = F.mor_map.get(S.unit.at(a))
        col.equal("oplax-unit", a, d.try_compose(t_a, f_eta), T.unit.at(F.ob(a)))
        # τ ∘ F(μ) = μ'_F ∘ S'(τ) ∘ τ_S
        f_mu = F.mor_map.get(S.mult.at(a))
        s_tau = T.endo.mor_map.get(t_a) if d.has_morphism(t_a) else None
        lhs = d.try_compose(t_a, f_mu)
        rhs = d.try_path(T.mult.at(F.ob(a)), s_tau, tau.at(S.endo.ob(a)))
        col.equal("oplax-mult", a, lhs, rhs)
    return col.report()


def check_lax_morphism(f: LaxMonadMorphism) -> Report:
    _check_morphism_boundary(f)
    S, T = f.source, f.target
    F, tau = f.carrier, f.interchange
    d = T.base
    if tau.source != compose_functors(T.endo, F) or tau.target != compose_functors(F, S.endo):
        raise BoundaryError(f"lax morphism {f.name}: interchange is not S'∘F ⇒ F∘S")

    col = LawCollector()
    col.extend(check_naturality(tau, law="interchange-naturality"))
    for a in S.base.objects:
        t_a = tau.at(a)
        # F(η) = τ ∘ η'_F
        f_eta = F.mor_map.get(S.unit.at(a))
        col.equal("lax-unit", a, f_eta, d.try_compose(t_a, T.unit.at(F.ob(a))))
        # F(μ) ∘ τ_S ∘ S'(τ) = τ ∘ μ'_F
        f_mu = F.mor_map.get(S.mult.at(a))
        s_tau = T.endo.mor_map.get(t_a) if d.has_morphism(t_a) else None
        lhs = d.try_path(f_mu, tau.at(S.endo.ob(a)), s_tau)
        rhs = d.try_compose(t_a, T.mult.at(F.ob(a)))
        col.equal("lax-mult", a, lhs, rhs)
    return col.report()


def check_monad_morphism(f: MonadMorphism) -> Report:
    if isinstance(f, LaxMonadMorphism):
        return check_lax_morphism(f)
    return check_oplax_morphism(f)


def check_monad_transformation(t: MonadTransformation) -> Report:
    src, tgt = t.source, t.target
    if type(src) is not type(tgt):
        raise BoundaryError(f"transformation {t.name}: endpoints mix lax and oplax morphisms")
    if src.source != tgt.source or src.target != tgt.target:
        raise BoundaryError(f"transformation {t.name}: endpoints are not parallel")
    sigma = t.cell
    if sigma.source != src.carrier or sigma.target != tgt.carrier:
        raise BoundaryError(f"transformation {t.name}: cell is not {src.carrier.name} ⇒ {tgt.carrier.name}")

    S, T = src.source, src.target
    d = T.base
    col = LawCollector()
    col.extend(check_naturality(sigma, law="cell-naturality"))
    for a in S.base.objects:
        sig_s = sigma.at(S.endo.ob(a))
        s_sig = T.endo.mor_map.get(sigma.at(a)) if d.has_morphism(sigma.at(a)) else None
        tau, tau2 = src.interchange.at(a), tgt.interchange.at(a)
        if src.kind == "oplax":
            # τ' ∘ σ_S = S'(σ) ∘ τ
            col.equal("oplax-square", a, d.try_compose(tau2, sig_s), d.try_compose(s_sig, tau))
        else:
            # σ_S ∘ τ = τ' ∘ S'(σ)
            col.equal("lax-square", a, d.try_compose(sig_s, tau), d.try_compose(tau2, s_sig))
    return col.report()


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def identity_monad(c: FinCat) -> Monad:
    idf = identity_functor(c)
    ident = identity_nattrans(idf)
    mult = NatTrans(name=f"mu_1_{c.name}", source=compose_functors(idf, idf), target=idf, components=dict(ident.components))
    return Monad(name=f"id_{c.name}", base=c, endo=idf, unit=ident, mult=mult)


def monad_from_cells(
    name: str,
    base: FinCat,
    endo: Functor,
    unit: Dict[str, str],
    mult: Dict[str, str],
) -> Monad:
    return Monad(
        name=name,
        base=base,
        endo=endo,
        unit=NatTrans(name=f"eta_{name}", source=identity_functor(base), target=endo, components=dict(unit)),
        mult=NatTrans(name=f"mu_{name}", source=compose_functors(endo, endo), target=endo, components=dict(mult)),
    )


def thin_cell(c: FinCat, a: str, b: str) -> str:
    """The unique morphism a -> b of a thin category, or the placeholder id 'a<=b' when none exists."""
    hom = c.hom(a, b)
    return hom[0] if hom else f"{a}<={b}"


def poset_endomap_monad(c: FinCat, mapping: Dict[str, str], name: Optional[str] = None) -> Monad:
    """
    Candidate monad on a thin category from a monotone endomap.

    Unit and multiplication take the unique available cells; where the poset has none,
    the component names a morphism that does not exist and check_monad reports it.
    """
    mor_map: Dict[str, str] = {}
    for m in c.morphisms:
        hom = c.hom(mapping[m.dom], mapping[m.cod])
        if not hom:
            raise StructuralError(f"endomap on {c.name} is not monotone at {m.id}")
        mor_map[m.id] = hom[0]
    label = name or "cl_" + "".join(mapping[a] for a in c.objects)
    endo = Functor(name=f"S_{label}", source=c, target=c, ob_map=dict(mapping), mor_map=mor_map)
    unit = {a: thin_cell(c, a, mapping[a]) for a in c.objects}
    mult = {a: thin_cell(c, mapping[mapping[a]], mapping[a]) for a in c.objects}
    return monad_from_cells(label, c, endo, unit, mult)


def closure_monad(c: FinCat, fixed_points: Iterable[str], name: Optional[str] = None) -> Monad:
    """Closure operator on a poset sending x to the least fixed point above it."""
    fixed = [a for a in c.objects if a in set(fixed_points)]
    mapping: Dict[str, str] = {}
    for a in c.objects:
        above = [b for b in fixed if c.hom(a, b)]
        least = [b for b in above if all(c.hom(b, x) for x in above)]
        if not least:
            raise PreconditionError(f"{c.name}: no least fixed point above {a}")
        mapping[a] = least[0]
    return poset_endomap_monad(c, mapping, name=name)


def monotone_maps(c: FinCat) -> List[Dict[str, str]]:
    out = []
    for images in itertools.product(c.objects, repeat=len(c.objects)):
        mapping = dict(zip(c.objects, images))
        if all(c.hom(mapping[m.dom], mapping[m.cod]) for m in c.morphisms):
            out.append(mapping)
    return out


def closure_operators(c: FinCat) -> List[Monad]:
    """All closure monads on a chain, one per fixed-point set containing the top element."""
    top = c.objects[-1]
    rest = list(c.objects[:-1])
    out = []
    for r in range(len(rest) + 1):
        for subset in itertools.combinations(rest, r):
            out.append(closure_monad(c, list(subset) + [top]))
    return out


def central_monad(c: FinCat, unit: str, mult: str, name: Optional[str] = None) -> Monad:
    """Identity endofunctor on a one-object category with constant unit and multiplication cells."""
    idf = identity_functor(c)
    star = c.objects[0]
    return monad_from_cells(name or f"{c.name}_{unit}{mult}", c, idf, {star: unit}, {star: mult})


def product_monad(m: Monad, n: Monad) -> Monad:
    base = product_category(m.base, n.base)
    endo = functor_product(m.endo, n.endo)
    unit = nattrans_product(m.unit, n.unit)
    mult = nattrans_product(m.mult, n.mult)
    name = f"{m.name}x{n.name}"
    return Monad(
        name=name,
        base=base,
        endo=endo,
        unit=NatTrans(name=f"eta_{name}", source=identity_functor(base), target=endo, components=unit.components),
        mult=NatTrans(
            name=f"mu_{name}", source=compose_functors(endo, endo), target=endo, components=mult.components
        ),
    )


def _identity_interchange(source_functor: Functor, target_functor: Functor) -> Dict[str, str]:
    c = source_functor.target
    return {a: c.identity(source_functor.ob(a)) for a in source_functor.source.objects}


def product_projection(m: Monad, n: Monad, index: int, lax: bool = False) -> MonadMorphism:
    pm = product_monad(m, n)
    factor = m if index == 0 else n
    p = projection(pm.base, index)
    if lax:
        src, tgt = compose_functors(factor.endo, p), compose_functors(p, pm.endo)
        cls = LaxMonadMorphism
    else:
        src, tgt = compose_functors(p, pm.endo), compose_functors(factor.endo, p)
        cls = OplaxMonadMorphism
    tau = NatTrans(name=f"tau_pi{index}", source=src, target=tgt, components=_identity_interchange(src, tgt))
    return cls(name=f"pi{index}_{pm.name}", source=pm, target=factor, carrier=p, interchange=tau)


def identity_oplax(m: Monad) -> OplaxMonadMorphism:
    idf = identity_functor(m.base)
    tau = NatTrans(
        name=f"tau_1_{m.name}",
        source=compose_functors(idf, m.endo),
        target=compose_functors(m.endo, idf),
        components={a: m.base.identity(m.endo.ob(a)) for a in m.base.objects},
    )
    return OplaxMonadMorphism(name=f"1_{m.name}", source=m, target=m, carrier=idf, interchange=tau)


def identity_lax(m: Monad) -> LaxMonadMorphism:
    f = identity_oplax(m)
    return LaxMonadMorphism(name=f.name, source=m, target=m, carrier=f.carrier, interchange=f.interchange)


def mult_as_oplax(m: Monad) -> OplaxMonadMorphism:
    """(S, μ): S → identity monad on the base."""
    target = identity_monad(m.base)
    tau = NatTrans(
        name=f"mu_{m.name}",
        source=compose_functors(m.endo, m.endo),
        target=compose_functors(target.endo, m.endo),
        components=dict(m.mult.components),
    )
    return OplaxMonadMorphism(name=f"({m.endo.name},mu)", source=m, target=target, carrier=m.endo, interchange=tau)


def mult_as_lax(m: Monad) -> LaxMonadMorphism:
    """(S, μ): identity monad → S."""
    source = identity_monad(m.base)
    tau = NatTrans(
        name=f"mu_{m.name}",
        source=compose_functors(m.endo, m.endo),
        target=compose_functors(m.endo, source.endo),
        components=dict(m.mult.components),
    )
    return LaxMonadMorphism(name=f"({m.endo.name},mu)", source=source, target=m, carrier=m.endo, interchange=tau)


def compose_oplax(g: OplaxMonadMorphism, f: OplaxMonadMorphism) -> OplaxMonadMorphism:
    """(G, σ)∘(F, τ) = (G∘F, σ_F ∘ G(τ))."""
    if f.target != g.source:
        raise BoundaryError(f"cannot compose oplax morphism {g.name} after {f.name}")
    tau = vertical_compose(whisker_right(g.interchange, f.carrier), whisker_left(g.carrier, f.interchange))
    carrier = compose_functors(g.carrier, f.carrier)
    tau = NatTrans(
        name=f"tau_{g.name}.{f.name}",
        source=compose_functors(carrier, f.source.endo),
        target=compose_functors(g.target.endo, carrier),
        components=tau.components,
    )
    return OplaxMonadMorphism(
        name=f"{g.name}.{f.name}", source=f.source, target=g.target, carrier=carrier, interchange=tau
    )


def compose_lax(g: LaxMonadMorphism, f: LaxMonadMorphism) -> LaxMonadMorphism:
    """(G, σ)∘(F, τ) = (G∘F, G(τ) ∘ σ_F)."""
    if f.target != g.source:
        raise BoundaryError(f"cannot compose lax morphism {g.name} after {f.name}")
    tau = vertical_compose(whisker_left(g.carrier, f.interchange), whisker_right(g.interchange, f.carrier))
    carrier = compose_functors(g.carrier, f.carrier)
    tau = NatTrans(
        name=f"tau_{g.name}.{f.name}",
        source=compose_functors(g.target.endo, carrier),
        target=compose_functors(carrier, f.source.endo),
        components=tau.components,
    )
    return LaxMonadMorphism(name=f"{g.name}.{f.name}", source=f.source, target=g.target, carrier=carrier, interchange=tau)


def product_morphism(f: MonadMorphism, g: MonadMorphism) -> MonadMorphism:
    """f × g between product monads; both must be of the same kind."""
    if type(f) is not type(g):
        raise BoundaryError("cannot take the product of a lax and an oplax morphism")
    src, tgt = product_monad(f.source, g.source), product_monad(f.target, g.target)
    carrier = functor_product(f.carrier, g.carrier)
    comps = nattrans_product(f.interchange, g.interchange).components
    if f.kind == "oplax":
        s, t = compose_functors(carrier, src.endo), compose_functors(tgt.endo, carrier)
    else:
        s, t = compose_functors(tgt.endo, carrier), compose_functors(carrier, src.endo)
    tau = NatTrans(name=f"tau_{f.name}x{g.name}", source=s, target=t, components=comps)
    return type(f)(name=f"{f.name}x{g.name}", source=src, target=tgt, carrier=carrier, interchange=tau)


def pair_morphism(f: MonadMorphism, g: MonadMorphism) -> MonadMorphism:
    """<f, g>: S → T1 × T2 for morphisms out of the same monad."""
    if type(f) is not type(g):
        raise BoundaryError("cannot pair a lax and an oplax morphism")
    if f.source != g.source:
        raise BoundaryError(f"cannot pair {f.name} and {g.name}: different source monads")
    tgt = product_monad(f.target, g.target)
    carrier = pairing_functor(f.carrier, g.carrier)
    comps = nattrans_pairing(f.interchange, g.interchange).components
    if f.kind == "oplax":
        s, t = compose_functors(carrier, f.source.endo), compose_functors(tgt.endo, carrier)
    else:
        s, t = compose_functors(tgt.endo, carrier), compose_functors(carrier, f.source.endo)
    tau = NatTrans(name=f"tau_<{f.name},{g.name}>", source=s, target=t, components=comps)
    return type(f)(name=f"<{f.name},{g.name}>", source=f.source, target=tgt, carrier=carrier, interchange=tau)


def terminal_morphism(m: Monad, kind: str = "oplax", terminal: Optional[FinCat] = None) -> MonadMorphism:
    """(!, 1): S → identity monad on the terminal category."""
    one = terminal or terminal_category()
    target = identity_monad(one)
    bang = terminal_functor(m.base, one)
    if kind == "oplax":
        s, t = compose_functors(bang, m.endo), compose_functors(target.endo, bang)
        cls = OplaxMonadMorphism
    else:
        s, t = compose_functors(target.endo, bang), compose_functors(bang, m.endo)
        cls = LaxMonadMorphism
    star = one.objects[0]
    tau = NatTrans(name="tau_!", source=s, target=t, components={a: one.identity(star) for a in m.base.objects})
    return cls(name=f"!_{m.name}", source=m, target=target, carrier=bang, interchange=tau)


def opposite_monad(m: Monad) -> Comonad:
    """A monad on C read as a comonad on C^op."""
    return Comonad(
        name=f"{m.name}^op",
        base=opposite_category(m.base),
        endo=opposite_functor(m.endo),
        counit=opposite_nattrans(m.unit),
        comult=opposite_nattrans(m.mult),
    )


def check_comonad(w: Comonad) -> Report:
    c, S = w.base, w.endo
    if w.counit.source != S or not is_identity_functor(w.counit.target):
        raise BoundaryError(f"comonad {w.name}: counit is not {S.name} ⇒ 1")
    if w.comult.source != S or w.comult.target != compose_functors(S, S):
        raise BoundaryError(f"comonad {w.name}: comultiplication is not {S.name} ⇒ {S.name}∘{S.name}")
    col = LawCollector()
    col.extend(check_functor(S))
    col.extend(check_naturality(w.counit, law="counit-naturality"))
    col.extend(check_naturality(w.comult, law="comult-naturality"))
    for a in c.objects:
        eps, delta = w.counit.at(a), w.comult.at(a)
        sa = S.ob(a)
        s_eps = S.mor_map.get(eps) if c.has_morphism(eps) else None
        s_delta = S.mor_map.get(delta) if c.has_morphism(delta) else None
        col.equal("left-counit", a, c.try_compose(w.counit.at(sa), delta), c.identity(sa))
        col.equal("right-counit", a, c.try_compose(s_eps, delta), c.identity(sa))
        col.equal("coassociativity", a, c.try_compose(w.comult.at(sa), delta), c.try_compose(s_delta, delta))
    return col.report()


@dataclass(frozen=True, eq=False)
class ComonadMorphism:
    """(F, τ) with τ: F∘W ⇒ W'∘F."""

    name: str
    source: Comonad
    target: Comonad
    carrier: Functor
    interchange: NatTrans


def check_comonad_morphism(f: ComonadMorphism) -> Report:
    W, V = f.source, f.target
    F, tau = f.carrier, f.interchange
    d = V.base
    if not same_category(F.source, W.base) or not same_category(F.target, d):
        raise BoundaryError(f"comonad morphism {f.name}: carrier {F.name} does not match the comonads' bases")
    if tau.source != compose_functors(F, W.endo) or tau.target != compose_functors(V.endo, F):
        raise BoundaryError(f"comonad morphism {f.name}: interchange is not F∘W ⇒ W'∘F")

    col = LawCollector()
    col.extend(check_naturality(tau, law="interchange-naturality"))
    for a in W.base.objects:
        t_a = tau.at(a)
        # ε'_F ∘ τ = F(ε)
        f_eps = F.mor_map.get(W.counit.at(a))
        col.equal("comonad-counit", a, d.try_compose(V.counit.at(F.ob(a)), t_a), f_eps)
        # W'(τ) ∘ τ_W ∘ F(δ) = δ'_F ∘ τ
        f_delta = F.mor_map.get(W.comult.at(a))
        w_tau = V.endo.mor_map.get(t_a) if d.has_morphism(t_a) else None
        lhs = d.try_path(w_tau, tau.at(W.endo.ob(a)), f_delta)
        rhs = d.try_compose(V.comult.at(F.ob(a)), t_a)
        col.equal("comonad-comult", a, lhs, rhs)
    return col.report()


def opposite_lax_morphism(f: LaxMonadMorphism) -> ComonadMorphism:
    """A lax morphism S → S' read on the opposite categories, as a comonad morphism S^op → S'^op."""
    return ComonadMorphism(
        name=f"{f.name}^op",
        source=opposite_monad(f.source),
        target=opposite_monad(f.target),
        carrier=opposite_functor(f.carrier),
        interchange=opposite_nattrans(f.interchange),
    )
