from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from catkit.core.errors import BoundaryError, InternalConstructionError, PreconditionError
from catkit.core.fincat import (
    FinCat,
    Functor,
    Morphism,
    NatTrans,
    check_category,
    check_functor,
    check_naturality,
    compose_functors,
    functor_product,
    identity_functor,
    is_identity_functor,
    pair_id,
    product_category,
    same_category,
    split_morphism,
)
from catkit.core.models import LawCollector, Report
from catkit.core.monad import (
    Monad,
    MonadTransformation,
    OplaxMonadMorphism,
    check_monad,
    check_monad_transformation,
    identity_monad,
    product_monad,
)

logger = logging.getLogger(__name__)


def kleisli_id(rep: str, cod: str) -> str:
    return f"k:{rep}@{cod}"


def algebra_id(carrier: str, action: str) -> str:
    return f"[{carrier}:{action}]"


def homomorphism_id(h: str, src: str, tgt: str) -> str:
    return f"{h}:{src}->{tgt}"


@dataclass(frozen=True, eq=False)
class KleisliResolution:
    monad: Monad
    kleisli_cat: FinCat
    free: Functor
    forget: Functor
    kappa: NatTrans
    unit: NatTrans
    counit: NatTrans
    representatives: Dict[str, str]


@dataclass(frozen=True, eq=False)
class EMResolution:
    monad: Monad
    em_cat: FinCat
    free: Functor
    forget: Functor
    unit: NatTrans
    counit: NatTrans
    algebras: Dict[str, Tuple[str, str]]
    homomorphisms: Dict[str, str]


@dataclass(frozen=True, eq=False)
class ProductComparison:
    forward: Functor
    inverse: Functor
    kleisli_product: KleisliResolution
    left: KleisliResolution
    right: KleisliResolution


def _require_monad(m: Monad) -> None:
    report = check_monad(m)
    if report:
        raise PreconditionError(f"{m.name} is not a valid monad", report)


# ---------------------------------------------------------------------------
# Kleisli
# ---------------------------------------------------------------------------


def kleisli(m: Monad) -> KleisliResolution:
    _require_monad(m)
    c, S = m.base, m.endo
    eta, mu = m.unit, m.mult

    reps: Dict[str, str] = {}
    morphisms: List[Morphism] = []
    for a in c.objects:
        for b in c.objects:
            for h in c.hom(a, S.ob(b)):
                k = kleisli_id(h, b)
                reps[k] = h
                morphisms.append(Morphism(k, a, b))
    identities = {a: kleisli_id(eta.at(a), a) for a in c.objects}
    outgoing: Dict[str, List[Morphism]] = {}
    for k in morphisms:
        outgoing.setdefault(k.dom, []).append(k)
    table: Dict[Tuple[str, str], str] = {}
    for f in morphisms:
        for g in outgoing.get(f.cod, []):
            # g ∘_K f = μ ∘ S(g) ∘ f
            rep = c.compose_path(mu.at(g.cod), S.mor(reps[g.id]), reps[f.id])
            table[(g.id, f.id)] = kleisli_id(rep, g.cod)

    kc = FinCat(
        name=f"Kl({m.name})",
        objects=c.objects,
        morphisms=tuple(morphisms),
        identities=identities,
        table=table,
    )
    free = Functor(
        name=f"F_{m.name}",
        source=c,
        target=kc,
        ob_map={a: a for a in c.objects},
        mor_map={f.id: kleisli_id(c.compose(eta.at(f.cod), f.id), f.cod) for f in c.morphisms},
    )
    forget = Functor(
        name=f"U_{m.name}",
        source=kc,
        target=c,
        ob_map={a: S.ob(a) for a in c.objects},
        mor_map={k.id: c.compose(mu.at(k.cod), S.mor(reps[k.id])) for k in morphisms},
    )
    kappa_components = {x: kleisli_id(c.identity(S.ob(x)), x) for x in c.objects}
    kappa = NatTrans(
        name=f"kappa_{m.name}",
        source=compose_functors(free, S),
        target=free,
        components=kappa_components,
    )
    fu = compose_functors(free, forget)
    counit = NatTrans(
        name=f"eps_{m.name}",
        source=fu,
        target=identity_functor(kc),
        components=dict(kappa_components),
    )
    unit = NatTrans(
        name=eta.name,
        source=eta.source,
        target=compose_functors(forget, free),
        components=dict(eta.components),
    )
    logger.debug("kleisli %s: %s morphisms", kc.name, len(morphisms))
    return KleisliResolution(
        monad=m,
        kleisli_cat=kc,
        free=free,
        forget=forget,
        kappa=kappa,
        unit=unit,
        counit=counit,
        representatives=reps,
    )


def verify_adjunction(free: Functor, forget: Functor, unit: NatTrans, counit: NatTrans) -> Report:
    """Both triangle identities of free ⊣ forget, per object."""
    c, d = free.source, free.target
    if not same_category(forget.source, d) or not same_category(forget.target, c):
        raise BoundaryError(f"{free.name} and {forget.name} do not form a pair of opposite functors")
    if not same_category(unit.domain, c) or not same_category(counit.domain, d):
        raise BoundaryError("unit/counit live on the wrong categories")

    col = LawCollector()
    for a in c.objects:
        fa = free.ob(a)
        eps_fa = counit.at(fa)
        f_eta = free.mor_map.get(unit.at(a)) if c.has_morphism(unit.at(a)) else None
        col.equal("triangle-free", a, d.try_compose(eps_fa, f_eta), d.identity(fa))
    for x in d.objects:
        ux = forget.ob(x)
        u_eps = forget.mor_map.get(counit.at(x)) if d.has_morphism(counit.at(x)) else None
        col.equal("triangle-forget", x, c.try_compose(u_eps, unit.at(ux)), c.identity(ux))
    return col.report()


def kappa_transformation(res: KleisliResolution) -> MonadTransformation:
    """κ as a transformation (F_S∘S, F_S(μ)) → (F_S, κ) of oplax morphisms S → identity monad on C_S."""
    m, kc = res.monad, res.kleisli_cat
    target = identity_monad(kc)

    def oplax(name: str, carrier: Functor, comps: Dict[str, str]) -> OplaxMonadMorphism:
        tau = NatTrans(
            name=f"tau_{name}",
            source=compose_functors(carrier, m.endo),
            target=compose_functors(target.endo, carrier),
            components=comps,
        )
        return OplaxMonadMorphism(name=name, source=m, target=target, carrier=carrier, interchange=tau)

    fs = compose_functors(res.free, m.endo)
    through_mult = oplax(f"({fs.name},F(mu))", fs, {x: res.free.mor(m.mult.at(x)) for x in m.base.objects})
    through_kappa = oplax(f"({res.free.name},kappa)", res.free, dict(res.kappa.components))
    return MonadTransformation(name=res.kappa.name, source=through_mult, target=through_kappa, cell=res.kappa)


def check_kleisli(res: KleisliResolution) -> Report:
    m, kc = res.monad, res.kleisli_cat
    c, S = m.base, m.endo
    col = LawCollector()
    col.extend(check_category(kc), prefix="kleisli-category")
    col.extend(check_functor(res.free), prefix="free")
    col.extend(check_functor(res.forget), prefix="forget")
    col.extend(check_naturality(res.kappa, law="kappa-naturality"))
    col.extend(check_naturality(res.counit, law="counit-naturality"))
    col.extend(check_naturality(res.unit, law="unit-naturality"))

    col.equal("kleisli-objects", kc.name, ",".join(sorted(kc.objects)), ",".join(sorted(c.objects)))
    for a in c.objects:
        for b in c.objects:
            col.equal(
                "kleisli-hom-count",
                f"({a},{b})",
                str(len(kc.hom(a, b))),
                str(len(c.hom(a, S.ob(b)))),
            )

    uf = compose_functors(res.forget, res.free)
    for a in c.objects:
        col.equal("forget-free-objects", a, uf.ob(a), S.ob(a))
    for f in c.morphisms:
        col.equal("forget-free", f.id, uf.mor(f.id), S.mor(f.id))

    for x in c.objects:
        kap = res.kappa.at(x)
        f_eta = res.free.mor(m.unit.at(x))
        col.equal("subcoequalizer-unit", x, kc.try_compose(kap, f_eta), kc.identity(res.free.ob(x)))
        f_mu = res.free.mor(m.mult.at(x))
        col.equal(
            "subcoequalizer-mult",
            x,
            kc.try_compose(kap, f_mu),
            kc.try_compose(kap, res.kappa.at(S.ob(x))),
        )
        col.equal("forget-kappa", x, res.forget.mor_map.get(kap), m.mult.at(x))
        col.equal("counit-kappa", x, res.counit.at(res.free.ob(x)), kap)
        col.equal("kappa-identity", x, res.representatives.get(kap), c.identity(S.ob(x)))
        col.equal("unit-is-eta", x, res.unit.at(x), m.unit.at(x))

    col.extend(verify_adjunction(res.free, res.forget, res.unit, res.counit))
    col.extend(check_monad_transformation(kappa_transformation(res)), prefix="kappa-transformation")
    return col.report()


def kleisli_hom_counts(m: Monad) -> Dict[Tuple[str, str], int]:
    """Independent count of Hom_C(A, S B) straight from the morphism list."""
    c, S = m.base, m.endo
    counts = {(a, b): 0 for a in c.objects for b in c.objects}
    for f in c.morphisms:
        for b in c.objects:
            if f.cod == S.ob(b):
                counts[(f.dom, b)] += 1
    return counts


# ---------------------------------------------------------------------------
# Eilenberg-Moore
# ---------------------------------------------------------------------------


def _is_algebra(m: Monad, a: str, action: str) -> bool:
    c, S = m.base, m.endo
    if not c.is_typed(action, S.ob(a), a):
        return False
    if c.try_compose(action, m.unit.at(a)) != c.identity(a):
        return False
    return c.try_compose(action, m.mult.at(a)) == c.try_compose(action, S.mor(action))


def em(m: Monad) -> EMResolution:
    _require_monad(m)
    c, S = m.base, m.endo

    algebras: Dict[str, Tuple[str, str]] = {}
    for a in c.objects:
        for action in c.hom(S.ob(a), a):
            if _is_algebra(m, a, action):
                algebras[algebra_id(a, action)] = (a, action)

    morphisms: List[Morphism] = []
    homs: Dict[str, str] = {}
    for x, (a, act_a) in algebras.items():
        for y, (b, act_b) in algebras.items():
            for h in c.hom(a, b):
                # h ∘ a = b ∘ S(h)
                if c.compose(h, act_a) == c.compose(act_b, S.mor(h)):
                    mid = homomorphism_id(h, x, y)
                    morphisms.append(Morphism(mid, x, y))
                    homs[mid] = h
    identities = {x: homomorphism_id(c.identity(a), x, x) for x, (a, _) in algebras.items()}
    outgoing: Dict[str, List[Morphism]] = {}
    for h in morphisms:
        outgoing.setdefault(h.dom, []).append(h)
    table: Dict[Tuple[str, str], str] = {}
    for f in morphisms:
        for g in outgoing.get(f.cod, []):
            table[(g.id, f.id)] = homomorphism_id(c.compose(homs[g.id], homs[f.id]), f.dom, g.cod)

    ec = FinCat(
        name=f"EM({m.name})",
        objects=tuple(algebras),
        morphisms=tuple(morphisms),
        identities=identities,
        table=table,
    )

    def free_object(a: str) -> str:
        return algebra_id(S.ob(a), m.mult.at(a))

    free = Functor(
        name=f"F^{m.name}",
        source=c,
        target=ec,
        ob_map={a: free_object(a) for a in c.objects},
        mor_map={f.id: homomorphism_id(S.mor(f.id), free_object(f.dom), free_object(f.cod)) for f in c.morphisms},
    )
    forget = Functor(
        name=f"U^{m.name}",
        source=ec,
        target=c,
        ob_map={x: a for x, (a, _) in algebras.items()},
        mor_map=dict(homs),
    )
    unit = NatTrans(
        name=m.unit.name,
        source=identity_functor(c),
        target=compose_functors(forget, free),
        components=dict(m.unit.components),
    )
    counit = NatTrans(
        name=f"eps^{m.name}",
        source=compose_functors(free, forget),
        target=identity_functor(ec),
        components={x: homomorphism_id(act, free_object(a), x) for x, (a, act) in algebras.items()},
    )
    logger.debug("em %s: %s algebras, %s morphisms", ec.name, len(algebras), len(morphisms))
    return EMResolution(
        monad=m,
        em_cat=ec,
        free=free,
        forget=forget,
        unit=unit,
        counit=counit,
        algebras=algebras,
        homomorphisms=homs,
    )


def brute_force_algebras(m: Monad) -> List[Tuple[str, str]]:
    """Every (A, a) with a: S(A) -> A satisfying both algebra laws, scanning the raw morphism list."""
    c, S = m.base, m.endo
    out = []
    for f in c.morphisms:
        for a in c.objects:
            if f.dom != S.ob(a) or f.cod != a:
                continue
            if c.table.get((f.id, m.unit.at(a))) != c.identities[a]:
                continue
            if c.table.get((f.id, m.mult.at(a))) == c.table.get((f.id, S.mor_map[f.id])):
                out.append((a, f.id))
    return out


def check_em(res: EMResolution) -> Report:
    m, ec = res.monad, res.em_cat
    c, S = m.base, m.endo
    col = LawCollector()
    col.extend(check_category(ec), prefix="em-category")
    col.extend(check_functor(res.free), prefix="free")
    col.extend(check_functor(res.forget), prefix="forget")
    col.extend(check_naturality(res.unit, law="unit-naturality"))
    col.extend(check_naturality(res.counit, law="counit-naturality"))

    for x, (a, act) in res.algebras.items():
        col.equal("algebra-unit", x, c.try_compose(act, m.unit.at(a)), c.identity(a))
        col.equal("algebra-mult", x, c.try_compose(act, m.mult.at(a)), c.try_compose(act, S.mor(act)))
    for mid, h in res.homomorphisms.items():
        x, y = ec.dom(mid), ec.cod(mid)
        act_x, act_y = res.algebras[x][1], res.algebras[y][1]
        col.equal("homomorphism", mid, c.try_compose(h, act_x), c.try_compose(act_y, S.mor(h)))

    brute = sorted(brute_force_algebras(m))
    col.equal(
        "algebra-completeness",
        m.name,
        ";".join(f"{a}:{act}" for a, act in sorted(res.algebras.values())),
        ";".join(f"{a}:{act}" for a, act in brute),
    )

    uf = compose_functors(res.forget, res.free)
    for a in c.objects:
        col.equal("forget-free-objects", a, uf.ob(a), S.ob(a))
    for f in c.morphisms:
        col.equal("forget-free", f.id, uf.mor(f.id), S.mor(f.id))
    col.extend(verify_adjunction(res.free, res.forget, res.unit, res.counit))
    return col.report()


# ---------------------------------------------------------------------------
# Products
# ---------------------------------------------------------------------------


def kleisli_product_comparison(m: Monad, n: Monad) -> ProductComparison:
    """
    The comparison H: (C×C')_{S×S'} → C_S × C'_{S'} with H∘F = F×F and H(κ) = (κ, κ).

    H and its inverse are built from the hom-representative bijection and then verified;
    any failure is an InternalConstructionError.
    """
    joint = kleisli(product_monad(m, n))
    left, right = kleisli(m), kleisli(n)
    kp = joint.kleisli_cat
    target = product_category(left.kleisli_cat, right.kleisli_cat)
    base = joint.monad.base

    ob_map = {x: x for x in kp.objects}
    mor_map: Dict[str, str] = {}
    for k in kp.morphisms:
        rep = joint.representatives[k.id]
        f, g = split_morphism(base, rep)
        b, b2 = base.factors.ob_pairs[k.cod]
        mor_map[k.id] = pair_id(kleisli_id(f, b), kleisli_id(g, b2))
    forward = Functor(name="H", source=kp, target=target, ob_map=ob_map, mor_map=mor_map)
    inverse = Functor(
        name="H^-1",
        source=target,
        target=kp,
        ob_map={x: x for x in target.objects},
        mor_map={v: k for k, v in mor_map.items()},
    )

    col = LawCollector()
    col.extend(check_functor(forward), prefix="H")
    if len(inverse.mor_map) != len(target.morphisms):
        col.fail("H-bijective", "morphisms", str(len(inverse.mor_map)), str(len(target.morphisms)))
    else:
        col.extend(check_functor(inverse), prefix="H^-1")
        if not is_identity_functor(compose_functors(inverse, forward)):
            col.fail("H-inverse", kp.name, "H^-1.H", "1")
        if not is_identity_functor(compose_functors(forward, inverse)):
            col.fail("H-inverse", target.name, "H.H^-1", "1")

    hf = compose_functors(forward, joint.free)
    ff = functor_product(left.free, right.free)
    for f, image in hf.mor_map.items():
        col.equal("H-free", f, image, ff.mor_map.get(f))
    for x in kp.objects:
        a, b = base.factors.ob_pairs[x]
        col.equal("H-kappa", x, forward.mor_map.get(joint.kappa.at(x)), pair_id(left.kappa.at(a), right.kappa.at(b)))

    report = col.report()
    if report:
        logger.error("kleisli product comparison failed for %s x %s", m.name, n.name)
        raise InternalConstructionError(f"comparison for {m.name} x {n.name} failed", report)
    return ProductComparison(forward=forward, inverse=inverse, kleisli_product=joint, left=left, right=right)
