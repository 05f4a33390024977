from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from catkit.core.errors import InternalConstructionError, PreconditionError
from catkit.core.fincat import FinCat, Functor, pair_id, product_category
from catkit.core.models import LawCollector, Report
from catkit.core.monoidal import (
    Braiding,
    LaxMonoidalFunctor,
    MonoidalStructure,
    OplaxMonoidalFunctor,
    check_braided_functor,
    check_braiding,
    check_lax_monoidal_functor,
    check_monoidal,
    check_oplax_monoidal_functor,
    product_monoidal,
)
from catkit.core.monmonad import (
    MonoidalMonadTuple,
    check_forgetting,
    check_interchange_equivalence,
    monad_functor,
    product_tuple,
)
from catkit.core.resolutions import (
    EMResolution,
    KleisliResolution,
    algebra_id,
    em,
    homomorphism_id,
    kleisli,
    kleisli_id,
    kleisli_product_comparison,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class LiftedKleisli:
    input: MonoidalMonadTuple
    resolution: KleisliResolution
    lifted: MonoidalStructure
    free_as_monoidal: LaxMonoidalFunctor
    forget_as_monoidal: LaxMonoidalFunctor


@dataclass(frozen=True, eq=False)
class LiftedEM:
    input: MonoidalMonadTuple
    resolution: EMResolution
    lifted: MonoidalStructure
    forget_as_monoidal: LaxMonoidalFunctor
    free_as_monoidal: OplaxMonoidalFunctor


@dataclass(frozen=True, eq=False)
class LiftedBraided:
    lift: object
    braiding: Braiding


def _require_tuple(t: MonoidalMonadTuple, kind: str) -> None:
    if t.kind != kind:
        raise PreconditionError(f"{t.name} is a {t.kind} tuple; this lift needs a {kind} one")
    res = check_interchange_equivalence(t)
    if not res.agree:
        raise PreconditionError(f"validators disagree on {t.name}", list(res.in_monads) + list(res.on_monoidal))
    if res.in_monads or res.on_monoidal:
        raise PreconditionError(f"{t.name} is not a {kind} monoidal monad", list(res.in_monads) or list(res.on_monoidal))
    forgotten = check_forgetting(t)
    if forgotten:
        raise PreconditionError(f"{t.name}: underlying monad or monoidal structure is invalid", forgotten)


def _post_check(what: str, col: LawCollector) -> None:
    report = col.report()
    if report:
        logger.error("%s failed its post-checks: %s violations", what, len(report))
        raise InternalConstructionError(f"{what} failed its post-checks", report)


def _standardness(col: LawCollector, lifted: FinCat, plain: FinCat) -> None:
    col.equal("standard", lifted.name, "identical" if lifted is plain else None, "identical")
    col.equal("standard-data", lifted.name, "equal" if lifted == plain else None, "equal")


# ---------------------------------------------------------------------------
# Kleisli
# ---------------------------------------------------------------------------


def kleisli_tensor(t: MonoidalMonadTuple, res: KleisliResolution) -> Functor:
    """(f: A → SB) ⊗ (g: A' → SB') = φ_{B,B'} ∘ (f⊗g): A⊗A' → S(B⊗B')."""
    ms, c = t.monoidal, t.base
    kc = res.kleisli_cat
    prod = product_category(kc, kc)
    reps = res.representatives
    mor_map: Dict[str, str] = {}
    for mid, (k1, k2) in prod.factors.mor_pairs.items():
        b1, b2 = kc.cod(k1), kc.cod(k2)
        rep = c.compose(t.phi_at(b1, b2), ms.mor(reps[k1], reps[k2]))
        mor_map[mid] = kleisli_id(rep, ms.ob(b1, b2))
    ob_map = {x: ms.ob(a, b) for x, (a, b) in prod.factors.ob_pairs.items()}
    return Functor(name=f"{ms.tensor.name}_Kl", source=prod, target=kc, ob_map=ob_map, mor_map=mor_map)


def lift_kleisli(t: MonoidalMonadTuple) -> LiftedKleisli:
    """
    Monoidal structure on the Kleisli category of a lax monoidal monad.

    Same tensor on objects, φ-corrected tensor on Kleisli morphisms, coherence cells
    carried over by the free functor. The result is verified before it is returned.
    """
    _require_tuple(t, "lax")
    ms, m = t.monoidal, t.monad
    res = kleisli(m)
    kc, free = res.kleisli_cat, res.free

    lifted = MonoidalStructure(
        name=f"{ms.name}_Kl({m.name})",
        base=kc,
        tensor=kleisli_tensor(t, res),
        unit_object=ms.unit_object,
        assoc={k: free.mor(v) for k, v in ms.assoc.items()},
        left_unitor={k: free.mor(v) for k, v in ms.left_unitor.items()},
        right_unitor={k: free.mor(v) for k, v in ms.right_unitor.items()},
    )
    objs = ms.base.objects
    free_m = LaxMonoidalFunctor(
        name=free.name,
        source=ms,
        target=lifted,
        carrier=free,
        tensorator={(a, b): kc.identity(ms.ob(a, b)) for a in objs for b in objs},
        unit_cell=kc.identity(ms.unit_object),
    )
    forget_m = LaxMonoidalFunctor(
        name=res.forget.name,
        source=lifted,
        target=ms,
        carrier=res.forget,
        tensorator=dict(t.phi),
        unit_cell=t.phi_unit,
    )

    col = LawCollector()
    col.extend(check_monoidal(lifted), prefix="lifted")
    _standardness(col, lifted.base, res.kleisli_cat)
    col.extend(check_lax_monoidal_functor(free_m), prefix="free")
    col.extend(check_lax_monoidal_functor(forget_m), prefix="forget")
    for (a, b), cell in free_m.tensorator.items():
        col.equal("free-strict", f"({a},{b})", res.representatives.get(cell), m.unit.at(ms.ob(a, b)))
    _post_check(f"Kleisli lift of {t.name}", col)
    logger.info("lifted %s to %s", ms.name, kc.name)
    return LiftedKleisli(input=t, resolution=res, lifted=lifted, free_as_monoidal=free_m, forget_as_monoidal=forget_m)


def kleisli_tensor_oracle(t: MonoidalMonadTuple) -> Dict[Tuple[str, str], str]:
    """
    Brute-force table of the lifted tensor: every pair of base morphisms f: A → SB, g: A' → SB'
    and every choice of B, B' gives the representative φ_{B,B'}∘(f⊗g).
    """
    ms, c, S = t.monoidal, t.base, t.monad.endo
    out: Dict[Tuple[str, str], str] = {}
    for f in c.morphisms:
        for b1 in c.objects:
            if f.cod != S.ob(b1):
                continue
            for g in c.morphisms:
                for b2 in c.objects:
                    if g.cod != S.ob(b2):
                        continue
                    fg = ms.tensor.mor_map[pair_id(f.id, g.id)]
                    rep = c.table[(t.phi[(b1, b2)], fg)]
                    out[(kleisli_id(f.id, b1), kleisli_id(g.id, b2))] = kleisli_id(rep, ms.ob(b1, b2))
    return out


# ---------------------------------------------------------------------------
# Eilenberg-Moore
# ---------------------------------------------------------------------------


def _em_tensor_object(t: MonoidalMonadTuple, res: EMResolution, x: str, y: str) -> Tuple[str, str]:
    """(A,a)⊗(B,b) = (A⊗B, (a⊗b)∘φ_{A,B}) as (carrier, action)."""
    ms, c = t.monoidal, t.base
    (a, act_a), (b, act_b) = res.algebras[x], res.algebras[y]
    action = c.compose(ms.mor(act_a, act_b), t.phi_at(a, b))
    return ms.ob(a, b), action


def lift_em(t: MonoidalMonadTuple) -> LiftedEM:
    """
    Monoidal structure on the category of algebras of an oplax monoidal monad.

    Algebras tensor through the oplax cell φ, the unit algebra is (I, φ̄), and coherence
    cells are the base cells read as homomorphisms. The result is verified before return.
    """
    _require_tuple(t, "oplax")
    ms, m = t.monoidal, t.monad
    c = t.base
    res = em(m)
    ec = res.em_cat
    col = LawCollector()

    def algebra(carrier: str, action: str, where: str) -> str:
        aid = algebra_id(carrier, action)
        if aid not in res.algebras:
            col.fail("lifted-algebra", where, aid, "<not an algebra>")
        return aid

    def hom_cell(h: str, src: str, tgt: str, law: str, where: str) -> str:
        hid = homomorphism_id(h, src, tgt)
        if not ec.has_morphism(hid):
            col.fail(law, where, hid, "<not a homomorphism>")
        return hid

    prod = product_category(ec, ec)
    ob_map: Dict[str, str] = {}
    for p, (x, y) in prod.factors.ob_pairs.items():
        carrier, action = _em_tensor_object(t, res, x, y)
        ob_map[p] = algebra(carrier, action, f"({x},{y})")
    unit_algebra = algebra(ms.unit_object, t.phi_unit, "unit")
    _post_check(f"EM lift of {t.name}", col)

    mor_map: Dict[str, str] = {}
    for mid, (h, k) in prod.factors.mor_pairs.items():
        hk = ms.mor(res.homomorphisms[h], res.homomorphisms[k])
        src = ob_map[pair_id(ec.dom(h), ec.dom(k))]
        tgt = ob_map[pair_id(ec.cod(h), ec.cod(k))]
        mor_map[mid] = hom_cell(hk, src, tgt, "lifted-tensor", mid)
    tensor = Functor(name=f"{ms.tensor.name}_EM", source=prod, target=ec, ob_map=ob_map, mor_map=mor_map)

    def ten(x: str, y: str) -> str:
        return ob_map[pair_id(x, y)]

    algs = list(ec.objects)
    assoc = {}
    for x in algs:
        for y in algs:
            for z in algs:
                a, b, e = (res.algebras[w][0] for w in (x, y, z))
                assoc[(x, y, z)] = hom_cell(
                    ms.alpha(a, b, e), ten(x, ten(y, z)), ten(ten(x, y), z), "lifted-assoc", f"({x},{y},{z})"
                )
    lam = {x: hom_cell(ms.lam(res.algebras[x][0]), ten(unit_algebra, x), x, "lifted-left-unitor", x) for x in algs}
    rho = {x: hom_cell(ms.rho(res.algebras[x][0]), ten(x, unit_algebra), x, "lifted-right-unitor", x) for x in algs}
    _post_check(f"EM lift of {t.name}", col)

    lifted = MonoidalStructure(
        name=f"{ms.name}_EM({m.name})",
        base=ec,
        tensor=tensor,
        unit_object=unit_algebra,
        assoc=assoc,
        left_unitor=lam,
        right_unitor=rho,
    )
    forget_m = LaxMonoidalFunctor(
        name=res.forget.name,
        source=lifted,
        target=ms,
        carrier=res.forget,
        tensorator={(x, y): c.identity(ms.ob(res.algebras[x][0], res.algebras[y][0])) for x in algs for y in algs},
        unit_cell=c.identity(ms.unit_object),
    )
    objs = c.objects
    free = res.free
    free_m = OplaxMonoidalFunctor(
        name=free.name,
        source=ms,
        target=lifted,
        carrier=free,
        tensorator={
            (a, b): hom_cell(t.phi_at(a, b), free.ob(ms.ob(a, b)), ten(free.ob(a), free.ob(b)), "free-tensorator", f"({a},{b})")
            for a in objs
            for b in objs
        },
        unit_cell=hom_cell(t.phi_unit, free.ob(ms.unit_object), unit_algebra, "free-unit", ms.unit_object),
    )
    _post_check(f"EM lift of {t.name}", col)

    col.extend(check_monoidal(lifted), prefix="lifted")
    _standardness(col, lifted.base, res.em_cat)
    col.extend(check_lax_monoidal_functor(forget_m), prefix="forget")
    col.extend(check_oplax_monoidal_functor(free_m), prefix="free")
    for x in algs:
        for y in algs:
            carrier, action = res.algebras[ten(x, y)]
            col.equal("algebra-unit", f"({x},{y})", c.try_compose(action, m.unit.at(carrier)), c.identity(carrier))
            col.equal(
                "algebra-mult",
                f"({x},{y})",
                c.try_compose(action, m.mult.at(carrier)),
                c.try_compose(action, m.endo.mor(action)),
            )
    _post_check(f"EM lift of {t.name}", col)
    logger.info("lifted %s to %s", ms.name, ec.name)
    return LiftedEM(input=t, resolution=res, lifted=lifted, forget_as_monoidal=forget_m, free_as_monoidal=free_m)


def uncorrected_tensor_defects(t: MonoidalMonadTuple) -> Report:
    """
    Tries (A,a)⊗(B,b) = (A⊗B, a⊗b) without the φ-correction and reports every pair of
    algebras where that candidate is ill-typed or breaks an algebra law.
    """
    ms, m, c = t.monoidal, t.monad, t.base
    S = m.endo
    res = em(m)
    col = LawCollector()
    for x, (a, act_a) in sorted(res.algebras.items()):
        for y, (b, act_b) in sorted(res.algebras.items()):
            where = f"({x},{y})"
            carrier = ms.ob(a, b)
            candidate = ms.mor(act_a, act_b)
            if not c.is_typed(candidate, S.ob(carrier), carrier):
                col.fail("uncorrected-typing", where, f"{candidate}: {c.dom(candidate)}->{c.cod(candidate)}", f"{S.ob(carrier)}->{carrier}")
                continue
            col.equal("algebra-unit", where, c.try_compose(candidate, m.unit.at(carrier)), c.identity(carrier))
            col.equal(
                "algebra-mult",
                where,
                c.try_compose(candidate, m.mult.at(carrier)),
                c.try_compose(candidate, S.mor(candidate)),
            )
    return col.report()


# ---------------------------------------------------------------------------
# Braided and symmetric lifts
# ---------------------------------------------------------------------------


def _require_braiding(t: MonoidalMonadTuple, b: Braiding) -> None:
    if not b.monoidal == t.monoidal:
        raise PreconditionError(f"braiding {b.name} does not sit on {t.monoidal.name}")
    report = check_braiding(b)
    if report:
        raise PreconditionError(f"{b.name} is not a braiding", report)
    report = check_braided_functor(monad_functor(t), b, b)
    if report:
        raise PreconditionError(f"{t.name} is not braided with respect to {b.name}", report)


def lift_kleisli_braided(t: MonoidalMonadTuple, b: Braiding) -> LiftedBraided:
    _require_braiding(t, b)
    lk = lift_kleisli(t)
    free = lk.resolution.free
    lifted_b = Braiding(
        name=f"{b.name}_Kl",
        monoidal=lk.lifted,
        components={k: free.mor(v) for k, v in b.components.items()},
        symmetric=b.symmetric,
    )
    col = LawCollector()
    col.extend(check_braiding(lifted_b), prefix="lifted")
    col.extend(check_braided_functor(lk.free_as_monoidal, b, lifted_b), prefix="free")
    _post_check(f"braided Kleisli lift of {t.name}", col)
    return LiftedBraided(lift=lk, braiding=lifted_b)


def lift_em_braided(t: MonoidalMonadTuple, b: Braiding) -> LiftedBraided:
    _require_braiding(t, b)
    le = lift_em(t)
    res, lifted = le.resolution, le.lifted
    col = LawCollector()
    components = {}
    for x in lifted.base.objects:
        for y in lifted.base.objects:
            beta = b.beta(res.algebras[x][0], res.algebras[y][0])
            hid = homomorphism_id(beta, lifted.ob(x, y), lifted.ob(y, x))
            if not lifted.base.has_morphism(hid):
                col.fail("lifted-braiding", f"({x},{y})", hid, "<not a homomorphism>")
            components[(x, y)] = hid
    _post_check(f"braided EM lift of {t.name}", col)
    lifted_b = Braiding(name=f"{b.name}_EM", monoidal=lifted, components=components, symmetric=b.symmetric)
    col.extend(check_braiding(lifted_b), prefix="lifted")
    col.extend(check_braided_functor(le.forget_as_monoidal, lifted_b, b), prefix="forget")
    _post_check(f"braided EM lift of {t.name}", col)
    return LiftedBraided(lift=le, braiding=lifted_b)


# ---------------------------------------------------------------------------
# Products
# ---------------------------------------------------------------------------


def check_lift_product_compatibility(t1: MonoidalMonadTuple, t2: MonoidalMonadTuple) -> Report:
    """
    Lifting the product tuple and transporting along the comparison H agrees with the
    product of the two separate lifts: on objects, on every pair of Kleisli morphisms,
    on the unit and on every coherence cell.
    """
    joint = lift_kleisli(product_tuple(t1, t2))
    l1, l2 = lift_kleisli(t1), lift_kleisli(t2)
    both = product_monoidal(l1.lifted, l2.lifted)
    h = kleisli_product_comparison(t1.monad, t2.monad).forward
    jl = joint.lifted
    kc = jl.base

    col = LawCollector()
    col.equal("unit", "I", h.ob_map.get(jl.unit_object), both.unit_object)
    for x in kc.objects:
        for y in kc.objects:
            col.equal("tensor-objects", f"({x},{y})", h.ob_map.get(jl.ob(x, y)), both.ob(h.ob(x), h.ob(y)))
    for f in kc.morphisms:
        for g in kc.morphisms:
            lhs = h.mor_map.get(jl.mor(f.id, g.id))
            rhs = both.tensor.mor_map.get(pair_id(h.mor(f.id), h.mor(g.id)))
            col.equal("tensor-morphisms", f"({f.id},{g.id})", lhs, rhs)
    for (x, y, z), cell in jl.assoc.items():
        col.equal("assoc", f"({x},{y},{z})", h.mor_map.get(cell), both.assoc.get((h.ob(x), h.ob(y), h.ob(z))))
    for x, cell in jl.left_unitor.items():
        col.equal("left-unitor", x, h.mor_map.get(cell), both.left_unitor.get(h.ob(x)))
    for x, cell in jl.right_unitor.items():
        col.equal("right-unitor", x, h.mor_map.get(cell), both.right_unitor.get(h.ob(x)))
    return col.report()


def lifted_summary(lifted: MonoidalStructure) -> List[Tuple[str, str]]:
    base = lifted.base
    return [
        ("category", base.name),
        ("objects", str(len(base.objects))),
        ("morphisms", str(len(base.morphisms))),
        ("unit", lifted.unit_object),
    ]
