from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Callable, ClassVar, Dict, List, Optional, Tuple, Union

from catkit.core.errors import BoundaryError, StructuralError
from catkit.core.fincat import (
    FinCat,
    Functor,
    NatTrans,
    check_functor,
    check_naturality,
    compose_functors,
    identity_functor,
    inverse_of,
    opposite_category,
    opposite_functor,
    pair_id,
    product_category,
    same_category,
    split_morphism,
    split_object,
)
from catkit.core.models import LawCollector, Report

logger = logging.getLogger(__name__)

Triple = Tuple[str, str, str]
Pair = Tuple[str, str]


@dataclass(frozen=True, eq=False)
class MonoidalStructure:
    """
    Tensor ⊗: C×C → C, unit object I and coherence cells stored per object:
    α_{A,B,C}: A⊗(B⊗C) → (A⊗B)⊗C, λ_A: I⊗A → A, ρ_A: A⊗I → A.
    """

    name: str
    base: FinCat
    tensor: Functor
    unit_object: str
    assoc: Dict[Triple, str]
    left_unitor: Dict[str, str]
    right_unitor: Dict[str, str]

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, MonoidalStructure):
            return NotImplemented
        return (
            self.unit_object == other.unit_object
            and self.assoc == other.assoc
            and self.left_unitor == other.left_unitor
            and self.right_unitor == other.right_unitor
            and self.tensor == other.tensor
        )

    __hash__ = None  # type: ignore[assignment]

    def ob(self, a: str, b: str) -> str:
        return self.tensor.ob(pair_id(a, b))

    def mor(self, f: str, g: str) -> str:
        return self.tensor.mor(pair_id(f, g))

    def try_mor(self, f: Optional[str], g: Optional[str]) -> Optional[str]:
        if f is None or g is None:
            return None
        return self.tensor.mor_map.get(pair_id(f, g))

    def alpha(self, a: str, b: str, c: str) -> str:
        try:
            return self.assoc[(a, b, c)]
        except KeyError:
            raise StructuralError(f"{self.name}: no associator at ({a},{b},{c})") from None

    def lam(self, a: str) -> str:
        try:
            return self.left_unitor[a]
        except KeyError:
            raise StructuralError(f"{self.name}: no left unitor at {a}") from None

    def rho(self, a: str) -> str:
        try:
            return self.right_unitor[a]
        except KeyError:
            raise StructuralError(f"{self.name}: no right unitor at {a}") from None


@dataclass(frozen=True, eq=False)
class MonoidalFunctor:
    name: str
    source: MonoidalStructure
    target: MonoidalStructure
    carrier: Functor
    tensorator: Dict[Pair, str]
    unit_cell: str

    kind: ClassVar[str] = ""

    def phi(self, a: str, b: str) -> str:
        try:
            return self.tensorator[(a, b)]
        except KeyError:
            raise StructuralError(f"{self.name}: no tensorator component at ({a},{b})") from None


@dataclass(frozen=True, eq=False)
class LaxMonoidalFunctor(MonoidalFunctor):
    """φ_{A,B}: FA ⊗' FB → F(A⊗B), φ̄: I' → F(I)."""

    kind: ClassVar[str] = "lax"


@dataclass(frozen=True, eq=False)
class OplaxMonoidalFunctor(MonoidalFunctor):
    """φ_{A,B}: F(A⊗B) → FA ⊗' FB, φ̄: F(I) → I'."""

    kind: ClassVar[str] = "oplax"


@dataclass(frozen=True, eq=False)
class MonoidalTransformation:
    name: str
    source: MonoidalFunctor
    target: MonoidalFunctor
    cell: NatTrans


@dataclass(frozen=True, eq=False)
class Braiding:
    name: str
    monoidal: MonoidalStructure
    components: Dict[Pair, str]
    symmetric: bool = False

    def beta(self, a: str, b: str) -> str:
        try:
            return self.components[(a, b)]
        except KeyError:
            raise StructuralError(f"{self.name}: no braiding component at ({a},{b})") from None


# ---------------------------------------------------------------------------
# Checkers
# ---------------------------------------------------------------------------


def _require_cells(ms: MonoidalStructure) -> None:
    c = ms.base
    if not c.has_object(ms.unit_object):
        raise StructuralError(f"{ms.name}: unit object {ms.unit_object} is not an object of {c.name}")
    objs = c.objects
    for a in objs:
        ms.lam(a)
        ms.rho(a)
        for b in objs:
            for x in objs:
                ms.alpha(a, b, x)


def check_monoidal(ms: MonoidalStructure) -> Report:
    c = ms.base
    if not same_category(ms.tensor.source, product_category(c, c)) or not same_category(ms.tensor.target, c):
        raise BoundaryError(f"{ms.name}: tensor {ms.tensor.name} is not a functor {c.name}x{c.name} -> {c.name}")
    _require_cells(ms)
    col = LawCollector()
    col.extend(check_functor(ms.tensor), prefix="tensor")

    objs = c.objects
    unit = ms.unit_object
    typed_assoc = {}
    for a in objs:
        for b in objs:
            for x in objs:
                comp = ms.alpha(a, b, x)
                src, tgt = ms.ob(a, ms.ob(b, x)), ms.ob(ms.ob(a, b), x)
                ok = c.is_typed(comp, src, tgt)
                typed_assoc[(a, b, x)] = ok
                where = f"({a},{b},{x})"
                if not ok:
                    col.fail("assoc-typing", where, comp, f"{src}->{tgt}")
                elif inverse_of(c, comp) is None:
                    col.fail("assoc-invertible", where, comp, "<no inverse>")
    typed_l, typed_r = {}, {}
    for a in objs:
        for label, comp, src, typed in (
            ("left-unitor", ms.lam(a), ms.ob(unit, a), typed_l),
            ("right-unitor", ms.rho(a), ms.ob(a, unit), typed_r),
        ):
            ok = c.is_typed(comp, src, a)
            typed[a] = ok
            if not ok:
                col.fail(f"{label}-typing", a, comp, f"{src}->{a}")
            elif inverse_of(c, comp) is None:
                col.fail(f"{label}-invertible", a, comp, "<no inverse>")

    mors = c.morphisms
    for f in mors:
        for g in mors:
            for h in mors:
                if not (typed_assoc[(f.dom, g.dom, h.dom)] and typed_assoc[(f.cod, g.cod, h.cod)]):
                    continue
                lhs = c.try_compose(ms.alpha(f.cod, g.cod, h.cod), ms.try_mor(f.id, ms.try_mor(g.id, h.id)))
                rhs = c.try_compose(ms.try_mor(ms.try_mor(f.id, g.id), h.id), ms.alpha(f.dom, g.dom, h.dom))
                col.equal("assoc-naturality", f"({f.id},{g.id},{h.id})", lhs, rhs)
    id_unit = c.identity(unit)
    for f in mors:
        if typed_l[f.dom] and typed_l[f.cod]:
            lhs = c.try_compose(ms.lam(f.cod), ms.try_mor(id_unit, f.id))
            col.equal("left-unitor-naturality", f.id, lhs, c.try_compose(f.id, ms.lam(f.dom)))
        if typed_r[f.dom] and typed_r[f.cod]:
            lhs = c.try_compose(ms.rho(f.cod), ms.try_mor(f.id, id_unit))
            col.equal("right-unitor-naturality", f.id, lhs, c.try_compose(f.id, ms.rho(f.dom)))

    for a in objs:
        for b in objs:
            for x in objs:
                for d in objs:
                    lhs = c.try_path(
                        ms.try_mor(ms.alpha(a, b, x), c.identity(d)),
                        ms.alpha(a, ms.ob(b, x), d),
                        ms.try_mor(c.identity(a), ms.alpha(b, x, d)),
                    )
                    rhs = c.try_compose(ms.alpha(ms.ob(a, b), x, d), ms.alpha(a, b, ms.ob(x, d)))
                    col.equal("pentagon", f"({a},{b},{x},{d})", lhs, rhs)
    for a in objs:
        for b in objs:
            lhs = c.try_compose(ms.try_mor(ms.rho(a), c.identity(b)), ms.alpha(a, unit, b))
            col.equal("triangle", f"({a},{b})", lhs, ms.try_mor(c.identity(a), ms.lam(b)))
    return col.report()


def _check_functor_boundary(f: MonoidalFunctor) -> None:
    F = f.carrier
    if not same_category(F.source, f.source.base) or not same_category(F.target, f.target.base):
        raise BoundaryError(f"{f.name}: carrier {F.name} does not run between the monoidal bases")


def _tensorator_typing(f: MonoidalFunctor, col: LawCollector) -> Dict[Pair, bool]:
    S, T, F = f.source, f.target, f.carrier
    d = T.base
    typed = {}
    for a in S.base.objects:
        for b in S.base.objects:
            comp = f.phi(a, b)
            split = T.ob(F.ob(a), F.ob(b))
            joined = F.ob(S.ob(a, b))
            src, tgt = (split, joined) if f.kind == "lax" else (joined, split)
            ok = d.is_typed(comp, src, tgt)
            typed[(a, b)] = ok
            if not ok:
                col.fail("tensorator-typing", f"({a},{b})", comp, f"{src}->{tgt}")
    return typed


def _check_unit_cell(f: MonoidalFunctor) -> None:
    S, T, F = f.source, f.target, f.carrier
    d = T.base
    fi, j = F.ob(S.unit_object), T.unit_object
    src, tgt = (j, fi) if f.kind == "lax" else (fi, j)
    if d.is_typed(f.unit_cell, src, tgt):
        return
    if d.is_typed(f.unit_cell, tgt, src):
        other = "oplax" if f.kind == "lax" else "lax"
        raise BoundaryError(f"{f.name}: unit cell {f.unit_cell} points {tgt} -> {src}; that is {other} data")
    raise BoundaryError(f"{f.name}: unit cell {f.unit_cell} is not a morphism {src} -> {tgt}")


def check_lax_monoidal_functor(f: MonoidalFunctor) -> Report:
    if f.kind != "lax":
        raise BoundaryError(f"{f.name} is not a lax monoidal functor")
    return _check_monoidal_functor(f)


def check_oplax_monoidal_functor(f: MonoidalFunctor) -> Report:
    if f.kind != "oplax":
        raise BoundaryError(f"{f.name} is not an oplax monoidal functor")
    return _check_monoidal_functor(f)


def _check_monoidal_functor(f: MonoidalFunctor) -> Report:
    _check_functor_boundary(f)
    _check_unit_cell(f)
    S, T, F = f.source, f.target, f.carrier
    c, d = S.base, T.base
    lax = f.kind == "lax"

    col = LawCollector()
    col.extend(check_functor(F), prefix="carrier")
    typed = _tensorator_typing(f, col)

    for m in c.morphisms:
        for n in c.morphisms:
            if not (typed[(m.dom, n.dom)] and typed[(m.cod, n.cod)]):
                continue
            f_mn = F.mor_map.get(S.mor(m.id, n.id))
            split = T.try_mor(F.mor(m.id), F.mor(n.id))
            if lax:
                lhs = d.try_compose(f_mn, f.phi(m.dom, n.dom))
                rhs = d.try_compose(f.phi(m.cod, n.cod), split)
            else:
                lhs = d.try_compose(split, f.phi(m.dom, n.dom))
                rhs = d.try_compose(f.phi(m.cod, n.cod), f_mn)
            col.equal("tensorator-naturality", f"({m.id},{n.id})", lhs, rhs)

    objs = c.objects
    unit = S.unit_object
    phibar = f.unit_cell
    for a in objs:
        fa = F.ob(a)
        for b in objs:
            fb = F.ob(b)
            for x in objs:
                fx = F.ob(x)
                where = f"({a},{b},{x})"
                f_alpha = F.mor_map.get(S.alpha(a, b, x))
                alpha_t = T.alpha(fa, fb, fx)
                if lax:
                    lhs = d.try_path(
                        f.phi(S.ob(a, b), x),
                        T.try_mor(f.phi(a, b), d.identity(fx)),
                        alpha_t,
                    )
                    rhs = d.try_path(
                        f_alpha,
                        f.phi(a, S.ob(b, x)),
                        T.try_mor(d.identity(fa), f.phi(b, x)),
                    )
                    col.equal("lax-assoc", where, lhs, rhs)
                else:
                    lhs = d.try_path(
                        alpha_t,
                        T.try_mor(d.identity(fa), f.phi(b, x)),
                        f.phi(a, S.ob(b, x)),
                    )
                    rhs = d.try_path(
                        T.try_mor(f.phi(a, b), d.identity(fx)),
                        f.phi(S.ob(a, b), x),
                        f_alpha,
                    )
                    col.equal("oplax-assoc", where, lhs, rhs)

        f_rho = F.mor_map.get(S.rho(a))
        f_lam = F.mor_map.get(S.lam(a))
        if lax:
            lhs = d.try_path(f_rho, f.phi(a, unit), T.try_mor(d.identity(fa), phibar))
            col.equal("lax-right-unit", a, lhs, T.rho(fa))
            lhs = d.try_path(f_lam, f.phi(unit, a), T.try_mor(phibar, d.identity(fa)))
            col.equal("lax-left-unit", a, lhs, T.lam(fa))
        else:
            lhs = d.try_path(T.rho(fa), T.try_mor(d.identity(fa), phibar), f.phi(a, unit))
            col.equal("oplax-right-unit", a, lhs, f_rho)
            lhs = d.try_path(T.lam(fa), T.try_mor(phibar, d.identity(fa)), f.phi(unit, a))
            col.equal("oplax-left-unit", a, lhs, f_lam)
    return col.report()


def check_monoidal_functor(f: MonoidalFunctor) -> Report:
    return _check_monoidal_functor(f)


def check_monoidal_transformation(t: MonoidalTransformation) -> Report:
    F, G = t.source, t.target
    if F.kind != G.kind:
        raise BoundaryError(f"{t.name}: endpoints mix lax and oplax monoidal functors")
    if not (F.source == G.source and F.target == G.target):
        raise BoundaryError(f"{t.name}: endpoints are not parallel")
    sigma = t.cell
    if sigma.source != F.carrier or sigma.target != G.carrier:
        raise BoundaryError(f"{t.name}: cell is not {F.carrier.name} ⇒ {G.carrier.name}")

    S, T = F.source, F.target
    d = T.base
    col = LawCollector()
    col.extend(check_naturality(sigma, law="cell-naturality"))
    lax = F.kind == "lax"
    for a in S.base.objects:
        for b in S.base.objects:
            both = T.try_mor(sigma.at(a), sigma.at(b))
            joined = sigma.at(S.ob(a, b))
            if lax:
                lhs = d.try_compose(G.phi(a, b), both)
                rhs = d.try_compose(joined, F.phi(a, b))
            else:
                lhs = d.try_compose(both, F.phi(a, b))
                rhs = d.try_compose(G.phi(a, b), joined)
            col.equal("monoidal-tensor", f"({a},{b})", lhs, rhs)
    sig_i = sigma.at(S.unit_object)
    if lax:
        col.equal("monoidal-unit", S.unit_object, d.try_compose(sig_i, F.unit_cell), G.unit_cell)
    else:
        col.equal("monoidal-unit", S.unit_object, d.try_compose(G.unit_cell, sig_i), F.unit_cell)
    return col.report()


def check_braiding(b: Braiding) -> Report:
    ms = b.monoidal
    c = ms.base
    col = LawCollector()
    col.extend(check_monoidal(ms), prefix="monoidal")
    objs = c.objects

    typed = {}
    for x in objs:
        for y in objs:
            comp = b.beta(x, y)
            src, tgt = ms.ob(x, y), ms.ob(y, x)
            ok = c.is_typed(comp, src, tgt)
            typed[(x, y)] = ok
            if not ok:
                col.fail("braiding-typing", f"({x},{y})", comp, f"{src}->{tgt}")
            elif inverse_of(c, comp) is None:
                raise StructuralError(f"{b.name}: braiding component {comp} at ({x},{y}) is not invertible")

    for f in c.morphisms:
        for g in c.morphisms:
            if not (typed[(f.dom, g.dom)] and typed[(f.cod, g.cod)]):
                continue
            lhs = c.try_compose(ms.try_mor(g.id, f.id), b.beta(f.dom, g.dom))
            rhs = c.try_compose(b.beta(f.cod, g.cod), ms.try_mor(f.id, g.id))
            col.equal("braiding-naturality", f"({f.id},{g.id})", lhs, rhs)

    def alpha_inv(x: str, y: str, z: str) -> Optional[str]:
        comp = ms.alpha(x, y, z)
        return inverse_of(c, comp) if c.has_morphism(comp) else None

    for x in objs:
        for y in objs:
            for z in objs:
                where = f"({x},{y},{z})"
                ident = c.identity
                lhs = c.try_path(alpha_inv(y, z, x), b.beta(x, ms.ob(y, z)), alpha_inv(x, y, z))
                rhs = c.try_path(
                    ms.try_mor(ident(y), b.beta(x, z)),
                    alpha_inv(y, x, z),
                    ms.try_mor(b.beta(x, y), ident(z)),
                )
                col.equal("hexagon-1", where, lhs, rhs)
                lhs = c.try_path(ms.alpha(z, x, y), b.beta(ms.ob(x, y), z), ms.alpha(x, y, z))
                rhs = c.try_path(
                    ms.try_mor(b.beta(x, z), ident(y)),
                    ms.alpha(x, z, y),
                    ms.try_mor(ident(x), b.beta(y, z)),
                )
                col.equal("hexagon-2", where, lhs, rhs)
    if b.symmetric:
        for x in objs:
            for y in objs:
                col.equal(
                    "symmetry",
                    f"({x},{y})",
                    c.try_compose(b.beta(y, x), b.beta(x, y)),
                    c.identity(ms.ob(x, y)),
                )
    return col.report()


def check_braided_functor(f: MonoidalFunctor, source: Braiding, target: Braiding) -> Report:
    """F(β)∘φ = φ∘β' (lax) or φ∘F(β) = β'∘φ (oplax), per object pair."""
    if not (source.monoidal == f.source and target.monoidal == f.target):
        raise BoundaryError(f"{f.name}: braidings do not sit on its monoidal structures")
    S, F = f.source, f.carrier
    d = f.target.base
    col = LawCollector()
    for a in S.base.objects:
        for b in S.base.objects:
            f_beta = F.mor_map.get(source.beta(a, b))
            beta_t = target.beta(F.ob(a), F.ob(b))
            if f.kind == "lax":
                lhs = d.try_compose(f_beta, f.phi(a, b))
                rhs = d.try_compose(f.phi(b, a), beta_t)
            else:
                lhs = d.try_compose(f.phi(b, a), f_beta)
                rhs = d.try_compose(beta_t, f.phi(a, b))
            col.equal("braided-functor", f"({a},{b})", lhs, rhs)
    return col.report()


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def _thin_cell(c: FinCat, a: str, b: str) -> str:
    hom = c.hom(a, b)
    return hom[0] if hom else f"{a}<={b}"


def thin_monoidal(
    c: FinCat,
    op: Union[Callable[[str, str], str], Dict[Pair, str]],
    unit: str,
    name: Optional[str] = None,
) -> MonoidalStructure:
    """Monoidal structure on a thin category from a monotone binary operation; cells are the unique ones."""
    mul = op if callable(op) else (lambda a, b: op[(a, b)])  # type: ignore[index]
    prod = product_category(c, c)
    ob_map = {x: mul(a, b) for x, (a, b) in prod.factors.ob_pairs.items()}
    mor_map: Dict[str, str] = {}
    for m in prod.morphisms:
        hom = c.hom(ob_map[m.dom], ob_map[m.cod])
        if not hom:
            raise StructuralError(f"operation on {c.name} is not monotone at {m.id}")
        mor_map[m.id] = hom[0]
    tensor = Functor(name="tensor", source=prod, target=c, ob_map=ob_map, mor_map=mor_map)
    objs = c.objects
    assoc = {
        (a, b, x): _thin_cell(c, mul(a, mul(b, x)), mul(mul(a, b), x)) for a in objs for b in objs for x in objs
    }
    return MonoidalStructure(
        name=name or f"{c.name}_op",
        base=c,
        tensor=tensor,
        unit_object=unit,
        assoc=assoc,
        left_unitor={a: _thin_cell(c, mul(unit, a), a) for a in objs},
        right_unitor={a: _thin_cell(c, mul(a, unit), a) for a in objs},
    )


def max_monoidal(chain: FinCat, unit: Optional[str] = None, name: Optional[str] = None) -> MonoidalStructure:
    """Join of a chain as tensor; unit defaults to the bottom element."""
    rank = {a: i for i, a in enumerate(chain.objects)}
    return thin_monoidal(
        chain,
        lambda a, b: a if rank[a] >= rank[b] else b,
        unit if unit is not None else chain.objects[0],
        name=name or f"{chain.name}_max",
    )


def monoid_monoidal(c: FinCat, name: Optional[str] = None) -> MonoidalStructure:
    """A commutative monoid seen as a one-object monoidal category; f⊗g = f∘g."""
    if len(c.objects) != 1:
        raise StructuralError(f"{c.name} has more than one object")
    star = c.objects[0]
    e = c.identity(star)
    prod = product_category(c, c)
    tensor = Functor(
        name="tensor",
        source=prod,
        target=c,
        ob_map={x: star for x in prod.objects},
        mor_map={m: c.compose(f, g) for m, (f, g) in prod.factors.mor_pairs.items()},
    )
    return MonoidalStructure(
        name=name or f"{c.name}_mul",
        base=c,
        tensor=tensor,
        unit_object=star,
        assoc={(star, star, star): e},
        left_unitor={star: e},
        right_unitor={star: e},
    )


def product_monoidal(m: MonoidalStructure, n: MonoidalStructure) -> MonoidalStructure:
    base = product_category(m.base, n.base)
    prod = product_category(base, base)
    ob_map: Dict[str, str] = {}
    for x, (p, q) in prod.factors.ob_pairs.items():
        (a1, a2), (b1, b2) = split_object(base, p), split_object(base, q)
        ob_map[x] = pair_id(m.ob(a1, b1), n.ob(a2, b2))
    mor_map: Dict[str, str] = {}
    for f, (p, q) in prod.factors.mor_pairs.items():
        (f1, f2), (g1, g2) = split_morphism(base, p), split_morphism(base, q)
        mor_map[f] = pair_id(m.mor(f1, g1), n.mor(f2, g2))
    tensor = Functor(name=f"{m.tensor.name}x{n.tensor.name}", source=prod, target=base, ob_map=ob_map, mor_map=mor_map)

    pairs = base.factors.ob_pairs
    assoc = {}
    for x, (x1, x2) in pairs.items():
        for y, (y1, y2) in pairs.items():
            for z, (z1, z2) in pairs.items():
                assoc[(x, y, z)] = pair_id(m.alpha(x1, y1, z1), n.alpha(x2, y2, z2))
    return MonoidalStructure(
        name=f"{m.name}x{n.name}",
        base=base,
        tensor=tensor,
        unit_object=pair_id(m.unit_object, n.unit_object),
        assoc=assoc,
        left_unitor={x: pair_id(m.lam(a), n.lam(b)) for x, (a, b) in pairs.items()},
        right_unitor={x: pair_id(m.rho(a), n.rho(b)) for x, (a, b) in pairs.items()},
    )


def product_braiding(b1: Braiding, b2: Braiding, monoidal: Optional[MonoidalStructure] = None) -> Braiding:
    ms = monoidal or product_monoidal(b1.monoidal, b2.monoidal)
    pairs = ms.base.factors.ob_pairs
    return Braiding(
        name=f"{b1.name}x{b2.name}",
        monoidal=ms,
        components={
            (x, y): pair_id(b1.beta(x1, y1), b2.beta(x2, y2))
            for x, (x1, x2) in pairs.items()
            for y, (y1, y2) in pairs.items()
        },
        symmetric=b1.symmetric and b2.symmetric,
    )


def identity_braiding(ms: MonoidalStructure, name: Optional[str] = None, symmetric: bool = True) -> Braiding:
    """Identity components; only well-typed when A⊗B = B⊗A on the nose."""
    c = ms.base
    return Braiding(
        name=name or f"{ms.name}_sym",
        monoidal=ms,
        components={(a, b): _thin_cell(c, ms.ob(a, b), ms.ob(b, a)) for a in c.objects for b in c.objects},
        symmetric=symmetric,
    )


def identity_monoidal_functor(ms: MonoidalStructure, kind: str = "lax") -> MonoidalFunctor:
    c = ms.base
    cls = LaxMonoidalFunctor if kind == "lax" else OplaxMonoidalFunctor
    return cls(
        name=f"1_{ms.name}",
        source=ms,
        target=ms,
        carrier=identity_functor(c),
        tensorator={(a, b): c.identity(ms.ob(a, b)) for a in c.objects for b in c.objects},
        unit_cell=c.identity(ms.unit_object),
    )


def compose_monoidal_functors(g: MonoidalFunctor, f: MonoidalFunctor) -> MonoidalFunctor:
    """
    Lax: φ″ = G(φ) ∘ φ'_{F,F} and φ̄″ = G(φ̄) ∘ φ̄'.
    Oplax: φ″ = φ'_{F,F} ∘ G(φ) and φ̄″ = φ̄' ∘ G(φ̄).
    """
    if f.kind != g.kind:
        raise BoundaryError(f"cannot compose {g.name} after {f.name}: mixed lax/oplax")
    if not (f.target == g.source):
        raise BoundaryError(f"cannot compose {g.name} after {f.name}: monoidal structures differ")
    F, G = f.carrier, g.carrier
    e = g.target.base
    objs = f.source.base.objects
    tensorator: Dict[Pair, str] = {}
    for a in objs:
        for b in objs:
            g_phi = G.mor(f.phi(a, b))
            inner = g.phi(F.ob(a), F.ob(b))
            tensorator[(a, b)] = e.compose(g_phi, inner) if f.kind == "lax" else e.compose(inner, g_phi)
    g_bar = G.mor(f.unit_cell)
    unit_cell = e.compose(g_bar, g.unit_cell) if f.kind == "lax" else e.compose(g.unit_cell, g_bar)
    return type(f)(
        name=f"{g.name}.{f.name}",
        source=f.source,
        target=g.target,
        carrier=compose_functors(G, F),
        tensorator=tensorator,
        unit_cell=unit_cell,
    )


def opposite_monoidal(ms: MonoidalStructure) -> MonoidalStructure:
    """Same tensor on C^op; coherence cells are the inverses of the originals."""
    c = ms.base
    op = opposite_category(c)

    def inv(f: str) -> str:
        g = inverse_of(c, f) if c.has_morphism(f) else None
        if g is None:
            raise StructuralError(f"{ms.name}: coherence cell {f} has no inverse")
        return g

    tensor = Functor(
        name=f"{ms.tensor.name}^op",
        source=product_category(op, op),
        target=op,
        ob_map=dict(ms.tensor.ob_map),
        mor_map=dict(ms.tensor.mor_map),
    )
    return MonoidalStructure(
        name=f"{ms.name}^op",
        base=op,
        tensor=tensor,
        unit_object=ms.unit_object,
        assoc={k: inv(v) for k, v in ms.assoc.items()},
        left_unitor={k: inv(v) for k, v in ms.left_unitor.items()},
        right_unitor={k: inv(v) for k, v in ms.right_unitor.items()},
    )


def opposite_monoidal_functor(f: MonoidalFunctor) -> MonoidalFunctor:
    """A lax monoidal functor read on opposite categories is oplax, and conversely."""
    src, tgt = opposite_monoidal(f.source), opposite_monoidal(f.target)
    F = opposite_functor(f.carrier)
    carrier = Functor(name=F.name, source=src.base, target=tgt.base, ob_map=F.ob_map, mor_map=F.mor_map)
    cls = OplaxMonoidalFunctor if f.kind == "lax" else LaxMonoidalFunctor
    return cls(
        name=f"{f.name}^op",
        source=src,
        target=tgt,
        carrier=carrier,
        tensorator=dict(f.tensorator),
        unit_cell=f.unit_cell,
    )


def coherence_report(ms: MonoidalStructure) -> Report:
    """Only the invertibility, pentagon and triangle conditions of check_monoidal."""
    keep = ("assoc-invertible", "left-unitor-invertible", "right-unitor-invertible", "pentagon", "triangle")
    return [v for v in check_monoidal(ms) if v.law in keep]
