from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, replace
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple

from catkit.core.errors import BoundaryError, CatkitError, StructuralError
from catkit.core.fincat import (
    FinCat,
    Functor,
    NatTrans,
    compose_functors,
    inverse_of,
    object_functor,
    pair_id,
    reassociation,
    same_category,
    terminal_category,
)
from catkit.core.models import LawCollector, Report, Violation
from catkit.core.monad import (
    LaxMonadMorphism,
    Monad,
    MonadMorphism,
    MonadTransformation,
    OplaxMonadMorphism,
    check_monad,
    check_monad_morphism,
    check_monad_transformation,
    compose_lax,
    compose_oplax,
    identity_lax,
    identity_monad,
    identity_oplax,
    monad_from_cells,
    pair_morphism,
    product_monad,
    product_morphism,
    terminal_morphism,
)
from catkit.core.monoidal import (
    LaxMonoidalFunctor,
    MonoidalFunctor,
    MonoidalStructure,
    MonoidalTransformation,
    OplaxMonoidalFunctor,
    check_monoidal,
    check_monoidal_functor,
    check_monoidal_transformation,
    coherence_report,
    compose_monoidal_functors,
    identity_monoidal_functor,
    product_monoidal,
)

logger = logging.getLogger(__name__)

KINDS = ("lax", "oplax")


@dataclass(frozen=True, eq=False)
class MonoidalMonadTuple:
    """
    (C, ⊗, I, α, λ, ρ, S, φ, φ̄, η, μ).

    Lax: φ_{A,B}: SA⊗SB → S(A⊗B) and φ̄: I → S(I). Oplax reverses both.
    """

    name: str
    monoidal: MonoidalStructure
    monad: Monad
    phi: Dict[Tuple[str, str], str]
    phi_unit: str
    kind: str = "lax"

    @property
    def base(self) -> FinCat:
        return self.monoidal.base

    def phi_at(self, a: str, b: str) -> str:
        try:
            return self.phi[(a, b)]
        except KeyError:
            raise StructuralError(f"tuple {self.name}: no φ component at ({a},{b})") from None


@dataclass(frozen=True)
class InterchangeResult:
    name: str
    agree: bool
    in_monads: Tuple[Violation, ...]
    on_monoidal: Tuple[Violation, ...]

    @property
    def valid(self) -> bool:
        return self.agree and not self.in_monads and not self.on_monoidal


def validate_tuple_structure(t: MonoidalMonadTuple) -> None:
    if t.kind not in KINDS:
        raise StructuralError(f"tuple {t.name}: kind must be lax or oplax, not {t.kind!r}")
    if not same_category(t.monad.base, t.monoidal.base):
        raise BoundaryError(f"tuple {t.name}: monad {t.monad.name} and monoidal {t.monoidal.name} live on different bases")
    c = t.base
    for a in c.objects:
        for b in c.objects:
            t.phi_at(a, b)


def _run_step(col: LawCollector, label: str, step: Callable[[], Report]) -> None:
    try:
        col.extend(step(), prefix=label)
    except CatkitError as exc:
        col.fail("structure", label, type(exc).__name__, str(exc))


# ---------------------------------------------------------------------------
# Monoidal object in monads
# ---------------------------------------------------------------------------


def _morphism_cls(t: MonoidalMonadTuple):
    return OplaxMonadMorphism if t.kind == "lax" else LaxMonadMorphism


def _interchange(t: MonoidalMonadTuple, carrier: Functor, source: Monad, target: Monad, comps: Dict[str, str]) -> NatTrans:
    if t.kind == "lax":
        s, u = compose_functors(carrier, source.endo), compose_functors(target.endo, carrier)
    else:
        s, u = compose_functors(target.endo, carrier), compose_functors(carrier, source.endo)
    return NatTrans(name=f"tau_{carrier.name}", source=s, target=u, components=comps)


def tensor_morphism(t: MonoidalMonadTuple) -> MonadMorphism:
    """(⊗, φ) as a monad morphism S×S → S; oplax for lax tuples, lax for oplax ones."""
    m, ms = t.monad, t.monoidal
    src = product_monad(m, m)
    comps = {x: t.phi_at(a, b) for x, (a, b) in src.base.factors.ob_pairs.items()}
    tau = _interchange(t, ms.tensor, src, m, comps)
    return _morphism_cls(t)(name=f"({ms.tensor.name},phi)", source=src, target=m, carrier=ms.tensor, interchange=tau)


def unit_morphism(t: MonoidalMonadTuple, one: Optional[FinCat] = None) -> MonadMorphism:
    """(I, φ̄) as a monad morphism out of the identity monad on the terminal category."""
    one = one or terminal_category()
    src = identity_monad(one)
    carrier = object_functor(t.base, t.monoidal.unit_object, one)
    tau = _interchange(t, carrier, src, t.monad, {one.objects[0]: t.phi_unit})
    return _morphism_cls(t)(name="(I,phibar)", source=src, target=t.monad, carrier=carrier, interchange=tau)


def _reassociation_morphism(t: MonoidalMonadTuple) -> MonadMorphism:
    m, c = t.monad, t.base
    src = product_monad(m, product_monad(m, m))
    tgt = product_monad(product_monad(m, m), m)
    carrier = reassociation(c, c, c)
    tc = carrier.target
    comps = {x: tc.identity(carrier.ob(src.endo.ob(x))) for x in src.base.objects}
    tau = _interchange(t, carrier, src, tgt, comps)
    return _morphism_cls(t)(name="reassoc", source=src, target=tgt, carrier=carrier, interchange=tau)


def _coherence_transformations(t: MonoidalMonadTuple, one: FinCat) -> List[Tuple[str, Callable[[], Report]]]:
    ms, m = t.monoidal, t.monad
    lax_tuple = t.kind == "lax"
    compose = compose_oplax if lax_tuple else compose_lax
    ident = identity_oplax(m) if lax_tuple else identity_lax(m)
    tens = tensor_morphism(t)
    unit = unit_morphism(t, one)
    point = compose(unit, terminal_morphism(m, "oplax" if lax_tuple else "lax", one))

    def assoc() -> Report:
        left = compose(tens, product_morphism(ident, tens))
        right = compose(compose(tens, product_morphism(tens, ident)), _reassociation_morphism(t))
        comps = {pair_id(a, pair_id(b, x)): ms.alpha(a, b, x) for (a, b, x) in ms.assoc}
        cell = NatTrans(name="alpha", source=left.carrier, target=right.carrier, components=comps)
        return check_monad_transformation(MonadTransformation(name="alpha", source=left, target=right, cell=cell))

    def left_unitor() -> Report:
        src = compose(tens, pair_morphism(point, ident))
        cell = NatTrans(name="lambda", source=src.carrier, target=ident.carrier, components=dict(ms.left_unitor))
        return check_monad_transformation(MonadTransformation(name="lambda", source=src, target=ident, cell=cell))

    def right_unitor() -> Report:
        src = compose(tens, pair_morphism(ident, point))
        cell = NatTrans(name="rho", source=src.carrier, target=ident.carrier, components=dict(ms.right_unitor))
        return check_monad_transformation(MonadTransformation(name="rho", source=src, target=ident, cell=cell))

    return [("assoc", assoc), ("left-unitor", left_unitor), ("right-unitor", right_unitor)]


def validate_as_monoidal_in_monads(t: MonoidalMonadTuple) -> Report:
    """
    Reads the tuple as a pseudomonoid in monads: (⊗, φ) and (I, φ̄) are monad morphisms
    (oplax ones for a lax tuple), α, λ, ρ are transformations between the composite
    morphisms, and the coherence cells are invertible and satisfy pentagon and triangle.
    """
    col = LawCollector()
    try:
        validate_tuple_structure(t)
    except CatkitError as exc:
        col.fail("structure", t.name, type(exc).__name__, str(exc))
        return col.report()

    one = terminal_category()
    _run_step(col, "monad", lambda: check_monad(t.monad))
    _run_step(col, "tensor", lambda: check_monad_morphism(tensor_morphism(t)))
    _run_step(col, "unit", lambda: check_monad_morphism(unit_morphism(t, one)))
    try:
        steps = _coherence_transformations(t, one)
    except CatkitError as exc:
        col.fail("structure", "coherence-cells", type(exc).__name__, str(exc))
        steps = []
    for label, step in steps:
        _run_step(col, label, step)
    _run_step(col, "coherence", lambda: coherence_report(t.monoidal))
    report = col.report()
    logger.debug("monoidal-in-monads %s: %s violations", t.name, len(report))
    return report


# ---------------------------------------------------------------------------
# Monad on a monoidal category
# ---------------------------------------------------------------------------


def monad_functor(t: MonoidalMonadTuple) -> MonoidalFunctor:
    """(S, φ, φ̄) as a lax or oplax monoidal endofunctor."""
    cls = LaxMonoidalFunctor if t.kind == "lax" else OplaxMonoidalFunctor
    return cls(
        name=t.monad.endo.name,
        source=t.monoidal,
        target=t.monoidal,
        carrier=t.monad.endo,
        tensorator=dict(t.phi),
        unit_cell=t.phi_unit,
    )


def validate_as_monad_on_monoidal(t: MonoidalMonadTuple) -> Report:
    """
    Reads the tuple as a monad on a monoidal category: the structure is monoidal, (S, φ, φ̄) is a
    monoidal functor, η and μ are monoidal transformations and (S, η, μ) satisfies the monad laws.
    The tensorator of S∘S is composed from φ, never read from the tuple.
    """
    col = LawCollector()
    try:
        validate_tuple_structure(t)
    except CatkitError as exc:
        col.fail("structure", t.name, type(exc).__name__, str(exc))
        return col.report()

    m = t.monad
    s_fun = monad_functor(t)
    _run_step(col, "monoidal", lambda: check_monoidal(t.monoidal))
    _run_step(col, "functor", lambda: check_monoidal_functor(s_fun))

    def unit_step() -> Report:
        ident = identity_monoidal_functor(t.monoidal, t.kind)
        return check_monoidal_transformation(MonoidalTransformation(name="eta", source=ident, target=s_fun, cell=m.unit))

    def mult_step() -> Report:
        square = compose_monoidal_functors(s_fun, s_fun)
        return check_monoidal_transformation(MonoidalTransformation(name="mu", source=square, target=s_fun, cell=m.mult))

    _run_step(col, "eta", unit_step)
    _run_step(col, "mu", mult_step)
    _run_step(col, "monad", lambda: check_monad(m))
    report = col.report()
    logger.debug("monad-on-monoidal %s: %s violations", t.name, len(report))
    return report


def check_interchange_equivalence(t: MonoidalMonadTuple) -> InterchangeResult:
    """Runs both readings of the tuple; they must agree on every input, valid or not."""
    left = validate_as_monoidal_in_monads(t)
    right = validate_as_monad_on_monoidal(t)
    agree = bool(left) == bool(right)
    if not agree:
        logger.warning("validators disagree on %s: %s vs %s violations", t.name, len(left), len(right))
    return InterchangeResult(name=t.name, agree=agree, in_monads=tuple(left), on_monoidal=tuple(right))


# ---------------------------------------------------------------------------
# Corruptions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Corruption:
    field: str
    key: Tuple[str, ...]
    value: str

    def label(self) -> str:
        return f"{self.field}[{','.join(self.key)}]={self.value}"


def _fields(t: MonoidalMonadTuple) -> List[Tuple[str, Tuple[str, ...], str]]:
    ms, m = t.monoidal, t.monad
    out: List[Tuple[str, Tuple[str, ...], str]] = []
    out.extend(("phi", k, v) for k, v in sorted(t.phi.items()))
    out.append(("phi_unit", (), t.phi_unit))
    out.extend(("eta", (a,), v) for a, v in sorted(m.unit.components.items()))
    out.extend(("mu", (a,), v) for a, v in sorted(m.mult.components.items()))
    out.extend(("assoc", k, v) for k, v in sorted(ms.assoc.items()))
    out.extend(("lambda", (a,), v) for a, v in sorted(ms.left_unitor.items()))
    out.extend(("rho", (a,), v) for a, v in sorted(ms.right_unitor.items()))
    out.extend(("tensor", (f,), v) for f, v in sorted(ms.tensor.mor_map.items()))
    out.extend(("endo", (f,), v) for f, v in sorted(m.endo.mor_map.items()))
    return out


def single_corruptions(t: MonoidalMonadTuple) -> List[Corruption]:
    """Every replacement of one morphism-valued field by a different base morphism."""
    ids = sorted(f.id for f in t.base.morphisms)
    return [Corruption(field, key, other) for field, key, value in _fields(t) for other in ids if other != value]


def apply_corruptions(t: MonoidalMonadTuple, changes: Sequence[Corruption]) -> MonoidalMonadTuple:
    ms, m = t.monoidal, t.monad
    phi, phi_unit = dict(t.phi), t.phi_unit
    unit, mult = dict(m.unit.components), dict(m.mult.components)
    endo_map = dict(m.endo.mor_map)
    assoc, lam, rho = dict(ms.assoc), dict(ms.left_unitor), dict(ms.right_unitor)
    tensor_map = dict(ms.tensor.mor_map)
    for ch in changes:
        if ch.field == "phi":
            phi[ch.key] = ch.value
        elif ch.field == "phi_unit":
            phi_unit = ch.value
        elif ch.field == "eta":
            unit[ch.key[0]] = ch.value
        elif ch.field == "mu":
            mult[ch.key[0]] = ch.value
        elif ch.field == "assoc":
            assoc[ch.key] = ch.value
        elif ch.field == "lambda":
            lam[ch.key[0]] = ch.value
        elif ch.field == "rho":
            rho[ch.key[0]] = ch.value
        elif ch.field == "tensor":
            tensor_map[ch.key[0]] = ch.value
        elif ch.field == "endo":
            endo_map[ch.key[0]] = ch.value
        else:
            raise ValueError(f"unknown corruption field {ch.field}")

    endo = replace(m.endo, mor_map=endo_map) if endo_map != m.endo.mor_map else m.endo
    monad = monad_from_cells(m.name, m.base, endo, unit, mult)
    tensor = replace(ms.tensor, mor_map=tensor_map) if tensor_map != ms.tensor.mor_map else ms.tensor
    monoidal = replace(ms, tensor=tensor, assoc=assoc, left_unitor=lam, right_unitor=rho)
    label = "+".join(ch.label() for ch in changes)
    return replace(t, name=f"{t.name}!{label}", monoidal=monoidal, monad=monad, phi=phi, phi_unit=phi_unit)


def corruptions(
    t: MonoidalMonadTuple,
    min_count: int = 100,
    max_count: Optional[int] = None,
) -> List[MonoidalMonadTuple]:
    """
    All single-field corruptions, padded with multi-field ones (fewest fields first) until at
    least `min_count` corrupted tuples exist or the combinations run out.

    `max_count` thins the single-field list to an evenly spaced sample.
    """
    singles = single_corruptions(t)
    picked = singles
    if max_count is not None and len(singles) > max_count:
        step = len(singles) / max_count
        picked = [singles[int(i * step)] for i in range(max_count)]
    out = [apply_corruptions(t, [ch]) for ch in picked]
    size = 2
    while len(out) < min_count and size <= len(singles):
        added = False
        for combo in itertools.combinations(singles, size):
            if len({(ch.field, ch.key) for ch in combo}) < size:
                continue
            out.append(apply_corruptions(t, combo))
            added = True
            if len(out) >= min_count:
                break
        if not added:
            break
        size += 1
    logger.debug("corruptions of %s: %s", t.name, len(out))
    return out


# ---------------------------------------------------------------------------
# Constructors and projections
# ---------------------------------------------------------------------------


def thin_tuple(
    name: str,
    monoidal: MonoidalStructure,
    monad: Monad,
    kind: str = "lax",
) -> MonoidalMonadTuple:
    """Tuple on a thin category with φ and φ̄ taken as the unique available cells."""
    c, S = monoidal.base, monad.endo
    ms = monoidal

    def cell(a: str, b: str) -> str:
        hom = c.hom(a, b)
        return hom[0] if hom else f"{a}<={b}"

    phi = {}
    for a in c.objects:
        for b in c.objects:
            split, joined = ms.ob(S.ob(a), S.ob(b)), S.ob(ms.ob(a, b))
            phi[(a, b)] = cell(split, joined) if kind == "lax" else cell(joined, split)
    i, si = ms.unit_object, S.ob(ms.unit_object)
    phi_unit = cell(i, si) if kind == "lax" else cell(si, i)
    return MonoidalMonadTuple(name=name, monoidal=ms, monad=monad, phi=phi, phi_unit=phi_unit, kind=kind)


def identity_tuple(ms: MonoidalStructure, kind: str = "lax", name: Optional[str] = None) -> MonoidalMonadTuple:
    c = ms.base
    return MonoidalMonadTuple(
        name=name or f"id_{ms.name}",
        monoidal=ms,
        monad=identity_monad(c),
        phi={(a, b): c.identity(ms.ob(a, b)) for a in c.objects for b in c.objects},
        phi_unit=c.identity(ms.unit_object),
        kind=kind,
    )


def with_kind(t: MonoidalMonadTuple, kind: str, name: Optional[str] = None) -> MonoidalMonadTuple:
    """Reads a tuple with invertible φ and φ̄ as the other kind by inverting both cells."""
    if kind == t.kind:
        return t
    c = t.base

    def inv(f: str) -> str:
        g = inverse_of(c, f) if c.has_morphism(f) else None
        if g is None:
            raise StructuralError(f"tuple {t.name}: cell {f} is not invertible")
        return g

    return replace(
        t,
        name=name or f"{t.name}_{kind}",
        phi={k: inv(v) for k, v in t.phi.items()},
        phi_unit=inv(t.phi_unit),
        kind=kind,
    )


def product_tuple(t1: MonoidalMonadTuple, t2: MonoidalMonadTuple) -> MonoidalMonadTuple:
    if t1.kind != t2.kind:
        raise BoundaryError(f"cannot take the product of a {t1.kind} and a {t2.kind} tuple")
    ms = product_monoidal(t1.monoidal, t2.monoidal)
    m = product_monad(t1.monad, t2.monad)
    pairs = ms.base.factors.ob_pairs
    phi = {
        (x, y): pair_id(t1.phi_at(x1, y1), t2.phi_at(x2, y2))
        for x, (x1, x2) in pairs.items()
        for y, (y1, y2) in pairs.items()
    }
    return MonoidalMonadTuple(
        name=f"{t1.name}x{t2.name}",
        monoidal=ms,
        monad=m,
        phi=phi,
        phi_unit=pair_id(t1.phi_unit, t2.phi_unit),
        kind=t1.kind,
    )


def strip_monad(t: MonoidalMonadTuple) -> Monad:
    """The tuple with its monoidal data and interchange cells forgotten."""
    return t.monad


def strip_monoidal(t: MonoidalMonadTuple) -> MonoidalStructure:
    """The tuple with its monad data and interchange cells forgotten."""
    return t.monoidal


def check_forgetting(t: MonoidalMonadTuple) -> Report:
    """Monad laws of strip_monad(t) and monoidal laws of strip_monoidal(t); empty for every valid tuple."""
    col = LawCollector()
    _run_step(col, "forget-monoidal", lambda: check_monad(strip_monad(t)))
    _run_step(col, "forget-monad", lambda: check_monoidal(strip_monoidal(t)))
    return col.report()


def validate_tuple(t: MonoidalMonadTuple) -> Report:
    """Both readings and the forgetful checks, concatenated; empty iff the tuple is an (op)lax monoidal monad."""
    res = check_interchange_equivalence(t)
    return list(res.in_monads) + list(res.on_monoidal) + check_forgetting(t)


def iter_corrupted_results(
    t: MonoidalMonadTuple,
    min_count: int = 100,
    max_count: Optional[int] = None,
) -> Iterator[InterchangeResult]:
    for bad in corruptions(t, min_count=min_count, max_count=max_count):
        yield check_interchange_equivalence(bad)
