from __future__ import annotations

import itertools
import logging
import threading
from dataclasses import dataclass, field
from typing import Callable, Dict, Iterable, Iterator, List, Optional, Sequence, Tuple, Union

import networkx as nx
from networkx.algorithms import isomorphism

from catkit.core.errors import BoundaryError, SearchAborted, StructuralError
from catkit.core.models import UNDEFINED, LawCollector, Report

logger = logging.getLogger(__name__)

_CACHE_LOCK = threading.Lock()


def pair_id(a: str, b: str) -> str:
    return f"({a},{b})"


@dataclass(frozen=True)
class Morphism:
    id: str
    dom: str
    cod: str


@dataclass(frozen=True)
class ProductFactors:
    left: "FinCat"
    right: "FinCat"
    ob_pairs: Dict[str, Tuple[str, str]]
    mor_pairs: Dict[str, Tuple[str, str]]


@dataclass(frozen=True, eq=False)
class FinCat:
    """
    A finite category given by explicit objects, morphisms and a composition table.

    table[(g, f)] is g∘f. Equality ignores the name and the listing order.
    """

    name: str
    objects: Tuple[str, ...]
    morphisms: Tuple[Morphism, ...]
    identities: Dict[str, str]
    table: Dict[Tuple[str, str], str]
    factors: Optional[ProductFactors] = field(default=None, repr=False)
    _cache: Dict[str, object] = field(default_factory=dict, repr=False)

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, FinCat):
            return NotImplemented
        return (
            set(self.objects) == set(other.objects)
            and self._index() == other._index()
            and self.identities == other.identities
            and self.table == other.table
        )

    __hash__ = None  # type: ignore[assignment]

    def _index(self) -> Dict[str, Morphism]:
        idx = self._cache.get("index")
        if idx is None:
            idx = {m.id: m for m in self.morphisms}
            self._cache["index"] = idx
        return idx  # type: ignore[return-value]

    def _homs(self) -> Dict[Tuple[str, str], Tuple[str, ...]]:
        homs = self._cache.get("homs")
        if homs is None:
            acc: Dict[Tuple[str, str], List[str]] = {}
            for m in self.morphisms:
                acc.setdefault((m.dom, m.cod), []).append(m.id)
            homs = {k: tuple(v) for k, v in acc.items()}
            self._cache["homs"] = homs
        return homs  # type: ignore[return-value]

    def _outgoing(self) -> Dict[str, Tuple[Morphism, ...]]:
        out = self._cache.get("outgoing")
        if out is None:
            acc: Dict[str, List[Morphism]] = {}
            for m in self.morphisms:
                acc.setdefault(m.dom, []).append(m)
            out = {k: tuple(v) for k, v in acc.items()}
            self._cache["outgoing"] = out
        return out  # type: ignore[return-value]

    def has_object(self, a: str) -> bool:
        return a in self.identities or a in set(self.objects)

    def has_morphism(self, f: Optional[str]) -> bool:
        return f is not None and f in self._index()

    def morphism(self, f: str) -> Morphism:
        try:
            return self._index()[f]
        except KeyError:
            raise StructuralError(f"{self.name}: unknown morphism {f}") from None

    def dom(self, f: str) -> str:
        return self.morphism(f).dom

    def cod(self, f: str) -> str:
        return self.morphism(f).cod

    def identity(self, a: str) -> str:
        try:
            return self.identities[a]
        except KeyError:
            raise StructuralError(f"{self.name}: unknown object {a}") from None

    def hom(self, a: str, b: str) -> Tuple[str, ...]:
        return self._homs().get((a, b), ())

    def outgoing(self, a: str) -> Tuple[Morphism, ...]:
        return self._outgoing().get(a, ())

    def is_typed(self, f: Optional[str], dom: str, cod: str) -> bool:
        m = self._index().get(f) if f is not None else None
        return m is not None and m.dom == dom and m.cod == cod

    def compose(self, g: str, f: str) -> str:
        mf, mg = self.morphism(f), self.morphism(g)
        if mf.cod != mg.dom:
            raise BoundaryError(f"{self.name}: cannot compose {g} after {f} ({mf.cod} != {mg.dom})")
        try:
            return self.table[(g, f)]
        except KeyError:
            raise StructuralError(f"{self.name}: composition table has no entry for ({g}, {f})") from None

    def compose_path(self, *ids: str) -> str:
        """compose_path(h, g, f) is h∘g∘f."""
        if not ids:
            raise ValueError("compose_path needs at least one morphism")
        out = ids[-1]
        for g in reversed(ids[:-1]):
            out = self.compose(g, out)
        return out

    def try_compose(self, g: Optional[str], f: Optional[str]) -> Optional[str]:
        idx = self._index()
        if g is None or f is None or g not in idx or f not in idx:
            return None
        if idx[f].cod != idx[g].dom:
            return None
        gf = self.table.get((g, f))
        return gf if gf in idx else None

    def try_path(self, *ids: Optional[str]) -> Optional[str]:
        if not ids:
            return None
        out = ids[-1]
        for g in reversed(ids[:-1]):
            out = self.try_compose(g, out)
        return out if out in self._index() else None


def validate_structure(c: FinCat) -> None:
    """Raises StructuralError for duplicate or dangling identifiers."""
    if len(set(c.objects)) != len(c.objects):
        raise StructuralError(f"{c.name}: duplicate object ids")
    if len(c._index()) != len(c.morphisms):
        raise StructuralError(f"{c.name}: duplicate morphism ids")
    objs = set(c.objects)
    for m in c.morphisms:
        if m.dom not in objs or m.cod not in objs:
            bad = m.dom if m.dom not in objs else m.cod
            raise StructuralError(f"{c.name}: morphism {m.id} names unknown object {bad}")
    for a in c.objects:
        if a not in c.identities:
            raise StructuralError(f"{c.name}: object {a} has no identity")
    for a, i in c.identities.items():
        if a not in objs:
            raise StructuralError(f"{c.name}: identity given for unknown object {a}")
        if not c.has_morphism(i):
            raise StructuralError(f"{c.name}: identity of {a} names unknown morphism {i}")
    for (g, f), gf in c.table.items():
        for x in (g, f, gf):
            if not c.has_morphism(x):
                raise StructuralError(f"{c.name}: composition entry ({g}, {f}) names unknown morphism {x}")


def check_category(c: FinCat) -> Report:
    validate_structure(c)
    col = LawCollector()

    for a in c.objects:
        i = c.identities[a]
        m = c.morphism(i)
        if m.dom != a or m.cod != a:
            col.fail("identity-typing", a, i, f"{a}->{a}")

    for (g, f), gf in c.table.items():
        if c.cod(f) != c.dom(g):
            col.fail("composition-domain", f"({g}, {f})", gf, UNDEFINED)

    for f in c.morphisms:
        for g in c.outgoing(f.cod):
            where = f"({g.id}, {f.id})"
            gf = c.table.get((g.id, f.id))
            if gf is None:
                col.fail("composition-totality", where, UNDEFINED, f"{f.dom}->{g.cod}")
                continue
            m = c.morphism(gf)
            if m.dom != f.dom or m.cod != g.cod:
                col.fail("compose-typing", where, f"{gf}: {m.dom}->{m.cod}", f"{f.dom}->{g.cod}")

    for f in c.morphisms:
        left = c.identities[f.cod]
        col.equal("left-unit", f"({left}, {f.id})", c.table.get((left, f.id)), f.id)
        right = c.identities[f.dom]
        col.equal("right-unit", f"({f.id}, {right})", c.table.get((f.id, right)), f.id)

    for f in c.morphisms:
        for g in c.outgoing(f.cod):
            gf = c.try_compose(g.id, f.id)
            if gf is None:
                continue
            for h in c.outgoing(g.cod):
                hg = c.try_compose(h.id, g.id)
                if hg is None:
                    continue
                lhs = c.try_compose(h.id, gf)
                rhs = c.try_compose(hg, f.id)
                if lhs is None or rhs is None:
                    continue
                col.equal("associativity", f"({h.id}, {g.id}, {f.id})", lhs, rhs)
    return col.report()


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def poset_category(name: str, elements: Sequence[str], relations: Iterable[Tuple[str, str]]) -> FinCat:
    """Thin category of the reflexive-transitive closure of `relations`; morphism a->b is 'a<=b'."""
    graph = nx.DiGraph()
    graph.add_nodes_from(elements)
    graph.add_edges_from(relations)
    closure = nx.transitive_closure(graph, reflexive=True)

    elements = list(elements)
    le = {(a, b) for a in elements for b in elements if a == b or closure.has_edge(a, b)}
    morphisms = tuple(Morphism(f"{a}<={b}", a, b) for a in elements for b in elements if (a, b) in le)
    identities = {a: f"{a}<={a}" for a in elements}
    table: Dict[Tuple[str, str], str] = {}
    for a, b in le:
        for c in elements:
            if (b, c) in le:
                table[(f"{b}<={c}", f"{a}<={b}")] = f"{a}<={c}"
    cat = FinCat(name=name, objects=tuple(elements), morphisms=morphisms, identities=identities, table=table)
    logger.debug("poset %s: %s objects, %s morphisms", name, len(elements), len(morphisms))
    return cat


def chain_category(n: int) -> FinCat:
    if n < 1:
        raise ValueError("chain length must be positive")
    elements = [str(i) for i in range(n)]
    return poset_category(f"chain{n}", elements, [(str(i), str(i + 1)) for i in range(n - 1)])


def monoid_category(
    name: str,
    elements: Sequence[str],
    multiply: Union[Dict[Tuple[str, str], str], Callable[[str, str], str]],
    unit: str,
) -> FinCat:
    """One-object category '*' whose endomorphisms are `elements`; g∘f = multiply(g, f)."""
    mul = multiply if callable(multiply) else (lambda g, f: multiply[(g, f)])  # type: ignore[index]
    morphisms = tuple(Morphism(x, "*", "*") for x in elements)
    table = {(g, f): mul(g, f) for g in elements for f in elements}
    return FinCat(name=name, objects=("*",), morphisms=morphisms, identities={"*": unit}, table=table)


def cyclic_group_category(n: int) -> FinCat:
    names = ["e", "s"] + [f"s{k}" for k in range(2, n)]
    names = names[:n]
    return monoid_category(
        f"Z{n}",
        names,
        lambda g, f: names[(names.index(g) + names.index(f)) % n],
        "e",
    )


def terminal_category() -> FinCat:
    return FinCat(
        name="1",
        objects=("*",),
        morphisms=(Morphism("id*", "*", "*"),),
        identities={"*": "id*"},
        table={("id*", "id*"): "id*"},
    )


def product_category(c: FinCat, d: FinCat) -> FinCat:
    with _CACHE_LOCK:
        for other, prod in c._cache.get("products", []):  # type: ignore[union-attr]
            if other is d:
                return prod

    objects = tuple(pair_id(a, b) for a in c.objects for b in d.objects)
    ob_pairs = {pair_id(a, b): (a, b) for a in c.objects for b in d.objects}
    morphisms: List[Morphism] = []
    mor_pairs: Dict[str, Tuple[str, str]] = {}
    for f in c.morphisms:
        for g in d.morphisms:
            mid = pair_id(f.id, g.id)
            morphisms.append(Morphism(mid, pair_id(f.dom, g.dom), pair_id(f.cod, g.cod)))
            mor_pairs[mid] = (f.id, g.id)
    identities = {pair_id(a, b): pair_id(c.identity(a), d.identity(b)) for a in c.objects for b in d.objects}

    d_pairs = [
        (g1.id, g2.id, d.table[(g2.id, g1.id)])
        for g1 in d.morphisms
        for g2 in d.outgoing(g1.cod)
        if (g2.id, g1.id) in d.table
    ]
    table: Dict[Tuple[str, str], str] = {}
    for f1 in c.morphisms:
        for f2 in c.outgoing(f1.cod):
            f21 = c.table.get((f2.id, f1.id))
            if f21 is None:
                continue
            for g1, g2, g21 in d_pairs:
                table[(pair_id(f2.id, g2), pair_id(f1.id, g1))] = pair_id(f21, g21)

    prod = FinCat(
        name=f"{c.name}x{d.name}",
        objects=objects,
        morphisms=tuple(morphisms),
        identities=identities,
        table=table,
        factors=ProductFactors(left=c, right=d, ob_pairs=ob_pairs, mor_pairs=mor_pairs),
    )
    with _CACHE_LOCK:
        c._cache.setdefault("products", []).append((d, prod))  # type: ignore[union-attr]
    logger.debug("product %s: %s objects, %s morphisms", prod.name, len(objects), len(morphisms))
    return prod


def split_object(prod: FinCat, a: str) -> Tuple[str, str]:
    if prod.factors is None:
        raise StructuralError(f"{prod.name} is not a product category")
    try:
        return prod.factors.ob_pairs[a]
    except KeyError:
        raise StructuralError(f"{prod.name}: unknown object {a}") from None


def split_morphism(prod: FinCat, f: str) -> Tuple[str, str]:
    if prod.factors is None:
        raise StructuralError(f"{prod.name} is not a product category")
    try:
        return prod.factors.mor_pairs[f]
    except KeyError:
        raise StructuralError(f"{prod.name}: unknown morphism {f}") from None


def opposite_category(c: FinCat) -> FinCat:
    name = c.name[: -len("^op")] if c.name.endswith("^op") else f"{c.name}^op"
    return FinCat(
        name=name,
        objects=c.objects,
        morphisms=tuple(Morphism(m.id, m.cod, m.dom) for m in c.morphisms),
        identities=dict(c.identities),
        table={(f, g): gf for (g, f), gf in c.table.items()},
    )


def inverse_of(c: FinCat, f: str) -> Optional[str]:
    m = c.morphism(f)
    for g in c.hom(m.cod, m.dom):
        if c.table.get((g, f)) == c.identity(m.dom) and c.table.get((f, g)) == c.identity(m.cod):
            return g
    return None


# ---------------------------------------------------------------------------
# Functors and natural transformations
# ---------------------------------------------------------------------------


def same_category(a: FinCat, b: FinCat) -> bool:
    return a is b or a == b


@dataclass(frozen=True, eq=False)
class Functor:
    name: str
    source: FinCat
    target: FinCat
    ob_map: Dict[str, str]
    mor_map: Dict[str, str]

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, Functor):
            return NotImplemented
        return (
            self.ob_map == other.ob_map
            and self.mor_map == other.mor_map
            and same_category(self.source, other.source)
            and same_category(self.target, other.target)
        )

    __hash__ = None  # type: ignore[assignment]

    def ob(self, a: str) -> str:
        try:
            return self.ob_map[a]
        except KeyError:
            raise StructuralError(f"functor {self.name}: no image for object {a}") from None

    def mor(self, f: str) -> str:
        try:
            return self.mor_map[f]
        except KeyError:
            raise StructuralError(f"functor {self.name}: no image for morphism {f}") from None


@dataclass(frozen=True, eq=False)
class NatTrans:
    name: str
    source: Functor
    target: Functor
    components: Dict[str, str]

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, NatTrans):
            return NotImplemented
        return (
            self.components == other.components
            and self.source == other.source
            and self.target == other.target
        )

    __hash__ = None  # type: ignore[assignment]

    @property
    def domain(self) -> FinCat:
        return self.source.source

    @property
    def codomain(self) -> FinCat:
        return self.source.target

    def at(self, a: str) -> str:
        try:
            return self.components[a]
        except KeyError:
            raise StructuralError(f"transformation {self.name}: no component at {a}") from None


def check_functor(f: Functor) -> Report:
    src, tgt = f.source, f.target
    for a in src.objects:
        b = f.ob(a)
        if not tgt.has_object(b):
            raise StructuralError(f"functor {f.name}: object {a} maps to unknown {b}")
    for m in src.morphisms:
        fm = f.mor(m.id)
        if not tgt.has_morphism(fm):
            raise StructuralError(f"functor {f.name}: morphism {m.id} maps to unknown {fm}")

    col = LawCollector()
    for m in src.morphisms:
        fm = tgt.morphism(f.mor_map[m.id])
        want = (f.ob_map[m.dom], f.ob_map[m.cod])
        if (fm.dom, fm.cod) != want:
            col.fail("functor-typing", m.id, f"{fm.id}: {fm.dom}->{fm.cod}", f"{want[0]}->{want[1]}")
    for a in src.objects:
        col.equal("functor-identity", a, f.mor_map[src.identity(a)], tgt.identity(f.ob_map[a]))
    for (g, h), gh in src.table.items():
        if src.cod(h) != src.dom(g):
            continue
        rhs = tgt.try_compose(f.mor_map[g], f.mor_map[h])
        col.equal("functor-composition", f"({g}, {h})", f.mor_map[gh], rhs)
    return col.report()


def check_naturality(t: NatTrans, law: str = "naturality") -> Report:
    F, G = t.source, t.target
    if not same_category(F.source, G.source) or not same_category(F.target, G.target):
        raise BoundaryError(f"transformation {t.name}: functors {F.name} and {G.name} are not parallel")
    cat, tgt = F.source, F.target
    col = LawCollector()
    typed = {}
    for a in cat.objects:
        comp = t.at(a)
        ok = tgt.is_typed(comp, F.ob(a), G.ob(a))
        typed[a] = ok
        if not ok:
            col.fail(f"{law}-typing", a, comp, f"{F.ob(a)}->{G.ob(a)}")
    for m in cat.morphisms:
        if not (typed[m.dom] and typed[m.cod]):
            continue
        lhs = tgt.try_compose(G.mor(m.id), t.components[m.dom])
        rhs = tgt.try_compose(t.components[m.cod], F.mor(m.id))
        col.equal(law, m.id, lhs, rhs)
    return col.report()


def identity_functor(c: FinCat) -> Functor:
    cached = c._cache.get("identity")
    if cached is None:
        cached = Functor(
            name=f"1_{c.name}",
            source=c,
            target=c,
            ob_map={a: a for a in c.objects},
            mor_map={m.id: m.id for m in c.morphisms},
        )
        c._cache["identity"] = cached
    return cached  # type: ignore[return-value]


def is_identity_functor(f: Functor) -> bool:
    return (
        same_category(f.source, f.target)
        and all(f.ob_map.get(a) == a for a in f.source.objects)
        and all(f.mor_map.get(m.id) == m.id for m in f.source.morphisms)
    )


def identity_nattrans(f: Functor) -> NatTrans:
    return NatTrans(
        name=f"1_{f.name}",
        source=f,
        target=f,
        components={a: f.target.identity(f.ob(a)) for a in f.source.objects},
    )


def compose_functors(g: Functor, f: Functor) -> Functor:
    """g∘f."""
    if not same_category(f.target, g.source):
        raise BoundaryError(f"cannot compose functor {g.name} after {f.name}")
    return Functor(
        name=f"{g.name}.{f.name}",
        source=f.source,
        target=g.target,
        ob_map={a: g.ob(f.ob(a)) for a in f.source.objects},
        mor_map={m.id: g.mor(f.mor(m.id)) for m in f.source.morphisms},
    )


def whisker_left(f: Functor, t: NatTrans) -> NatTrans:
    """F(t): F∘S ⇒ F∘T."""
    if not same_category(f.source, t.codomain):
        raise BoundaryError(f"cannot apply functor {f.name} to transformation {t.name}")
    return NatTrans(
        name=f"{f.name}({t.name})",
        source=compose_functors(f, t.source),
        target=compose_functors(f, t.target),
        components={a: f.mor(t.at(a)) for a in t.domain.objects},
    )


def whisker_right(t: NatTrans, f: Functor) -> NatTrans:
    """t_F: S∘F ⇒ T∘F."""
    if not same_category(f.target, t.domain):
        raise BoundaryError(f"cannot restrict transformation {t.name} along {f.name}")
    return NatTrans(
        name=f"{t.name}_{f.name}",
        source=compose_functors(t.source, f),
        target=compose_functors(t.target, f),
        components={a: t.at(f.ob(a)) for a in f.source.objects},
    )


def whisker(left: Union[Functor, NatTrans], right: Union[Functor, NatTrans]) -> NatTrans:
    if isinstance(left, Functor) and isinstance(right, NatTrans):
        return whisker_left(left, right)
    if isinstance(left, NatTrans) and isinstance(right, Functor):
        return whisker_right(left, right)
    raise BoundaryError("whisker needs one functor and one transformation")


def vertical_compose(t: NatTrans, s: NatTrans) -> NatTrans:
    """t∘s for s: F ⇒ G and t: G ⇒ H."""
    if s.target != t.source:
        raise BoundaryError(f"cannot compose transformation {t.name} after {s.name}")
    tgt = s.codomain
    return NatTrans(
        name=f"{t.name}.{s.name}",
        source=s.source,
        target=t.target,
        components={a: tgt.compose(t.at(a), s.at(a)) for a in s.domain.objects},
    )


def projection(prod: FinCat, index: int) -> Functor:
    if prod.factors is None:
        raise StructuralError(f"{prod.name} is not a product category")
    factor = prod.factors.left if index == 0 else prod.factors.right
    return Functor(
        name=f"pi{index}",
        source=prod,
        target=factor,
        ob_map={a: pair[index] for a, pair in prod.factors.ob_pairs.items()},
        mor_map={f: pair[index] for f, pair in prod.factors.mor_pairs.items()},
    )


def functor_product(f: Functor, g: Functor) -> Functor:
    src = product_category(f.source, g.source)
    tgt = product_category(f.target, g.target)
    return Functor(
        name=f"{f.name}x{g.name}",
        source=src,
        target=tgt,
        ob_map={a: pair_id(f.ob(x), g.ob(y)) for a, (x, y) in src.factors.ob_pairs.items()},
        mor_map={m: pair_id(f.mor(x), g.mor(y)) for m, (x, y) in src.factors.mor_pairs.items()},
    )


def pairing_functor(f: Functor, g: Functor) -> Functor:
    if not same_category(f.source, g.source):
        raise BoundaryError(f"cannot pair functors {f.name} and {g.name} with different sources")
    tgt = product_category(f.target, g.target)
    return Functor(
        name=f"<{f.name},{g.name}>",
        source=f.source,
        target=tgt,
        ob_map={a: pair_id(f.ob(a), g.ob(a)) for a in f.source.objects},
        mor_map={m.id: pair_id(f.mor(m.id), g.mor(m.id)) for m in f.source.morphisms},
    )


def nattrans_product(s: NatTrans, t: NatTrans) -> NatTrans:
    source = functor_product(s.source, t.source)
    return NatTrans(
        name=f"{s.name}x{t.name}",
        source=source,
        target=functor_product(s.target, t.target),
        components={
            a: pair_id(s.at(x), t.at(y)) for a, (x, y) in source.source.factors.ob_pairs.items()
        },
    )


def nattrans_pairing(s: NatTrans, t: NatTrans) -> NatTrans:
    return NatTrans(
        name=f"<{s.name},{t.name}>",
        source=pairing_functor(s.source, t.source),
        target=pairing_functor(s.target, t.target),
        components={a: pair_id(s.at(a), t.at(a)) for a in s.domain.objects},
    )


def terminal_functor(c: FinCat, terminal: Optional[FinCat] = None) -> Functor:
    one = terminal or terminal_category()
    star, ident = one.objects[0], one.identity(one.objects[0])
    return Functor(
        name=f"!_{c.name}",
        source=c,
        target=one,
        ob_map={a: star for a in c.objects},
        mor_map={m.id: ident for m in c.morphisms},
    )


def object_functor(c: FinCat, obj: str, terminal: Optional[FinCat] = None) -> Functor:
    one = terminal or terminal_category()
    star = one.objects[0]
    return Functor(
        name=f"const_{obj}",
        source=one,
        target=c,
        ob_map={star: obj},
        mor_map={one.identity(star): c.identity(obj)},
    )


def reassociation(c: FinCat, d: FinCat, e: FinCat) -> Functor:
    """C×(D×E) → (C×D)×E."""
    src = product_category(c, product_category(d, e))
    tgt = product_category(product_category(c, d), e)
    ob_map = {
        pair_id(a, pair_id(b, x)): pair_id(pair_id(a, b), x)
        for a in c.objects
        for b in d.objects
        for x in e.objects
    }
    mor_map = {
        pair_id(f.id, pair_id(g.id, h.id)): pair_id(pair_id(f.id, g.id), h.id)
        for f in c.morphisms
        for g in d.morphisms
        for h in e.morphisms
    }
    return Functor(name="assoc", source=src, target=tgt, ob_map=ob_map, mor_map=mor_map)


def opposite_functor(f: Functor) -> Functor:
    return Functor(
        name=f"{f.name}^op",
        source=opposite_category(f.source),
        target=opposite_category(f.target),
        ob_map=dict(f.ob_map),
        mor_map=dict(f.mor_map),
    )


def opposite_nattrans(t: NatTrans) -> NatTrans:
    """t: F ⇒ G becomes t^op: G^op ⇒ F^op with the same components."""
    return NatTrans(
        name=f"{t.name}^op",
        source=opposite_functor(t.target),
        target=opposite_functor(t.source),
        components=dict(t.components),
    )


def enumerate_functors(c: FinCat, d: FinCat) -> Iterator[Functor]:
    """Brute force over object maps and hom-wise morphism choices; tiny categories only."""
    for n, images in enumerate(itertools.product(d.objects, repeat=len(c.objects))):
        ob_map = dict(zip(c.objects, images))
        choices = [d.hom(ob_map[m.dom], ob_map[m.cod]) for m in c.morphisms]
        if any(not ch for ch in choices):
            continue
        for k, picks in enumerate(itertools.product(*choices)):
            cand = Functor(
                name=f"F{n}_{k}",
                source=c,
                target=d,
                ob_map=ob_map,
                mor_map={m.id: p for m, p in zip(c.morphisms, picks)},
            )
            if not check_functor(cand):
                yield cand


def _hom_profile_graph(c: FinCat) -> nx.DiGraph:
    g = nx.DiGraph()
    for a in c.objects:
        g.add_node(a, loops=len(c.hom(a, a)))
    for a in c.objects:
        for b in c.objects:
            n = len(c.hom(a, b))
            if a != b and n:
                g.add_edge(a, b, count=n)
    return g


def _match_morphisms(c: FinCat, d: FinCat, ob_map: Dict[str, str]) -> Optional[Dict[str, str]]:
    homs = [(a, b) for a in c.objects for b in c.objects if c.hom(a, b)]
    triples = [(g, f, gf) for (g, f), gf in c.table.items()]
    assign: Dict[str, str] = {}

    def consistent(fresh: set) -> bool:
        for g, f, gf in triples:
            if g in assign and f in assign and gf in assign and (g in fresh or f in fresh or gf in fresh):
                if d.table.get((assign[g], assign[f])) != assign[gf]:
                    return False
        return True

    def search(i: int) -> bool:
        if i == len(homs):
            return True
        a, b = homs[i]
        src = c.hom(a, b)
        dst = d.hom(ob_map[a], ob_map[b])
        if len(src) != len(dst):
            return False
        for perm in itertools.permutations(dst):
            trial = dict(zip(src, perm))
            if a == b and trial[c.identity(a)] != d.identity(ob_map[a]):
                continue
            assign.update(trial)
            if consistent(set(src)) and search(i + 1):
                return True
        for f in src:
            assign.pop(f, None)
        return False

    return dict(assign) if search(0) else None


def find_isomorphism(c: FinCat, d: FinCat, max_objects: int = 8) -> Optional[Tuple[Functor, Functor]]:
    """
    Exhaustive search for mutually inverse functors c ⇄ d.

    Object bijections come from networkx's DiGraphMatcher over hom-set cardinality profiles;
    morphisms are then matched hom-set by hom-set with composition pruning.
    Returns None when no isomorphism exists.
    """
    if len(c.objects) != len(d.objects) or len(c.morphisms) != len(d.morphisms):
        return None
    if len(c.objects) > max_objects:
        raise SearchAborted(
            f"isomorphism search aborted: {len(c.objects)} objects exceeds cap {max_objects}"
        )
    matcher = isomorphism.DiGraphMatcher(
        _hom_profile_graph(c),
        _hom_profile_graph(d),
        node_match=lambda x, y: x["loops"] == y["loops"],
        edge_match=lambda x, y: x["count"] == y["count"],
    )
    for ob_map in matcher.isomorphisms_iter():
        mor_map = _match_morphisms(c, d, ob_map)
        if mor_map is None:
            continue
        forward = Functor(name=f"iso_{c.name}_{d.name}", source=c, target=d, ob_map=dict(ob_map), mor_map=mor_map)
        backward = Functor(
            name=f"iso_{d.name}_{c.name}",
            source=d,
            target=c,
            ob_map={v: k for k, v in ob_map.items()},
            mor_map={v: k for k, v in mor_map.items()},
        )
        return forward, backward
    return None
