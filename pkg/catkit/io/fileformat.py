"""
catkit-ff/1: the on-disk format for workspaces.

A file is one JSON object with optional top-level arrays `categories`, `functors`,
`nattrans`, `monads`, `monoidal`, `tuples` and `braidings`. Every record has a `name`;
references between records are by name and may cross files loaded together.
Serialization sorts keys and arrays, so save(load(f)) reproduces a canonical file byte for byte.

Cell components (transformation components, coherence cells, φ, braidings) may name
morphisms that do not exist; the law checkers report those as typing violations.
Everything else must resolve at load time.
"""

from __future__ import annotations

import json
import logging
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple, Union

from catkit.core.errors import DuplicateName, FormatError, StructuralError
from catkit.core.fincat import FinCat, Functor, Morphism, NatTrans, product_category, validate_structure
from catkit.core.monad import Monad, monad_from_cells
from catkit.core.monmonad import KINDS, MonoidalMonadTuple
from catkit.core.monoidal import Braiding, MonoidalStructure
from catkit.core.store import KINDS as SECTIONS
from catkit.core.store import Workspace
from catkit.io.utils import write_text

logger = logging.getLogger(__name__)

FORMAT_VERSION = "catkit-ff/1"

Entity = Union[FinCat, Functor, NatTrans, Monad, MonoidalStructure, MonoidalMonadTuple, Braiding]


# ---------------------------------------------------------------------------
# Encoding
# ---------------------------------------------------------------------------


def _maps(f: Functor) -> dict:
    return {"name": f.name, "ob_map": dict(f.ob_map), "mor_map": dict(f.mor_map)}


def _records(cells: Dict[Tuple[str, ...], str]) -> List[dict]:
    rows = [{"objects": list(k), "cell": v} for k, v in cells.items()]
    return sorted(rows, key=lambda r: (r["objects"], r["cell"]))


def encode_category(c: FinCat) -> dict:
    return {
        "name": c.name,
        "objects": sorted(c.objects),
        "morphisms": sorted(({"id": m.id, "dom": m.dom, "cod": m.cod} for m in c.morphisms), key=lambda r: r["id"]),
        "identities": dict(c.identities),
        "composition": sorted([g, f, gf] for (g, f), gf in c.table.items()),
    }


def encode_functor(f: Functor) -> dict:
    out = _maps(f)
    out.update(source=f.source.name, target=f.target.name)
    return out


def encode_nattrans(t: NatTrans) -> dict:
    return {"name": t.name, "source": t.source.name, "target": t.target.name, "components": dict(t.components)}


def encode_monad(m: Monad) -> dict:
    return {
        "name": m.name,
        "category": m.base.name,
        "endo": _maps(m.endo),
        "unit": dict(m.unit.components),
        "mult": dict(m.mult.components),
    }


def encode_monoidal(ms: MonoidalStructure) -> dict:
    return {
        "name": ms.name,
        "category": ms.base.name,
        "tensor": _maps(ms.tensor),
        "unit_object": ms.unit_object,
        "assoc": _records(ms.assoc),
        "left_unitor": dict(ms.left_unitor),
        "right_unitor": dict(ms.right_unitor),
    }


def encode_tuple(t: MonoidalMonadTuple) -> dict:
    return {
        "name": t.name,
        "monoidal": t.monoidal.name,
        "monad": t.monad.name,
        "kind": t.kind,
        "phi": _records(t.phi),
        "phi_unit": t.phi_unit,
    }


def encode_braiding(b: Braiding) -> dict:
    return {
        "name": b.name,
        "monoidal": b.monoidal.name,
        "symmetric": bool(b.symmetric),
        "components": _records(b.components),
    }


_ENCODERS = {
    "categories": encode_category,
    "functors": encode_functor,
    "nattrans": encode_nattrans,
    "monads": encode_monad,
    "monoidal": encode_monoidal,
    "tuples": encode_tuple,
    "braidings": encode_braiding,
}


def dumps(ws: Workspace) -> str:
    doc: Dict[str, Any] = {"format": FORMAT_VERSION}
    for section in SECTIONS:
        items = ws.registry(section).items()
        if items:
            doc[section] = [_ENCODERS[section](item) for _, item in items]
    return json.dumps(doc, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


# ---------------------------------------------------------------------------
# Collecting an entity with its dependencies
# ---------------------------------------------------------------------------


def _put(ws: Workspace, section: str, name: str, item: Any) -> None:
    reg = ws.registry(section)
    found = reg.find(name)
    if found is None:
        reg.add(name, item)
    elif found is not item and not (found == item):
        raise DuplicateName(reg.kind, name)


def collect(entities: Iterable[Entity], ws: Optional[Workspace] = None) -> Workspace:
    """A workspace holding `entities` and everything they reference by name."""
    ws = ws or Workspace()
    for e in entities:
        if isinstance(e, FinCat):
            _put(ws, "categories", e.name, e)
        elif isinstance(e, Functor):
            collect([e.source, e.target], ws)
            _put(ws, "functors", e.name, e)
        elif isinstance(e, NatTrans):
            collect([e.source, e.target], ws)
            _put(ws, "nattrans", e.name, e)
        elif isinstance(e, Monad):
            collect([e.base], ws)
            _put(ws, "monads", e.name, e)
        elif isinstance(e, MonoidalStructure):
            collect([e.base], ws)
            _put(ws, "monoidal", e.name, e)
        elif isinstance(e, MonoidalMonadTuple):
            collect([e.monoidal, e.monad], ws)
            _put(ws, "tuples", e.name, e)
        elif isinstance(e, Braiding):
            collect([e.monoidal], ws)
            _put(ws, "braidings", e.name, e)
        else:
            raise TypeError(f"cannot serialize {type(e).__name__}")
    return ws


def save(entity: Union[Workspace, Entity, Sequence[Entity]], path: str) -> None:
    if isinstance(entity, Workspace):
        ws = entity
    elif isinstance(entity, (list, tuple)):
        ws = collect(entity)
    else:
        ws = collect([entity])
    write_text(dumps(ws), path)
    logger.info("Wrote %s: %s", path, ", ".join(f"{k}={v}" for k, v in ws.counts().items() if v))


# ---------------------------------------------------------------------------
# Decoding
# ---------------------------------------------------------------------------


class _Source:
    """Records of one section with the file each came from."""

    def __init__(self) -> None:
        self.records: Dict[str, List[Tuple[dict, str]]] = {s: [] for s in SECTIONS}

    def add_document(self, doc: Any, path: str) -> None:
        if not isinstance(doc, dict):
            raise FormatError("top level must be an object", path)
        version = doc.get("format", FORMAT_VERSION)
        if version != FORMAT_VERSION:
            raise FormatError(f"unsupported format {version!r}, expected {FORMAT_VERSION}", path)
        for key, value in doc.items():
            if key == "format":
                continue
            if key not in self.records:
                raise FormatError(f"unknown section {key!r}", path)
            if not isinstance(value, list):
                raise FormatError(f"section {key!r} must be an array", path)
            for rec in value:
                if not isinstance(rec, dict) or not isinstance(rec.get("name"), str):
                    raise FormatError(f"record in {key!r} without a string name", path)
                self.records[key].append((rec, path))


def _field(rec: dict, key: str, path: str, kind: type = str) -> Any:
    if key not in rec:
        raise FormatError(f"{rec['name']}: missing field {key!r}", path)
    value = rec[key]
    if not isinstance(value, kind):
        raise FormatError(f"{rec['name']}: field {key!r} must be {kind.__name__}", path)
    return value


def _str_map(rec: dict, key: str, path: str) -> Dict[str, str]:
    value = _field(rec, key, path, dict)
    if not all(isinstance(k, str) and isinstance(v, str) for k, v in value.items()):
        raise FormatError(f"{rec['name']}: {key!r} must map strings to strings", path)
    return dict(value)


def _cell_records(rec: dict, key: str, path: str, arity: int) -> Dict[Tuple[str, ...], str]:
    out: Dict[Tuple[str, ...], str] = {}
    for row in _field(rec, key, path, list):
        objs = row.get("objects") if isinstance(row, dict) else None
        cell = row.get("cell") if isinstance(row, dict) else None
        if not (isinstance(objs, list) and len(objs) == arity and all(isinstance(o, str) for o in objs)):
            raise FormatError(f"{rec['name']}: {key!r} rows need {arity} objects", path)
        if not isinstance(cell, str):
            raise FormatError(f"{rec['name']}: {key!r} rows need a string cell", path)
        if tuple(objs) in out:
            raise FormatError(f"{rec['name']}: {key!r} repeats {objs}", path)
        out[tuple(objs)] = cell
    return out


def _check_keys(keys: Iterable[Tuple[str, ...]], c: FinCat, rec: dict, key: str, path: str) -> None:
    for k in keys:
        for a in k:
            if not c.has_object(a):
                raise FormatError(f"{rec['name']}: {key!r} names unknown object {a} of {c.name}", path)


def _decode_category(rec: dict, path: str) -> FinCat:
    objects = _field(rec, "objects", path, list)
    morphisms = []
    for m in _field(rec, "morphisms", path, list):
        if not (isinstance(m, dict) and all(isinstance(m.get(k), str) for k in ("id", "dom", "cod"))):
            raise FormatError(f"{rec['name']}: morphisms need string id, dom and cod", path)
        morphisms.append(Morphism(m["id"], m["dom"], m["cod"]))
    table: Dict[Tuple[str, str], str] = {}
    for row in _field(rec, "composition", path, list):
        if not (isinstance(row, list) and len(row) == 3 and all(isinstance(x, str) for x in row)):
            raise FormatError(f"{rec['name']}: composition rows are [g, f, gf] string triples", path)
        g, f, gf = row
        if (g, f) in table and table[(g, f)] != gf:
            raise FormatError(f"{rec['name']}: composite ({g}, {f}) given twice", path)
        table[(g, f)] = gf
    c = FinCat(
        name=rec["name"],
        objects=tuple(str(a) for a in objects),
        morphisms=tuple(morphisms),
        identities=_str_map(rec, "identities", path),
        table=table,
    )
    try:
        validate_structure(c)
    except StructuralError as e:
        raise FormatError(str(e), path) from None
    return c


def _maps_functor(name: str, source: FinCat, target: FinCat, body: dict, owner: str, path: str) -> Functor:
    ob_map = _str_map(body, "ob_map", path)
    mor_map = _str_map(body, "mor_map", path)
    for a in source.objects:
        if a not in ob_map:
            raise FormatError(f"{owner}: functor {name} has no image for object {a}", path)
        if not target.has_object(ob_map[a]):
            raise FormatError(f"{owner}: functor {name} sends {a} to unknown object {ob_map[a]}", path)
    for m in source.morphisms:
        if m.id not in mor_map:
            raise FormatError(f"{owner}: functor {name} has no image for morphism {m.id}", path)
        if not target.has_morphism(mor_map[m.id]):
            raise FormatError(f"{owner}: functor {name} sends {m.id} to unknown morphism {mor_map[m.id]}", path)
    extra = (set(ob_map) - set(source.objects)) | (set(mor_map) - {m.id for m in source.morphisms})
    if extra:
        raise FormatError(f"{owner}: functor {name} maps unknown ids {sorted(extra)}", path)
    return Functor(name=name, source=source, target=target, ob_map=ob_map, mor_map=mor_map)


def _inline(rec: dict, key: str, path: str) -> dict:
    body = _field(rec, key, path, dict)
    if not isinstance(body.get("name"), str):
        raise FormatError(f"{rec['name']}: {key!r} needs a string name", path)
    return body


def load_documents(docs: Sequence[Tuple[Any, str]]) -> Workspace:
    """Builds a workspace from already-parsed documents, each paired with its path."""
    src = _Source()
    for doc, path in docs:
        src.add_document(doc, path)
    ws = Workspace()

    for rec, path in src.records["categories"]:
        ws.categories.add(rec["name"], _decode_category(rec, path))

    def category(rec: dict, key: str, path: str) -> FinCat:
        return ws.categories.get(_field(rec, key, path))

    for rec, path in src.records["functors"]:
        f = _maps_functor(
            rec["name"], category(rec, "source", path), category(rec, "target", path), rec, rec["name"], path
        )
        ws.functors.add(f.name, f)

    for rec, path in src.records["nattrans"]:
        s, t = ws.functors.get(_field(rec, "source", path)), ws.functors.get(_field(rec, "target", path))
        comps = _str_map(rec, "components", path)
        _check_keys(((a,) for a in comps), s.source, rec, "components", path)
        ws.nattrans.add(rec["name"], NatTrans(name=rec["name"], source=s, target=t, components=comps))

    for rec, path in src.records["monads"]:
        c = category(rec, "category", path)
        endo = _maps_functor(_inline(rec, "endo", path)["name"], c, c, rec["endo"], rec["name"], path)
        unit, mult = _str_map(rec, "unit", path), _str_map(rec, "mult", path)
        _check_keys(((a,) for a in list(unit) + list(mult)), c, rec, "unit", path)
        ws.monads.add(rec["name"], monad_from_cells(rec["name"], c, endo, unit, mult))

    for rec, path in src.records["monoidal"]:
        c = category(rec, "category", path)
        body = _inline(rec, "tensor", path)
        tensor = _maps_functor(body["name"], product_category(c, c), c, body, rec["name"], path)
        assoc = _cell_records(rec, "assoc", path, 3)
        left, right = _str_map(rec, "left_unitor", path), _str_map(rec, "right_unitor", path)
        _check_keys(assoc, c, rec, "assoc", path)
        _check_keys(((a,) for a in list(left) + list(right)), c, rec, "unitors", path)
        unit_object = _field(rec, "unit_object", path)
        if not c.has_object(unit_object):
            raise FormatError(f"{rec['name']}: unknown unit object {unit_object}", path)
        ms = MonoidalStructure(
            name=rec["name"],
            base=c,
            tensor=tensor,
            unit_object=unit_object,
            assoc=assoc,  # type: ignore[arg-type]
            left_unitor=left,
            right_unitor=right,
        )
        ws.monoidal.add(ms.name, ms)

    for rec, path in src.records["tuples"]:
        ms = ws.monoidal.get(_field(rec, "monoidal", path))
        m = ws.monads.get(_field(rec, "monad", path))
        kind = _field(rec, "kind", path)
        if kind not in KINDS:
            raise FormatError(f"{rec['name']}: kind must be one of {', '.join(KINDS)}", path)
        phi = _cell_records(rec, "phi", path, 2)
        _check_keys(phi, ms.base, rec, "phi", path)
        t = MonoidalMonadTuple(
            name=rec["name"],
            monoidal=ms,
            monad=m,
            phi=phi,  # type: ignore[arg-type]
            phi_unit=_field(rec, "phi_unit", path),
            kind=kind,
        )
        ws.tuples.add(t.name, t)

    for rec, path in src.records["braidings"]:
        ms = ws.monoidal.get(_field(rec, "monoidal", path))
        comps = _cell_records(rec, "components", path, 2)
        _check_keys(comps, ms.base, rec, "components", path)
        b = Braiding(
            name=rec["name"],
            monoidal=ms,
            components=comps,  # type: ignore[arg-type]
            symmetric=bool(rec.get("symmetric", False)),
        )
        ws.braidings.add(b.name, b)

    logger.debug("loaded workspace: %s", ws.counts())
    return ws


def loads(text: str, path: str = "") -> Workspace:
    return load_documents([(_parse(text, path), path)])


def _parse(text: str, path: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(e.msg, path, e.lineno, e.colno) from None


def load(paths: Union[str, Sequence[str]]) -> Workspace:
    """Loads one or more catkit-ff/1 files into a single workspace; names are unique across files."""
    if isinstance(paths, str):
        paths = [paths]
    docs = []
    for p in paths:
        try:
            with open(p, "r", encoding="utf-8") as f:
                text = f.read()
        except OSError as e:
            raise FormatError(f"cannot read file ({e.strerror})", p) from None
        docs.append((_parse(text, p), p))
    ws = load_documents(docs)
    logger.info("Loaded %s file(s): %s", len(docs), ", ".join(f"{k}={v}" for k, v in ws.counts().items() if v))
    return ws

