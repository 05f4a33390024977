from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Set, Tuple

import yaml

from catkit.core.errors import ConfigError, FormatError, MissingEntity, StructuralError
from catkit.core.fincat import FinCat, chain_category, cyclic_group_category
from catkit.core.monad import Monad, central_monad, closure_monad, identity_monad
from catkit.core.monmonad import MonoidalMonadTuple, identity_tuple, product_tuple, thin_tuple, with_kind
from catkit.core.monoidal import Braiding, MonoidalStructure, identity_braiding, max_monoidal, monoid_monoidal
from catkit.core.store import Workspace

logger = logging.getLogger(__name__)

GROUPS = ("chains", "monoids", "closures", "monoidal", "tuples", "products", "braidings")

DEFAULT_CORPUS = Path(__file__).resolve().parent.parent / "corpus.yaml"


@dataclass
class Corpus:
    workspace: Workspace
    invalid: Set[Tuple[str, str]] = field(default_factory=set)

    def expects_valid(self, kind: str, name: str) -> bool:
        return (kind, name) not in self.invalid


def _read_corpus_file(path: Path) -> Dict[str, List[Any]]:
    try:
        data = yaml.safe_load(path.read_text(encoding="utf-8")) or {}
    except FileNotFoundError as e:
        raise ConfigError(f"Corpus file not found: {path}") from e
    except yaml.YAMLError as e:
        mark = getattr(e, "problem_mark", None)
        line, column = (mark.line + 1, mark.column + 1) if mark is not None else (0, 0)
        problem = getattr(e, "problem", None) or e
        raise FormatError(f"invalid corpus YAML ({problem})", str(path), line, column) from e
    except OSError as e:
        raise FormatError(f"cannot read corpus file ({e})", str(path)) from e
    if not isinstance(data, dict):
        raise FormatError("corpus file must be a mapping of groups", str(path))
    logger.info("Loaded corpus file: %s", path)
    out: Dict[str, List[Any]] = {}
    for key, value in data.items():
        if isinstance(value, list):
            out[str(key)] = value
    return out


def _named(c: FinCat, name: str) -> FinCat:
    return c if c.name == name else replace(c, name=name, _cache={})


class _Builder:
    """Builds entries by name, pulling referenced entries from any group."""

    def __init__(self, data: Dict[str, List[Any]]) -> None:
        self.data = data
        self.ws = Workspace()
        self.invalid: Set[Tuple[str, str]] = set()
        self._entries: Dict[str, Dict[str, dict]] = {}
        for group in ("monoids", "closures", "monoidal", "tuples", "products", "braidings"):
            self._entries[group] = {str(e["name"]): e for e in data.get(group, []) if isinstance(e, dict)}
        self._central: Dict[str, Tuple[str, dict]] = {}
        for e in self._entries["monoids"].values():
            for m in e.get("monads", []) or []:
                self._central[str(m["name"])] = (str(e["name"]), m)

    def _keep(self, registry, name: str, make: Callable[[], Any]) -> Any:
        found = registry.find(name)
        if found is not None:
            return found
        return registry.add(name, make())

    # categories

    def category(self, name: str) -> FinCat:
        if name.startswith("chain") and name[len("chain") :].isdigit():
            return self._keep(self.ws.categories, name, lambda: chain_category(int(name[len("chain") :])))
        entry = self._entries["monoids"].get(name)
        if entry is None:
            raise MissingEntity("category", name)
        return self._keep(self.ws.categories, name, lambda: _named(cyclic_group_category(int(entry["order"])), name))

    # monads

    def monad(self, name: str, base: Optional[FinCat] = None) -> Monad:
        if name == "identity":
            if base is None:
                raise StructuralError("identity monad needs a base category")
            return self._keep(self.ws.monads, f"id_{base.name}", lambda: identity_monad(base))
        if name in self._entries["closures"]:
            e = self._entries["closures"][name]
            c = self.category(f"chain{int(e['chain'])}")
            return self._keep(self.ws.monads, name, lambda: closure_monad(c, [str(x) for x in e["fixed"]], name=name))
        if name in self._central:
            monoid, e = self._central[name]
            c = self.category(monoid)
            return self._keep(self.ws.monads, name, lambda: central_monad(c, str(e["unit"]), str(e["mult"]), name=name))
        raise MissingEntity("monad", name)

    # monoidal structures

    def monoidal(self, name: str) -> MonoidalStructure:
        e = self._entries["monoidal"].get(name)
        if e is None:
            raise MissingEntity("monoidal", name)
        if "max" in e:
            c = self.category(str(e["max"]))
            return self._keep(self.ws.monoidal, name, lambda: max_monoidal(c, e.get("unit"), name=name))
        if "monoid" in e:
            c = self.category(str(e["monoid"]))
            return self._keep(self.ws.monoidal, name, lambda: monoid_monoidal(c, name=name))
        raise StructuralError(f"corpus monoidal entry {name} names no construction")

    # tuples

    def tuple(self, name: str) -> MonoidalMonadTuple:
        found = self.ws.tuples.find(name)
        if found is not None:
            return found
        e = self._entries["tuples"].get(name) or self._entries["products"].get(name)
        if e is None:
            raise MissingEntity("tuple", name)
        if "left" in e:
            t = self._product(name, e)
        elif "from" in e:
            t = with_kind(self.tuple(str(e["from"])), str(e["kind"]), name=name)
        else:
            ms = self.monoidal(str(e["monoidal"]))
            m = self.monad(str(e["monad"]), base=ms.base)
            kind = str(e.get("kind", "lax"))
            if str(e["monad"]) == "identity":
                t = identity_tuple(ms, kind=kind, name=name)
            elif "phi" in e:
                c = ms.base
                t = MonoidalMonadTuple(
                    name=name,
                    monoidal=ms,
                    monad=m,
                    phi={(a, b): str(e["phi"]) for a in c.objects for b in c.objects},
                    phi_unit=str(e["phi_unit"]),
                    kind=kind,
                )
            else:
                t = thin_tuple(name, ms, m, kind=kind)
        if e.get("expect") == "invalid":
            self.invalid.add(("tuples", name))
        return self.ws.tuples.add(name, t)

    def _product(self, name: str, e: dict) -> MonoidalMonadTuple:
        t = product_tuple(self.tuple(str(e["left"])), self.tuple(str(e["right"])))
        self._keep(self.ws.categories, t.base.name, lambda: t.base)
        self._keep(self.ws.monoidal, t.monoidal.name, lambda: t.monoidal)
        self._keep(self.ws.monads, t.monad.name, lambda: t.monad)
        return replace(t, name=name)

    # braidings

    def braiding(self, name: str) -> Braiding:
        e = self._entries["braidings"].get(name)
        if e is None:
            raise MissingEntity("braiding", name)
        ms = self.monoidal(str(e["monoidal"]))
        symmetric = bool(e.get("symmetric", True))
        if "cell" in e:
            c = ms.base
            cell = str(e["cell"])
            b = Braiding(
                name=name,
                monoidal=ms,
                components={(x, y): cell for x in c.objects for y in c.objects},
                symmetric=symmetric,
            )
        else:
            b = identity_braiding(ms, name=name, symmetric=symmetric)
        if e.get("expect") == "invalid":
            self.invalid.add(("braidings", name))
        return self._keep(self.ws.braidings, name, lambda: b)

    def _monoid(self, name: str) -> FinCat:
        c = self.category(name)
        for m in self._entries["monoids"][name].get("monads", []) or []:
            self.monad(str(m["name"]))
        return c

    def build_group(self, group: str, limit: Optional[int]) -> None:
        if group == "chains":
            names = [f"chain{int(n)}" for n in self.data.get("chains", [])]
            build: Callable[[str], Any] = self.category
        elif group == "monoids":
            names = list(self._entries["monoids"])
            build = self._monoid
        elif group == "closures":
            names = list(self._entries["closures"])
            build = self.monad
        elif group == "monoidal":
            names = list(self._entries["monoidal"])
            build = self.monoidal
        elif group in ("tuples", "products"):
            names = list(self._entries[group])
            build = self.tuple
        elif group == "braidings":
            names = list(self._entries["braidings"])
            build = self.braiding
        else:
            raise ConfigError(f"Unknown corpus group: {group} (choose from {', '.join(GROUPS)})")
        if limit is not None and limit > 0:
            names = names[:limit]
        for n in names:
            build(n)


def build_corpus(
    groups: Optional[List[str]] = None,
    limit: Optional[int] = None,
    corpus_file: Optional[str] = None,
) -> Corpus:
    """
    Builds the example corpus into a fresh Workspace.

    `groups` selects corpus groups (default all); `limit` caps the entries taken from each group.
    """
    if corpus_file:
        data = _read_corpus_file(Path(corpus_file))
    elif DEFAULT_CORPUS.exists():
        data = _read_corpus_file(DEFAULT_CORPUS)
    else:
        logger.warning("No corpus file found at %s", DEFAULT_CORPUS)
        data = {}

    builder = _Builder(data)
    selected = [g.strip().lower() for g in groups if g.strip()] if groups else list(GROUPS)
    for group in selected:
        builder.build_group(group, limit)
    logger.info("Built corpus: %s", ", ".join(f"{k}={v}" for k, v in builder.ws.counts().items() if v))
    return Corpus(workspace=builder.ws, invalid=builder.invalid)
