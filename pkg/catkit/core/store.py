from __future__ import annotations

import threading
from typing import Dict, Generic, List, Optional, Tuple, TypeVar

from catkit.core.errors import DuplicateName, MissingEntity
from catkit.core.fincat import FinCat, Functor, NatTrans
from catkit.core.monad import Monad
from catkit.core.monmonad import MonoidalMonadTuple
from catkit.core.monoidal import Braiding, MonoidalStructure

T = TypeVar("T")

KINDS = ("categories", "functors", "nattrans", "monads", "monoidal", "tuples", "braidings")


class Registry(Generic[T]):
    """Thread-safe name -> entity map for one kind; names are unique."""

    def __init__(self, kind: str) -> None:
        self.kind = kind
        self._lock = threading.Lock()
        self._items: Dict[str, T] = {}

    def add(self, name: str, item: T) -> T:
        with self._lock:
            if name in self._items:
                raise DuplicateName(self.kind, name)
            self._items[name] = item
            return item

    def get(self, name: str) -> T:
        with self._lock:
            try:
                return self._items[name]
            except KeyError:
                raise MissingEntity(self.kind, name) from None

    def find(self, name: str) -> Optional[T]:
        with self._lock:
            return self._items.get(name)

    def __contains__(self, name: object) -> bool:
        with self._lock:
            return name in self._items

    def names(self) -> List[str]:
        with self._lock:
            return sorted(self._items)

    def items(self) -> List[Tuple[str, T]]:
        with self._lock:
            return sorted(self._items.items())

    def size(self) -> int:
        with self._lock:
            return len(self._items)


class Workspace:
    """Named registry of every entity kind loaded from one or more files."""

    def __init__(self) -> None:
        self.categories: Registry[FinCat] = Registry("category")
        self.functors: Registry[Functor] = Registry("functor")
        self.nattrans: Registry[NatTrans] = Registry("nattrans")
        self.monads: Registry[Monad] = Registry("monad")
        self.monoidal: Registry[MonoidalStructure] = Registry("monoidal")
        self.tuples: Registry[MonoidalMonadTuple] = Registry("tuple")
        self.braidings: Registry[Braiding] = Registry("braiding")

    def registry(self, kind: str) -> Registry:
        if kind not in KINDS:
            raise KeyError(kind)
        return getattr(self, kind)

    def counts(self) -> Dict[str, int]:
        return {kind: self.registry(kind).size() for kind in KINDS}

    def is_empty(self) -> bool:
        return not any(self.counts().values())
