"""Exhaustive machinery for small matrix groups: BFS enumeration,
conjugacy search between subgroups, and fixed spaces."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import linalg as la
from .chevalley import GroupWord, RepElement
from .gf import Field


class GroupTooLarge(RuntimeError):
    pass


def _keys(batch: np.ndarray) -> list[bytes]:
    b = batch.astype(np.uint8)
    return [row.tobytes() for row in b]


class ElementStore:
    """All elements of a finite matrix group, with inverses and BFS words."""

    def __init__(self, field: Field, dim: int, gens: Sequence[RepElement]):
        self.field = field
        self.dim = dim
        self.gens = list(gens)
        self.index: dict[bytes, int] = {}
        self.mats = np.zeros((0, dim, dim, field.n), dtype=np.int64)
        self.invs = self.mats.copy()
        self.parent: list[int] = []
        self.via: list[int] = []

    def __len__(self) -> int:
        return len(self.index)

    @property
    def order(self) -> int:
        return len(self.index)

    def __contains__(self, g: RepElement) -> bool:
        return g.key() in self.index

    def keys(self) -> set[bytes]:
        return set(self.index)

    def element(self, i: int) -> RepElement:
        return RepElement(self.field, self.mats[i].copy())

    def inverse(self, i: int) -> RepElement:
        return RepElement(self.field, self.invs[i].copy())

    def generator_path(self, i: int) -> list[int]:
        """Generator indices whose product (left to right) is element i."""
        path = []
        while self.parent[i] >= 0:
            path.append(self.via[i])
            i = self.parent[i]
        return path[::-1]

    def word(self, i: int) -> GroupWord | None:
        out = GroupWord()
        for gi in self.generator_path(i):
            w = self.gens[gi].word
            if w is None:
                return None
            out = out * w
        return out

    @staticmethod
    def encode(g: RepElement) -> bytes:
        return g.key()

    def decode(self, data: bytes) -> RepElement:
        return RepElement(self.field, la.from_key(self.field, data, self.dim))

    def elements(self):
        for i in range(len(self)):
            yield self.element(i)


def enumerate_group(gens: Sequence[RepElement], cap: int = 200_000) -> ElementStore:
    """Breadth-first closure of ``gens``; GroupTooLarge once more than ``cap`` elements appear."""
    if not gens:
        raise ValueError("need at least one generator")
    field = gens[0].field
    dim = gens[0].m.shape[0]
    store = ElementStore(field, dim, gens)
    gm = [g.m for g in gens]
    gi = [g.inv().m for g in gens]

    ident = la.identity(field, dim)[None]
    mats, invs = [ident], [ident]
    store.index[_keys(ident)[0]] = 0
    store.parent.append(-1)
    store.via.append(-1)
    frontier, frontier_inv, frontier_idx = ident, ident, [0]
    while len(frontier):
        new_m, new_i, new_idx = [], [], []
        for k, (g, ginv) in enumerate(zip(gm, gi)):
            prod = la.matmul(field, frontier, g[None])
            pinv = la.matmul(field, ginv[None], frontier_inv)
            for j, key in enumerate(_keys(prod)):
                if key in store.index:
                    continue
                new_idx.append(len(store.index))
                store.index[key] = len(store.index)
                store.parent.append(frontier_idx[j])
                store.via.append(k)
                new_m.append(prod[j])
                new_i.append(pinv[j])
                if len(store.index) > cap:
                    raise GroupTooLarge(f"group larger than cap={cap}")
        if not new_m:
            break
        frontier, frontier_inv, frontier_idx = np.stack(new_m), np.stack(new_i), new_idx
        mats.append(frontier)
        invs.append(frontier_inv)
    store.mats = np.concatenate(mats)
    store.invs = np.concatenate(invs)
    return store


def group_order(gens: Sequence[RepElement], cap: int = 200_000) -> int:
    return enumerate_group(gens, cap).order


@dataclass
class ConjugacyResult:
    found: bool
    element: RepElement | None
    index: int | None
    word: GroupWord | None
    orders: tuple[int, int]
    checked: int

    def describe(self) -> str:
        if not self.found:
            return f"none (orders {self.orders}, {self.checked} ambient elements exhausted)"
        return f"conjugator found: {self.word!r}" if self.word is not None else "conjugator found"


def conjugacy_search(h1: Sequence[RepElement], h2: Sequence[RepElement],
                     ambient: ElementStore, cap: int = 50_000) -> ConjugacyResult:
    """Find g in ``ambient`` with g <h1> g^-1 = <h2>, or certify that none exists."""
    s1 = enumerate_group(h1, cap)
    s2 = enumerate_group(h2, cap)
    orders = (s1.order, s2.order)
    if s1.order != s2.order:
        return ConjugacyResult(False, None, None, None, orders, 0)
    targets = s2.keys()
    field = ambient.field
    alive = np.ones(len(ambient), dtype=bool)
    for g in h1:
        idx = np.nonzero(alive)[0]
        if not len(idx):
            break
        conj = la.matmul(field, la.matmul(field, ambient.mats[idx], g.m[None]), ambient.invs[idx])
        hits = np.array([k in targets for k in _keys(conj)], dtype=bool)
        alive[idx[~hits]] = False
    idx = np.nonzero(alive)[0]
    if not len(idx):
        return ConjugacyResult(False, None, None, None, orders, len(ambient))
    i = int(idx[0])
    return ConjugacyResult(True, ambient.element(i), i, ambient.word(i), orders, i + 1)


def fixed_space(gens: Sequence[RepElement]) -> np.ndarray:
    """Basis (rows) of the vectors fixed by every generator."""
    if not gens:
        raise ValueError("need at least one generator")
    field = gens[0].field
    dim = gens[0].m.shape[0]
    ident = la.identity(field, dim)
    stacked = np.concatenate([la.sub(field, g.m, ident) for g in gens])
    return la.nullspace(field, stacked)
