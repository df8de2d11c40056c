"""The G2 root system in the basis (a1 short, a2 long).

A root (a, b) means a*a1 + b*a2.  Positive roots carry the fixed indices 1..6
and negatives -1..-6; every other module refers to roots by these indices.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np


class Root(NamedTuple):
    a: int
    b: int

    def __add__(self, other):  # lattice addition, not tuple concatenation
        return Root(self.a + other[0], self.b + other[1])

    def __sub__(self, other):
        return Root(self.a - other[0], self.b - other[1])

    def __neg__(self):
        return Root(-self.a, -self.b)

    def __mul__(self, k: int):
        return Root(k * self.a, k * self.b)

    __rmul__ = __mul__

    @property
    def height(self) -> int:
        return self.a + self.b


ALPHA1 = Root(1, 0)
ALPHA2 = Root(0, 1)
SIMPLE = (ALPHA1, ALPHA2)

POSITIVE = (Root(1, 0), Root(0, 1), Root(1, 1), Root(2, 1), Root(3, 1), Root(3, 2))
ROOTS = POSITIVE + tuple(-r for r in POSITIVE)
ROOT_SET = frozenset(ROOTS)

# symmetric form with (a1,a1) = 2, (a2,a2) = 6
GRAM = np.array([[2, -3], [-3, 6]])

LONG_PARABOLIC = frozenset({ALPHA2})
SHORT_PARABOLIC = frozenset({ALPHA1})


def positive_roots() -> list[Root]:
    return list(POSITIVE)


def root(i: int) -> Root:
    """Root with signed index i in {+-1, ..., +-6}."""
    if i == 0 or abs(i) > 6:
        raise ValueError(f"root index {i} out of range")
    r = POSITIVE[abs(i) - 1]
    return r if i > 0 else -r


def index(r) -> int:
    r = Root(*r)
    if r in POSITIVE:
        return POSITIVE.index(r) + 1
    if -r in POSITIVE:
        return -(POSITIVE.index(-r) + 1)
    raise ValueError(f"{tuple(r)} is not a root of G2")


def is_root(r) -> bool:
    return Root(*r) in ROOT_SET


def inner(x, y) -> int:
    return int(np.array(x) @ GRAM @ np.array(y))


def is_long(r) -> bool:
    return inner(r, r) == 6


def pairing(beta, alpha) -> int:
    """<beta, alpha^vee> = 2 (beta, alpha) / (alpha, alpha)."""
    num = 2 * inner(beta, alpha)
    den = inner(alpha, alpha)
    assert num % den == 0
    return num // den


def reflect(alpha, beta) -> Root:
    """s_alpha(beta)."""
    return Root(*beta) - Root(*alpha) * pairing(beta, alpha)


def string_below(r, s) -> int:
    """Largest p with s - p r a root (the r-string through s starts at s - p r)."""
    p = 0
    while is_root(Root(*s) - Root(*r) * (p + 1)):
        p += 1
    return p


# --- Weyl group --------------------------------------------------------------

def _reflection_matrix(alpha) -> np.ndarray:
    cols = [reflect(alpha, e) for e in (Root(1, 0), Root(0, 1))]
    return np.array([[cols[0].a, cols[1].a], [cols[0].b, cols[1].b]])


S1 = _reflection_matrix(ALPHA1)
S2 = _reflection_matrix(ALPHA2)


def weyl_group() -> list[np.ndarray]:
    """All elements of W(G2) as integer 2x2 matrices acting on (a, b) columns."""
    seen = {np.eye(2, dtype=int).tobytes(): np.eye(2, dtype=int)}
    frontier = list(seen.values())
    while frontier:
        nxt = []
        for w in frontier:
            for s in (S1, S2):
                u = s @ w
                k = u.tobytes()
                if k not in seen:
                    seen[k] = u
                    nxt.append(u)
        frontier = nxt
    return list(seen.values())


def longest_element() -> np.ndarray:
    """w0, the element of maximal length; equals -1 for G2."""
    best, best_len = None, -1
    for w in weyl_group():
        length = sum(1 for r in POSITIVE if apply_weyl(w, r) not in POSITIVE)
        if length > best_len:
            best, best_len = w, length
    return best


def apply_weyl(w: np.ndarray, r) -> Root:
    v = w @ np.array(r)
    return Root(int(v[0]), int(v[1]))


# --- parabolic combinatorics --------------------------------------------------

@dataclass(frozen=True)
class RootShape:
    root: Root
    height: int
    shape: tuple[int, int]
    level: int


@dataclass(frozen=True)
class LevelModule:
    level: int
    shapes: tuple[tuple[int, int], ...]
    roots: tuple[Root, ...]
    dim: int
    highweight: int
    highest_root: Root


def _check_parabolic(J) -> frozenset:
    J = frozenset(Root(*r) for r in J)
    if J not in (LONG_PARABOLIC, SHORT_PARABOLIC):
        raise ValueError("only the maximal parabolics J={a1} and J={a2} are supported")
    return J


def shape_data(J) -> list[RootShape]:
    """Height, shape and level of each positive root outside Phi_J."""
    J = _check_parabolic(J)
    out = []
    for r in POSITIVE:
        coeffs = {ALPHA1: r.a, ALPHA2: r.b}
        d = {s: c for s, c in coeffs.items() if s not in J}
        if not any(d.values()):
            continue  # r lies in Phi_J
        shape = (d.get(ALPHA1, 0), d.get(ALPHA2, 0))
        out.append(RootShape(r, r.height, shape, sum(d.values())))
    return out


def abs_filtration(J) -> list[LevelModule]:
    """The level modules Q(i)/Q(i+1) of the unipotent radical of P_J."""
    J = _check_parabolic(J)
    (levi_root,) = tuple(J)
    data = shape_data(J)
    levels = sorted({d.level for d in data})
    out = []
    for lev in levels:
        here = [d for d in data if d.level == lev]
        shapes = tuple(sorted({d.shape for d in here}))
        for s in shapes:
            of_shape = [d for d in here if d.shape == s]
            top = max(d.height for d in of_shape)
            assert sum(d.height == top for d in of_shape) == 1, "maximal root of a shape is unique"
        highest = max(here, key=lambda d: d.height).root
        weights = [pairing(d.root, levi_root) for d in here]
        assert pairing(highest, levi_root) == max(weights)
        out.append(LevelModule(lev, shapes, tuple(d.root for d in here), len(here),
                               max(weights), highest))
    return out


def parabolic_from_name(name: str) -> frozenset:
    return {"long": LONG_PARABOLIC, "short": SHORT_PARABOLIC}[name]


def root_table(J=LONG_PARABOLIC) -> list[dict]:
    """JSON-ready rows {"index", "coords", "level", "shape"} for all positive roots."""
    info = {d.root: d for d in shape_data(J)}
    rows = []
    for i, r in enumerate(POSITIVE, start=1):
        d = info.get(r)
        rows.append({"index": i, "coords": [r.a, r.b],
                     "level": d.level if d else 0,
                     "shape": list(d.shape) if d else [0, 0]})
    return rows
