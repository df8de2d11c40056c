"""Root elements of G2 acting on its 7-dimensional Weyl module.

The integral form is fixed once: simple root vectors e_1, e_2 and their
opposites act on the weight basis ordered by descending height

    v1..v7  with weights (2,1), (1,1), (1,0), 0, -(1,0), -(1,1), -(2,1),

and every other root vector is obtained by bracketing and dividing by the
root-string factor.  Structure constants are read off from this form, so
all signs are internally consistent by construction.  Root elements are the
divided-power exponentials I + t e + t^2 e^2/2 computed over the integers,
which is exact in every characteristic including 2.
"""

from __future__ import annotations

import functools
import json
from dataclasses import dataclass
from math import factorial
from typing import Iterable, Sequence

import numpy as np

from . import linalg as la
from .gf import Field, FieldElement, FieldError, field_make
from .roots import POSITIVE, ROOTS, Root, index, is_root, pairing, root, string_below

DIM = 7
WEIGHTS = (Root(2, 1), Root(1, 1), Root(1, 0), Root(0, 0),
           Root(-1, 0), Root(-1, -1), Root(-2, -1))


def _unit(entries) -> np.ndarray:
    m = np.zeros((DIM, DIM), dtype=np.int64)
    for row, col, c in entries:
        m[row - 1, col - 1] = c
    return m


def _bracket(a, b):
    return a @ b - b @ a


def _ratio(a: np.ndarray, b: np.ndarray) -> int:
    """The integer c with a = c * b (b nonzero)."""
    nz = np.nonzero(b)
    c, rem = divmod(int(a[nz][0]), int(b[nz][0]))
    assert rem == 0 and np.array_equal(a, c * b), "matrices are not proportional"
    return c


def _coroot_diag(r: Root) -> np.ndarray:
    return np.diag([pairing(mu, r) for mu in WEIGHTS])


@functools.lru_cache(maxsize=None)
def integral_form() -> dict[Root, np.ndarray]:
    """Integer matrices e_r on V7 for all 12 roots, forming a Chevalley basis."""
    e1 = _unit([(4, 5, 1), (3, 4, 2), (1, 2, 1), (6, 7, 1)])
    f1 = _unit([(4, 3, 1), (5, 4, 2), (2, 1, 1), (7, 6, 1)])
    e2 = _unit([(2, 3, 1), (5, 6, 1)])
    f2 = _unit([(3, 2, 1), (6, 5, 1)])

    def build(a, b):
        out = {Root(1, 0): a, Root(0, 1): b}
        out[Root(1, 1)] = _bracket(a, b)
        out[Root(2, 1)] = _bracket(a, out[Root(1, 1)]) // 2
        out[Root(3, 1)] = _bracket(a, out[Root(2, 1)]) // 3
        out[Root(3, 2)] = _bracket(b, out[Root(3, 1)])
        return out

    pos, neg = build(e1, e2), build(f1, f2)
    E = dict(pos)
    for r in POSITIVE:
        c = _ratio(_bracket(pos[r], neg[r]), _coroot_diag(r))
        assert c in (1, -1)
        E[-r] = neg[r] * c
    for r, m in E.items():
        assert np.array_equal(_bracket(E[r], E[-r]), _coroot_diag(r))
        sq = m @ m
        assert not (sq % 2).any() and not (sq @ m).any()
        assert set(np.unique(m)) <= {-2, -1, 0, 1, 2}
    return E


@functools.lru_cache(maxsize=None)
def structure_constants() -> dict[tuple[Root, Root], int]:
    """N_{r,s} with [e_r, e_s] = N_{r,s} e_{r+s}, for every pair with r+s a root."""
    E = integral_form()
    N = {}
    for r in ROOTS:
        for s in ROOTS:
            if is_root(r + s):
                N[r, s] = _ratio(_bracket(E[r], E[s]), E[r + s])
                assert abs(N[r, s]) == string_below(r, s) + 1
    return N


def commutator_coeffs(r, s) -> list[tuple[int, int, Root, int]]:
    """Terms (i, j, i*r + j*s, C_ij) of the commutator formula.

    [x_s(u), x_r(t)] = prod over i + j ascending of x_{ir+js}(C_ij (-t)^i u^j),
    with [a, b] = a^-1 b^-1 a b.
    """
    r, s = Root(*r), Root(*s)
    if r == s or r == -s:
        raise ValueError("commutator formula needs r != +-s")
    N = structure_constants()

    def M(a, b, i):
        val, cur = 1, b
        for _ in range(i):
            val *= N[a, cur]
            cur = cur + a
        q, rem = divmod(val, factorial(i))
        assert rem == 0
        return q

    terms = []
    for total in range(2, 6):
        for i in range(1, total):
            j = total - i
            target = r * i + s * j
            if not is_root(target):
                continue
            if j == 1:
                c = M(r, s, i)
            elif i == 1:
                c = (-1) ** j * M(s, r, j)
            elif (i, j) == (3, 2):
                q, rem = divmod(M(r + s, r, 2), 3)
                assert rem == 0
                c = q
            elif (i, j) == (2, 3):
                q, rem = divmod(-2 * M(s + r, s, 2), 3)
                assert rem == 0
                c = q
            else:
                raise AssertionError(f"unexpected commutator term {(i, j)}")
            terms.append((i, j, target, c))
    return terms


# --- elements ----------------------------------------------------------------

class RepElement:
    """An invertible 7x7 (or general square) matrix over a finite field."""

    __slots__ = ("field", "m", "word")

    def __init__(self, field: Field, m: np.ndarray, word: "GroupWord | None" = None):
        self.field = field
        self.m = m
        self.word = word

    def __matmul__(self, other: "RepElement") -> "RepElement":
        if other.field is not self.field:
            raise FieldError("mixed-field product")
        word = self.word * other.word if (self.word is not None and other.word is not None) else None
        return RepElement(self.field, la.matmul(self.field, self.m, other.m), word)

    __mul__ = __matmul__

    def inv(self) -> "RepElement":
        return RepElement(self.field, la.inverse(self.field, self.m),
                          self.word.inverse() if self.word is not None else None)

    def conj(self, g: "RepElement") -> "RepElement":
        """g self g^-1."""
        return g @ self @ g.inv()

    def __eq__(self, other) -> bool:
        return (isinstance(other, RepElement) and self.field is other.field
                and np.array_equal(self.m, other.m))

    def __hash__(self) -> int:
        return hash(self.key())

    def key(self) -> bytes:
        return la.key(self.m)

    def is_identity(self) -> bool:
        return np.array_equal(self.m, la.identity(self.field, self.m.shape[0]))

    def det(self) -> FieldElement:
        return la.det(self.field, self.m)

    def entries(self) -> list[list[FieldElement]]:
        return la.to_elements(self.field, self.m)

    def to_json(self) -> list:
        return self.m.tolist()

    def __repr__(self) -> str:
        rows = self.entries()
        return "\n".join(" ".join(f"{x!r:>6}" for x in row) for row in rows)


def commutator(a: RepElement, b: RepElement) -> RepElement:
    """a^-1 b^-1 a b."""
    return a.inv() @ b.inv() @ a @ b


@dataclass(frozen=True)
class Letter:
    kind: str  # "x", "n" or "h"
    i: int
    t: FieldElement

    def __post_init__(self):
        if self.kind not in ("x", "n", "h"):
            raise ValueError(f"unknown letter kind {self.kind!r}")
        root(self.i)
        if self.kind in ("n", "h") and not self.t:
            raise ValueError(f"{self.kind}-letter needs a nonzero parameter")

    def inverse(self) -> "Letter | list[Letter]":
        if self.kind == "x":
            return [Letter("x", self.i, -self.t)]
        if self.kind == "h":
            return [Letter("h", self.i, self.t.inv())]
        # n_i(t)^-1 = n_i(-t)
        return [Letter("n", self.i, -self.t)]

    def to_json(self) -> dict:
        return {"kind": self.kind, "i": self.i, "t": self.t.to_list()}


class GroupWord:
    """A formal product of letters x_i(t), n_i(t), h_i(t)."""

    __slots__ = ("letters",)

    def __init__(self, letters: Iterable[Letter] = ()):
        self.letters = tuple(letters)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return GroupWord(self.letters + other.letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __eq__(self, other) -> bool:
        return isinstance(other, GroupWord) and self.letters == other.letters

    def __hash__(self) -> int:
        return hash(self.letters)

    def inverse(self) -> "GroupWord":
        out = []
        for letter in reversed(self.letters):
            out.extend(letter.inverse())
        return GroupWord(out)

    def __repr__(self) -> str:
        if not self.letters:
            return "1"
        return "".join(f"{l.kind}{l.i}({l.t!r})" for l in self.letters)

    def to_json(self) -> list[dict]:
        return [letter.to_json() for letter in self.letters]

    @classmethod
    def from_json(cls, data: Sequence[dict], field: Field) -> "GroupWord":
        return cls(Letter(d["kind"], int(d["i"]), field(d["t"] if not isinstance(d["t"], int) else d["t"]))
                   for d in data)


def x(i: int, t: FieldElement) -> GroupWord:
    return GroupWord([Letter("x", i, t)])


def n(i: int, t: FieldElement) -> GroupWord:
    return GroupWord([Letter("n", i, t)])


def h(i: int, t: FieldElement) -> GroupWord:
    return GroupWord([Letter("h", i, t)])


def word(*parts: GroupWord) -> GroupWord:
    out = GroupWord()
    for p in parts:
        out = out * p
    return out


# --- the representation ----------------------------------------------------

class Representation:
    """V7 over a fixed field: root-element matrices and word evaluation."""

    def __init__(self, field: Field):
        self.field = field
        E = integral_form()
        self._e1 = {index(r): la.from_int_matrix(field, m) for r, m in E.items()}
        self._e2 = {index(r): la.from_int_matrix(field, (m @ m) // 2) for r, m in E.items()}
        self.identity_matrix = la.identity(field, DIM)
        self._pivot = {}
        for k, r in enumerate(POSITIVE, start=1):
            m = E[r]
            hits = np.argwhere(np.abs(m) == 1)
            row, col = hits[0]
            self._pivot[k] = (int(row), int(col), int(m[row, col]))

    @property
    def weights(self) -> tuple[Root, ...]:
        return WEIGHTS

    def e(self, i: int) -> np.ndarray:
        """The root vector e_i reduced into the field."""
        return self._e1[i]

    def identity(self) -> RepElement:
        return RepElement(self.field, self.identity_matrix.copy(), GroupWord())

    def _coerce(self, t) -> FieldElement:
        t = self.field(t) if not isinstance(t, FieldElement) else t
        if t.field is not self.field:
            raise FieldError(f"parameter from {t.field} used with {self.field}")
        return t

    def xmat(self, i: int, t) -> RepElement:
        t = self._coerce(t)
        f = self.field
        m = (self.identity_matrix + la.scale(f, t, self._e1[i]) + la.scale(f, t * t, self._e2[i])) % f.p
        return RepElement(f, m, x(i, t))

    def xmat_batch(self, i: int, ts: Sequence[FieldElement]) -> np.ndarray:
        """Stacked x_i(t) for every t in ``ts``, shape (len(ts), 7, 7, n)."""
        f = self.field
        t = np.array([s.coeffs for s in ts], dtype=np.int64)[:, None, None, :]
        t2 = la.emul(f, t, t)
        return (self.identity_matrix + la.emul(f, t, self._e1[i][None])
                + la.emul(f, t2, self._e2[i][None])) % f.p

    def nmat(self, i: int, t) -> RepElement:
        t = self._coerce(t)
        if not t:
            raise FieldError("n_i(t) needs t != 0")
        out = self.xmat(i, t) @ self.xmat(-i, -t.inv()) @ self.xmat(i, t)
        out.word = n(i, t)
        return out

    def hmat(self, i: int, t) -> RepElement:
        t = self._coerce(t)
        if not t:
            raise FieldError("h_i(t) needs t != 0")
        out = self.nmat(i, t) @ self.nmat(i, -self.field.one)
        out.word = h(i, t)
        return out

    def letter(self, letter: Letter) -> RepElement:
        return {"x": self.xmat, "n": self.nmat, "h": self.hmat}[letter.kind](letter.i, letter.t)

    def eval_word(self, w: GroupWord) -> RepElement:
        out = self.identity_matrix.copy()
        for letter in w:
            out = la.matmul(self.field, out, self.letter(letter).m)
        return RepElement(self.field, out, w)

    def normal_form(self, params: dict[int, FieldElement]) -> RepElement:
        """x_1(t_1) x_2(t_2) ... x_6(t_6)."""
        zero = self.field.zero
        return self.eval_word(word(*(x(k, params.get(k, zero)) for k in range(1, 7))))

    def unipotent_factorize(self, g: RepElement) -> dict[int, FieldElement]:
        """Parameters t_1..t_6 with g = x_1(t_1) ... x_6(t_6); ValueError if g is not in U."""
        f = self.field
        cur = g.m.copy()
        params: dict[int, FieldElement] = {}
        for k in range(1, 7):
            row, col, sign = self._pivot[k]
            t = f(cur[row, col].tolist()) * sign
            params[k] = t
            cur = la.matmul(f, self.xmat(k, -t).m, cur)
        if not np.array_equal(cur, self.identity_matrix):
            raise ValueError("element is not in U")
        return params

    def in_unipotent(self, g: RepElement) -> bool:
        try:
            self.unipotent_factorize(g)
            return True
        except ValueError:
            return False


@functools.lru_cache(maxsize=None)
def build_rep(field: Field) -> Representation:
    return Representation(field)


def rep_for(p: int, n: int = 1) -> Representation:
    return build_rep(field_make(p, n))


def commutator_product(rep: Representation, r, s, t: FieldElement, u: FieldElement) -> RepElement:
    """The right-hand side of the commutator formula for [x_s(u), x_r(t)]."""
    out = rep.identity()
    for i, j, target, c in commutator_coeffs(r, s):
        out = out @ rep.xmat(index(target), (-t) ** i * u ** j * c)
    return out


def word_to_json(w: GroupWord) -> str:
    return json.dumps(w.to_json())
