"""First cohomology of SL2(q0) from its Steinberg presentation, a brute-force
complement counter for split extensions V.X, and the level-by-level descent
that puts a complement to the long-parabolic radical into X_{k,l} form.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

import numpy as np

from . import linalg as la
from .chevalley import GroupWord, RepElement, Representation, build_rep, word, x
from .finitegroup import _keys, enumerate_group
from .gf import Field, FieldElement, field_make
from .roots import LONG_PARABOLIC, POSITIVE, shape_data
from .subgroups import GeneratorSet, steinberg_relations, subgroup_generators, xkl


class CohomologyError(RuntimeError):
    pass


# --- SL2(q0)-modules ---------------------------------------------------------

@dataclass
class SL2Module:
    """A module for SL2(q0) given by the images of x+(t) and x-(t)."""

    field: Field
    dim: int
    name: str
    plus: Callable[[FieldElement], np.ndarray]
    minus: Callable[[FieldElement], np.ndarray]

    def act(self, letter: tuple[str, FieldElement]) -> np.ndarray:
        sign, t = letter
        return self.plus(t) if sign == "+" else self.minus(t)


def _natural(F: Field, power: int):
    def plus(t):
        return la.from_elements(F, [[1, t ** power], [0, 1]])

    def minus(t):
        return la.from_elements(F, [[1, 0], [t ** power, 1]])
    return plus, minus


def sl2_module(F: Field, name: str) -> SL2Module:
    """Tensor products of twisted natural modules.

    ``name`` is a product of tokens joined by "x": "0" is the trivial module,
    "1" the natural module and "1tM" its twist by t -> t^M (M a power of p).
    "st" is the Steinberg module 1 x 1tp x ... x 1tp^(n-1).
    """
    p = F.p
    if name == "st":
        name = "x".join(["1"] + [f"1t{p ** i}" for i in range(1, F.n)])
    factors = []
    for tok in name.split("x"):
        if tok == "0":
            continue
        if tok == "1":
            power = 1
        elif tok.startswith("1t") and tok[2:].isdigit():
            power = int(tok[2:])
            m = power
            while m % p == 0:
                m //= p
            if m != 1:
                raise ValueError(f"twist {power} is not a power of {p}")
        else:
            raise ValueError(f"unknown module token {tok!r}")
        factors.append(_natural(F, power))

    def combine(which):
        def mat(t):
            out = la.identity(F, 1)
            for f in factors:
                out = la.kron(F, out, f[which](t))
            return out
        return mat

    return SL2Module(F, 2 ** len(factors), name, combine(0), combine(1))


# --- presentation-based H1 ---------------------------------------------------

Letter = tuple[str, FieldElement]


def steinberg_relation_words(F: Field) -> list[tuple[list[Letter], list[Letter]]]:
    """Relations of SL2(F) as pairs of positive words in the letters x+-(t).

    Additivity of both root groups, n+(t) x+(u) = x-(-u/t^2) n+(t), and
    h+(t) h+(u) = h+(tu), with n+(t) = x+(t) x-(-1/t) x+(t) and h+(t) = n+(t) n+(-1).
    """
    nz = list(F.nonzero())
    one = F.one

    def n_plus(t):
        return [("+", t), ("-", -t.inv()), ("+", t)]

    def h_plus(t):
        return n_plus(t) + n_plus(-one)

    rels = []
    for sign in "+-":
        for t, u in itertools.product(nz, nz):
            rels.append(([(sign, t), (sign, u)], [(sign, t + u)]))
    for t, u in itertools.product(nz, nz):
        rels.append((n_plus(t) + [("+", u)], [("-", -u / (t * t))] + n_plus(t)))
    for t, u in itertools.product(nz, nz):
        rels.append((h_plus(t) + h_plus(u), h_plus(t * u)))
    return rels


def _word_matrix(M: SL2Module, w: Sequence[Letter]) -> np.ndarray:
    out = la.identity(M.field, M.dim)
    for letter in w:
        if letter[1]:
            out = la.matmul(M.field, out, M.act(letter))
    return out


@dataclass
class CocycleSystem:
    module: SL2Module
    letters: list[Letter]
    relations: list[tuple[list[Letter], list[Letter]]]
    certificate_order: int = 0
    _column: dict = dc_field(default_factory=dict)

    def __post_init__(self):
        self._column = {l: i for i, l in enumerate(self.letters)}

    def _accumulate(self, row: np.ndarray, w: Sequence[Letter], sign: int):
        F, d = self.module.field, self.module.dim
        prefix = la.identity(F, d)
        for letter in w:
            if not letter[1]:
                continue
            c = self._column[letter] * d
            block = prefix if sign > 0 else la.neg(F, prefix)
            row[:, c:c + d] = (row[:, c:c + d] + block) % F.p
            prefix = la.matmul(F, prefix, self.module.act(letter))

    def equations(self) -> np.ndarray:
        F, d = self.module.field, self.module.dim
        rows = []
        for lhs, rhs in self.relations:
            row = la.zeros(F, d, d * len(self.letters))
            self._accumulate(row, lhs, 1)
            self._accumulate(row, rhs, -1)
            if row.any():
                rows.append(row)
        if not rows:
            return la.zeros(F, 0, d * len(self.letters))
        return np.concatenate(rows)

    def z1_basis(self) -> np.ndarray:
        return la.nullspace(self.module.field, self.equations())

    def b1_basis(self) -> np.ndarray:
        """Coboundaries g -> g v - v for v running over a basis of V."""
        F, d = self.module.field, self.module.dim
        ident = la.identity(F, d)
        cols = [la.sub(F, self.module.act(l), ident) for l in self.letters]
        stacked = np.concatenate(cols, axis=0)  # (letters*d, d)
        return la.row_space(F, la.transpose(stacked))


def cocycle_system(q0_field: Field, module: SL2Module) -> CocycleSystem:
    F = q0_field
    letters = [(s, t) for s in "+-" for t in F.nonzero()]
    rels = steinberg_relation_words(F)
    for lhs, rhs in rels:
        if not np.array_equal(_word_matrix(module, lhs), _word_matrix(module, rhs)):
            raise CohomologyError(f"module {module.name} violates a defining relation")
    nat = sl2_module(F, "1")
    gens = [RepElement(F, nat.act(l)) for l in letters]
    order = enumerate_group(gens, cap=10_000).order
    if order != F.q * (F.q ** 2 - 1):
        raise CohomologyError(f"presentation certificate failed: generated order {order}")
    return CocycleSystem(module, letters, rels, order)


@dataclass
class H1Result:
    q0: int
    module: str
    module_dim: int
    z1: int
    b1: int
    fixed: int
    certificate_order: int

    @property
    def dim_over_q0(self) -> int:
        return self.z1 - self.b1

    @property
    def dim_prime_field(self) -> int:
        return self.dim_over_q0 * field_make(*_pn(self.q0)).n

    def to_json(self) -> dict:
        return {"q0": self.q0, "module": self.module, "dim_prime_field": self.dim_prime_field,
                "dim_over_q0": self.dim_over_q0, "z1": self.z1, "b1": self.b1,
                "fixed_points": self.fixed, "certificate_order": self.certificate_order}


def _pn(q: int) -> tuple[int, int]:
    for p in (2, 3, 5, 7, 11, 13):
        n, m = 0, q
        while m % p == 0:
            m //= p
            n += 1
        if m == 1 and n:
            return p, n
    raise ValueError(f"{q} is not a supported prime power")


def field_for_q(q: int) -> Field:
    return field_make(*_pn(q))


def h1_dim(q0: int, module: SL2Module | str) -> H1Result:
    """dim H^1(SL2(q0), V) as dim Z^1 - dim B^1 over GF(q0)."""
    F = field_for_q(q0)
    if isinstance(module, str):
        module = sl2_module(F, module)
    system = cocycle_system(F, module)
    z1 = system.z1_basis()
    b1 = system.b1_basis()
    if len(b1) and la.rank(F, np.concatenate([z1, b1])) != len(z1):
        raise CohomologyError("coboundaries do not satisfy the cocycle equations")
    ident = la.identity(F, module.dim)
    fixed = len(la.nullspace(F, np.concatenate(
        [la.sub(F, module.act(l), ident) for l in system.letters])))
    return H1Result(q0, module.name, module.dim, len(z1), len(b1), fixed, system.certificate_order)


# --- complements by exhaustive search ---------------------------------------

@dataclass
class ComplementClasses:
    field: Field
    group_order: int
    z1: list[tuple[bytes, np.ndarray]]
    b1: set[bytes]
    representatives: list[np.ndarray]

    @property
    def count(self) -> int:
        return len(self.representatives)

    def classify(self, values: np.ndarray) -> int:
        """Index of the class containing the cocycle with these generator values."""
        F = self.field
        for i, rep in enumerate(self.representatives):
            if la.sub(F, values, rep).astype(np.uint8).tobytes() in self.b1:
                return i
        raise ValueError("values do not define a complement")


def complement_classes(x_gens: Sequence[RepElement], actions: Sequence[np.ndarray],
                       cap: int = 200_000, chunk: int = 4096) -> ComplementClasses:
    """V-classes of complements to V in the split extension V.X.

    ``x_gens`` generate X faithfully and ``actions[i]`` is the matrix of
    ``x_gens[i]`` on V.  Every assignment of vectors to the generators is
    tried; it defines a complement exactly when the affine lifts close up
    into a group mapping isomorphically onto X.
    """
    F = x_gens[0].field
    d = actions[0].shape[0]
    m = len(x_gens)
    store = enumerate_group(x_gens, cap=10_000)
    N = store.order
    act = np.zeros((N, d, d, F.n), dtype=np.int64)
    act[0] = la.identity(F, d)
    for i in range(1, N):
        act[i] = la.matmul(F, act[store.parent[i]], actions[store.via[i]])
    table = np.zeros((N, m), dtype=np.int64)
    for j, g in enumerate(x_gens):
        prods = la.matmul(F, store.mats, g.m[None])
        table[:, j] = [store.index[k] for k in _keys(prods)]
    # consistency of the action matrices with the group law
    for j in range(m):
        if not np.array_equal(act[table[:, j]], la.matmul(F, act, actions[j][None])):
            raise CohomologyError("action matrices do not define a representation of X")

    vectors = np.array(list(itertools.product(range(F.q), repeat=d)))
    codes = np.array([[F.from_code(int(c)).coeffs for c in row] for row in vectors],
                     dtype=np.int64).reshape(len(vectors), d, F.n)
    V = len(codes)
    total = V ** m
    if total > cap:
        raise CohomologyError(f"{total} candidate generator values exceed cap={cap}")
    solutions = []
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk))
        digits = [(idx // V ** j) % V for j in range(m)]
        vals = [codes[dg] for dg in digits]  # each (B, d, n)
        B = len(idx)
        c = np.zeros((N, B, d, F.n), dtype=np.int64)
        for i in range(1, N):
            par, j = store.parent[i], store.via[i]
            moved = la.matmul(F, act[par][None], vals[j][:, :, None, :])[:, :, 0, :]
            c[i] = (c[par] + moved) % F.p
        ok = np.ones(B, dtype=bool)
        for j in range(m):
            moved = la.matmul(F, act[:, None], vals[j][None, :, :, None, :])[..., 0, :]
            ok &= ((c + moved) % F.p == c[table[:, j]]).all(axis=(0, 2, 3))
        for b in np.nonzero(ok)[0]:
            tup = np.stack([v[b] for v in vals])
            solutions.append((tup.astype(np.uint8).tobytes(), tup))
    ident = la.identity(F, d)
    b1 = set()
    for v in codes:
        tup = np.stack([la.matmul(F, la.sub(F, a, ident), v[:, None, :])[:, 0, :] for a in actions])
        b1.add(tup.astype(np.uint8).tobytes())
    if len(solutions) % len(b1):
        raise CohomologyError("coboundaries do not partition the cocycles")
    reps, covered = [], set()
    for key, tup in solutions:
        if key in covered:
            continue
        reps.append(tup)
        for bkey in b1:
            b = np.frombuffer(bkey, dtype=np.uint8).astype(np.int64).reshape(tup.shape)
            covered.add(la.add(F, tup, b).astype(np.uint8).tobytes())
    return ComplementClasses(F, N, solutions, b1, reps)


# --- the long parabolic ------------------------------------------------------

LEVEL = {POSITIVE.index(d.root) + 1: d.level for d in shape_data(LONG_PARABOLIC)}
LEVEL[2] = 0
LEVEL_ONE = sorted(i for i, lev in LEVEL.items() if lev == 1)  # [1, 3]


def levi_generators(F: Field, rep: Representation | None = None) -> list[RepElement]:
    """x_{+-2}(b) for b running over an additive basis of GF(q)."""
    rep = rep or build_rep(F)
    basis = [F.gen ** i for i in range(F.n)]
    return [rep.xmat(s * 2, b) for s in (1, -1) for b in basis]


def level_action(rep: Representation, g: RepElement, indices: Sequence[int] = tuple(LEVEL_ONE)) -> np.ndarray:
    """Matrix of conjugation by g on one level of a radical, in the basis x_i(1).

    The default is Q/Q(2) for the long parabolic, with basis x_1(1), x_3(1).
    """
    F = rep.field
    cols = []
    gi = g.inv()
    for i in indices:
        u = rep.unipotent_factorize(g @ rep.xmat(i, 1) @ gi)
        cols.append([u[j] for j in indices])
    return la.transpose(la.from_elements(F, cols))


def level_one_cocycle(rep: Representation, elements: Sequence[RepElement],
                      levi: Sequence[RepElement]) -> np.ndarray:
    """Generator values of the cocycle of a complement: element_i = u_i levi_i with u_i in Q."""
    F = rep.field
    vals = []
    for e, g in zip(elements, levi):
        u = rep.unipotent_factorize(e @ g.inv())
        vals.append([[u[j]] for j in LEVEL_ONE])
    return np.stack([la.from_elements(F, v)[:, 0, :] for v in vals])


def _sqrt_char2(t: FieldElement) -> FieldElement:
    return t ** (t.field.q // 2)


def xk0_level_one_classes(F: Field) -> tuple[ComplementClasses, dict[FieldElement, int]]:
    """Complement classes for L0 on Q/Q(2) and the class of each X_{k,0}."""
    if F.p != 2:
        raise ValueError("X_{k,l} are complements only in characteristic 2")
    rep = build_rep(F)
    levi = levi_generators(F, rep)
    actions = [level_action(rep, g) for g in levi]
    classes = complement_classes(levi, actions)
    where = {}
    for k in F.elements():
        gset = subgroup_generators(xkl(F, k, 0))
        elems = []
        for g in levi:
            (letter,) = list(g.word)
            sign = "+" if letter.i > 0 else "-"
            s = letter.t
            elems.append(gset.element(sign, _sqrt_char2(s), rep))
        where[k] = classes.classify(level_one_cocycle(rep, elems, levi))
    return classes, where


# --- layered descent ---------------------------------------------------------

LEVEL_STEPS = [
    ("level 1", [1, 3], True),   # conjugate by x_1 x_3, choose k
    ("level 2", [4], False),
    ("level 3", [5, 6], True),   # conjugate by x_5 x_6, choose l
]


@dataclass
class DescentResult:
    k: FieldElement
    l: FieldElement
    conjugator: GroupWord
    steps: list[GroupWord]

    def to_json(self) -> dict:
        return {"k": self.k.to_list(), "l": self.l.to_list(),
                "conjugator": self.conjugator.to_json()}


def _coords(rep: Representation, n2: RepElement, n2i: RepElement, plus: RepElement,
            minus: RepElement) -> tuple[dict, dict] | None:
    try:
        return rep.unipotent_factorize(plus), rep.unipotent_factorize(n2 @ minus @ n2i)
    except ValueError:
        return None


def layered_descent(gset: GeneratorSet, rep: Representation | None = None) -> DescentResult:
    """Conjugate a complement X into X_{k,l} form, one radical level at a time.

    X must have x+(t) = x_2(t^2) q and x-(t) = x_-2(t^2) q' with q, q' in Q.
    Each step conjugates by an element of the current level, chosen so that
    the coordinates of X agree with some X_{k,l} up to that level.
    """
    F = gset.field
    if F.p != 2:
        raise ValueError("layered descent is a characteristic-2 procedure")
    rep = rep or build_rep(F)
    params = list(F.nonzero())
    n2 = rep.nmat(2, F.one)
    n2i = n2.inv()
    cur = {t: (gset.element("+", t, rep), gset.element("-", t, rep)) for t in params}
    if any(_coords(rep, n2, n2i, *cur[t]) is None for t in params):
        raise CohomologyError("X is not in the long parabolic with Levi factor L0")

    target_cache: dict = {}

    def target(k, l):
        if (k, l) not in target_cache:
            g = subgroup_generators(xkl(F, k, l))
            target_cache[k, l] = {t: _coords(rep, n2, n2i, g.element("+", t, rep), g.element("-", t, rep))
                                  for t in params}
        return target_cache[k, l]

    def agrees(state, tgt, level):
        keep = [i for i in range(1, 7) if LEVEL[i] <= level]
        for t in params:
            got = _coords(rep, n2, n2i, *state[t])
            if got is None:
                return False
            for a, b in zip(got, tgt[t]):
                if any(a[i] != b[i] for i in keep):
                    return False
        return True

    def conj(state, u):
        ui = u.inv()
        return {t: (u @ a @ ui, u @ b @ ui) for t, (a, b) in state.items()}

    def descend(state, level, k, l, steps):
        if level == 3:
            return k, l, steps
        name, roots, chooses = LEVEL_STEPS[level]
        values = list(itertools.product(list(F.elements()), repeat=len(roots)))
        values.sort(key=lambda v: any(v))  # identity first keeps the procedure idempotent
        choices = list(F.elements()) if chooses else [None]
        for v in values:
            w = word(*(x(r, c) for r, c in zip(roots, v) if c))
            u = rep.eval_word(w)
            nxt = conj(state, u) if len(w) else state
            for c in choices:
                kk = c if level == 0 else k
                ll = c if level == 2 else F.zero
                if agrees(nxt, target(kk, ll), level + 1):
                    res = descend(nxt, level + 1, kk, ll, steps + [w])
                    if res is not None:
                        return res
        return None

    if not agrees(cur, target(F.zero, F.zero), 0):
        raise CohomologyError("the Levi part of X is not t -> x_2(t^2)")
    res = descend(cur, 0, None, F.zero, [])
    if res is None:
        raise CohomologyError("no level-by-level conjugator reaches X_{k,l} form")
    k, l, steps = res
    total = GroupWord()
    for w in reversed(steps):
        total = total * w
    return DescentResult(k, l, total, steps)


def descent_verifies(gset: GeneratorSet, result: DescentResult, rep: Representation | None = None) -> bool:
    """eval(conjugator) X eval(conjugator)^-1 equals X_{k,l} family by family."""
    F = gset.field
    rep = rep or build_rep(F)
    g = rep.eval_word(result.conjugator)
    gi = g.inv()
    target = subgroup_generators(xkl(F, result.k, result.l))
    for t in F.nonzero():
        for sign in "+-":
            if g @ gset.element(sign, t, rep) @ gi != target.element(sign, t, rep):
                return False
    return True


def conjugated_family(gset: GeneratorSet, u: RepElement, rep: Representation | None = None) -> GeneratorSet:
    """The generator set of u X u^-1 (families as matrices)."""
    from .subgroups import Family
    rep = rep or build_rep(gset.field)
    ui = u.inv()
    fams = {name: Family(name, None, (lambda fam: lambda r, t: u @ fam(r, t) @ ui)(fam))
            for name, fam in gset.families.items()}
    return GeneratorSet(gset.name + "^u", gset.field, fams, gset.simple, gset.positive, gset.notes)


def align_into_long_parabolic(gset: GeneratorSet, ambient) -> tuple[RepElement, GeneratorSet]:
    """Find g in an enumerated ambient group placing X in the long parabolic with Levi part L0."""
    F = gset.field
    rep = build_rep(F)
    n2 = rep.nmat(2, F.one)
    n2i = n2.inv()
    params = list(F.nonzero())
    for i in range(len(ambient)):
        g = ambient.element(i)
        cand = conjugated_family(gset, g, rep)
        ok = True
        for t in params:
            got = _coords(rep, n2, n2i, cand.element("+", t, rep), cand.element("-", t, rep))
            if got is None or got[0][2] != t * t or got[1][2] != rep.unipotent_factorize(
                    n2 @ rep.xmat(-2, t * t) @ n2i)[2]:
                ok = False
                break
        if ok:
            return g, cand
    raise CohomologyError("X is not conjugate into the long parabolic in this group")


def relations_hold(gset: GeneratorSet) -> bool:
    return steinberg_relations(gset, build_rep(gset.field)).ok

