"""Module analysis over finite fields: spinning, MeatAxe chopping, socle
series and highest-weight labels of composition factors.

Vectors are rows of coefficient arrays; group elements act on column vectors,
so the image of a row basis S under g is S @ g^T.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from . import linalg as la
from .chevalley import RepElement, Representation, build_rep
from .gf import Field, FieldElement
from .subgroups import GeneratorSet

DEFAULT_SEED = 20240607


class ChopFailed(RuntimeError):
    pass


@dataclass
class ModuleRep:
    field: Field
    dim: int
    gens: list[np.ndarray]
    tags: list[tuple[str, FieldElement] | None] = dc_field(default_factory=list)

    def __post_init__(self):
        if not self.tags:
            self.tags = [None] * len(self.gens)
        for g in self.gens:
            assert g.shape == (self.dim, self.dim, self.field.n)

    @classmethod
    def from_elements(cls, elements: Sequence[RepElement], tags=None) -> "ModuleRep":
        f = elements[0].field
        return cls(f, elements[0].m.shape[0], [e.m for e in elements], list(tags or []))

    def tagged(self, family: str) -> dict[FieldElement, np.ndarray]:
        return {tag[1]: g for g, tag in zip(self.gens, self.tags) if tag and tag[0] == family}

    def conjugate(self, P: np.ndarray) -> "ModuleRep":
        """The same module written in the basis given by the columns of P."""
        Pi = la.inverse(self.field, P)
        gens = [la.matmul(self.field, la.matmul(self.field, Pi, g), P) for g in self.gens]
        return ModuleRep(self.field, self.dim, gens, list(self.tags))

    def dual(self) -> "ModuleRep":
        gens = [la.transpose(la.inverse(self.field, g)) for g in self.gens]
        return ModuleRep(self.field, self.dim, gens, list(self.tags))


def restrict(gset: GeneratorSet, rep: Representation | None = None, params=None) -> ModuleRep:
    """V7 restricted to the subgroup generated by ``gset``."""
    rep = rep or build_rep(gset.field)
    tagged = gset.tagged_matrices(rep, params)
    return ModuleRep(gset.field, 7, [m.m for _, _, m in tagged], [(f, t) for f, t, _ in tagged])


# --- spinning and sub/quotient modules ----------------------------------------

def _images(M: ModuleRep, rows: np.ndarray, transpose: bool = False) -> np.ndarray:
    gens = np.stack(M.gens)
    if not transpose:
        gens = la.transpose(gens)  # rows @ g^T
    out = la.matmul(M.field, rows[None], gens)
    return out.reshape(-1, M.dim, M.field.n)


def spin(seeds: np.ndarray, M: ModuleRep, transpose: bool = False) -> np.ndarray:
    """Echelonised basis of the smallest submodule containing ``seeds``.

    With ``transpose`` the transposed generators are used (the dual action up to
    inversion, which spans the same subspaces).
    """
    F = M.field
    seeds = np.asarray(seeds).reshape(-1, M.dim, F.n)
    basis = la.row_space(F, seeds) if len(seeds) else seeds
    if not len(basis):
        return basis
    while True:
        grown = la.row_space(F, np.concatenate([basis, _images(M, basis, transpose)]))
        if len(grown) == len(basis):
            return grown
        basis = grown


def split(M: ModuleRep, sub: np.ndarray) -> tuple[ModuleRep, ModuleRep, np.ndarray]:
    """Submodule and quotient actions for an invariant subspace ``sub``.

    Returns (sub module, quotient module, P) where the columns of P are the
    chosen adapted basis: first the submodule, then a complement.
    """
    F, d = M.field, M.dim
    sub = la.row_space(F, sub)
    k = len(sub)
    comp = la.complement_basis(F, sub, d)
    P = la.transpose(np.concatenate([sub, comp]))
    N = M.conjugate(P)
    for g in N.gens:
        assert not g[k:, :k].any(), "subspace is not invariant"
    S = ModuleRep(F, k, [g[:k, :k].copy() for g in N.gens], list(M.tags))
    Q = ModuleRep(F, d - k, [g[k:, k:].copy() for g in N.gens], list(M.tags))
    return S, Q, P


def quotient_lift(F: Field, P: np.ndarray, k: int, rows: np.ndarray) -> np.ndarray:
    """Lift rows in quotient coordinates to vectors of the original module."""
    comp_cols = la.transpose(P[:, k:])  # complement basis as rows
    return la.matmul(F, rows, comp_cols)


# --- MeatAxe ------------------------------------------------------------------

def _irreducible_polys(F: Field) -> list[list[FieldElement]]:
    """Monic irreducible polynomials of degree 1 and (small fields) 2, low coefficient first."""
    out = [[-a, F.one] for a in F.elements()]
    if F.q <= 16:
        for b in F.elements():
            for c in F.elements():
                if all(a * a + b * a + c for a in F.elements()):
                    out.append([c, b, F.one])
    return out


def _poly_at(F: Field, coeffs, A: np.ndarray) -> np.ndarray:
    d = A.shape[0]
    out = la.zeros(F, d, d)
    power = la.identity(F, d)
    for c in coeffs:
        out = (out + la.scale(F, c, power)) % F.p
        power = la.matmul(F, power, A)
    return out


def _random_element(M: ModuleRep, rng: np.random.Generator) -> np.ndarray:
    F = M.field
    out = la.zeros(F, M.dim, M.dim)
    for _ in range(3):
        length = int(rng.integers(1, 4))
        prod = la.identity(F, M.dim)
        for _ in range(length):
            prod = la.matmul(F, prod, M.gens[int(rng.integers(len(M.gens)))])
        out = (out + la.scale(F, F.random(rng), prod)) % F.p
    return out


def find_submodule(M: ModuleRep, rng: np.random.Generator, attempts: int = 400):
    """A proper nonzero submodule basis, or None if Norton's test certifies M irreducible."""
    F, d = M.field, M.dim
    if d == 1:
        return None
    polys = _irreducible_polys(F)
    for _ in range(attempts):
        A = _random_element(M, rng)
        for f in polys:
            fA = _poly_at(F, f, A)
            N = la.nullspace(F, fA)
            if not len(N):
                continue
            v = N[:1]
            S = spin(v, M)
            if len(S) < d:
                return S
            W = la.nullspace(F, la.transpose(fA))
            T = spin(W[:1], M, transpose=True)
            if len(T) < d:
                # annihilator of an invariant subspace of the transposed action
                return la.nullspace(F, T)
            if len(N) == len(f) - 1:
                return None
            break  # this A is inconclusive; draw another
    raise ChopFailed(f"MeatAxe gave no verdict after {attempts} attempts (dim {d}, {F})")


def chop(M: ModuleRep, seed: int = DEFAULT_SEED, rng: np.random.Generator | None = None) -> list[ModuleRep]:
    """Composition factors of M, bottom of a composition series first."""
    rng = rng or np.random.default_rng(seed)
    sub = find_submodule(M, rng)
    if sub is None:
        return [M]
    S, Q, _ = split(M, sub)
    return chop(S, rng=rng) + chop(Q, rng=rng)


def is_irreducible(M: ModuleRep, seed: int = DEFAULT_SEED) -> bool:
    return find_submodule(M, np.random.default_rng(seed)) is None


# --- homomorphisms and socles -----------------------------------------------

def hom_space(S: ModuleRep, M: ModuleRep) -> list[np.ndarray]:
    """Basis of Hom_G(S, M) as dim(M) x dim(S) matrices."""
    F = S.field
    dS, dM = S.dim, M.dim
    I_S, I_M = la.identity(F, dS), la.identity(F, dM)
    blocks = [la.sub(F, la.kron(F, I_S, m), la.kron(F, la.transpose(s), I_M))
              for s, m in zip(S.gens, M.gens)]
    sol = la.nullspace(F, np.concatenate(blocks))
    return [la.transpose(v.reshape(dS, dM, F.n)) for v in sol]


def isomorphic_simple(S: ModuleRep, T: ModuleRep) -> bool:
    return S.dim == T.dim and bool(hom_space(S, T))


def distinct_simples(factors: Sequence[ModuleRep]) -> list[ModuleRep]:
    out: list[ModuleRep] = []
    for S in factors:
        if not any(isomorphic_simple(S, T) for T in out):
            out.append(S)
    return out


def socle(M: ModuleRep, seed: int = DEFAULT_SEED) -> np.ndarray:
    """Basis of the socle: the sum of the images of all maps from simple modules."""
    F = M.field
    images = []
    for S in distinct_simples(chop(M, seed)):
        for X in hom_space(S, M):
            images.append(la.transpose(X))
    if not images:
        return la.zeros(F, 0, M.dim)
    return la.row_space(F, np.concatenate(images))


def socle_layers(M: ModuleRep, seed: int = DEFAULT_SEED) -> list[ModuleRep]:
    """Semisimple layers soc(M), soc(M/soc M), ... bottom first."""
    layers = []
    cur = M
    while cur.dim:
        soc = socle(cur, seed)
        S, Q, _ = split(cur, soc)
        layers.append(S)
        cur = Q
    return layers


# --- labels ------------------------------------------------------------------

def _function_degree(F: Field, values: dict[FieldElement, np.ndarray]) -> int:
    """Degree of the polynomial map t -> values[t] on GF(q) (degree < q)."""
    q = F.q
    coeffs = {0: values[F.zero]}
    total = sum(values.values()) % F.p
    coeffs[q - 1] = (-total) % F.p
    for k in range(1, q - 1):
        acc = np.zeros_like(values[F.zero])
        for t, v in values.items():
            if t:
                acc = acc + la.emul(F, la.scalar_array(t ** (-k)), v)
        coeffs[k] = (-acc) % F.p
    nonzero = [k for k, c in coeffs.items() if c.any()]
    return max(nonzero) if nonzero else -1


def a1_name(lam: int, p: int) -> str:
    """Name of L(lam) by its Steinberg factorisation, e.g. 3 at p=2 -> '1^(2)⊗1'."""
    if lam == 0:
        return "0"
    parts, i = [], 0
    while lam:
        lam, digit = divmod(lam, p)
        if digit:
            parts.append(str(digit) if i == 0 else f"{digit}^({p ** i})")
        i += 1
    return "⊗".join(reversed(parts))


def a1_weights(lam: int, p: int) -> list[int]:
    weights = [0]
    i = 0
    while lam:
        lam, digit = divmod(lam, p)
        weights = [w + (digit - 2 * j) * p ** i for w in weights for j in range(digit + 1)]
        i += 1
    return weights


@dataclass(frozen=True)
class FactorLabel:
    dim: int
    name: str
    degrees: tuple[int, ...]
    weights: tuple[int, ...] | None
    status: str  # "ok", "ambiguous" or "unrecognized"

    def __str__(self) -> str:
        return self.name


def _torus_exponents(M: ModuleRep, gset: GeneratorSet) -> tuple[int, ...] | None:
    F = M.field
    if F.q <= 2 or not gset.rank_one:
        return None
    plus, minus = M.tagged("+"), M.tagged("-")
    z = F.gen
    one = F.one
    needed = [z, -z.inv(), one, -one]
    if not all(t in plus or t in minus for t in needed):
        return None

    def n_plus(t):
        return la.matmul(F, la.matmul(F, plus[t], minus[-t.inv()]), plus[t])

    hz = la.matmul(F, n_plus(z), n_plus(-one))
    exps = []
    for e in range(F.q - 1):
        ev = la.scale(F, z ** e, la.identity(F, M.dim))
        exps += [e] * (M.dim - la.rank(F, la.sub(F, hz, ev)))
    return tuple(sorted(exps))


def label_factor(M: ModuleRep, gset: GeneratorSet) -> FactorLabel:
    """Highest-weight label of an irreducible factor, read from its generator tags.

    The highest-weight line is the fixed space of the positive families; for
    each simple pair the weight is the degree in t of x_neg(t) applied to it.
    """
    F = M.field
    pos = [g for g, tag in zip(M.gens, M.tags) if tag and tag[0] in gset.positive]
    fixed = la.nullspace(F, np.concatenate([la.sub(F, g, la.identity(F, M.dim)) for g in pos]))
    if len(fixed) != 1:
        return FactorLabel(M.dim, f"?{M.dim}", (), None, "ambiguous")
    v = fixed[0]
    degrees = []
    for _, neg in gset.simple:
        fam = M.tagged(neg)
        values = {t: la.matmul(F, g, v[:, None, :])[:, 0, :] for t, g in fam.items()}
        values[F.zero] = v
        if len(values) < F.q:
            return FactorLabel(M.dim, f"?{M.dim}", (), None, "ambiguous")
        degrees.append(_function_degree(F, values))
    degrees = tuple(degrees)
    p = F.p
    weights = _torus_exponents(M, gset)
    status = "ok"
    if gset.rank_one:
        (lam,) = degrees
        name = a1_name(lam, p)
        expected_dim = 1
        for part in a1_digits(lam, p):
            expected_dim *= part + 1
        if expected_dim != M.dim:
            status = "unrecognized"
        if weights is not None:
            want = tuple(sorted(w % (F.q - 1) for w in a1_weights(lam, p)))
            if want != weights:
                status = "unrecognized"
    elif gset.name == "A1xA1short":
        a, b = degrees
        name = "0" if a == b == 0 else f"{a1_name(a, p)}⊗{a1_name(b, p)}~"
    elif gset.name in ("A2", "A2short"):
        a, b = degrees
        name = "0" if a == b == 0 else f"{a}{b}"
    else:
        name = str(degrees)
    return FactorLabel(M.dim, name, degrees, weights, status)


def a1_digits(lam: int, p: int) -> list[int]:
    out = []
    while lam:
        lam, d = divmod(lam, p)
        out.append(d)
    return out


def label_a1_factor(M: ModuleRep, gset: GeneratorSet) -> FactorLabel:
    if not gset.rank_one:
        raise ValueError("label_a1_factor needs an A1-type generator set")
    return label_factor(M, gset)


# --- signatures -------------------------------------------------------------

@dataclass(frozen=True)
class FactorSignature:
    factors: tuple[str, ...]
    socle: tuple[tuple[str, ...], ...]
    dims: tuple[int, ...] = ()

    @classmethod
    def build(cls, factors: Sequence[str], socle: Sequence[Sequence[str]], dims=()) -> "FactorSignature":
        return cls(tuple(sorted(factors)), tuple(tuple(sorted(layer)) for layer in socle), tuple(dims))

    def to_json(self) -> dict:
        return {"factors": list(self.factors), "socle": [list(l) for l in self.socle]}

    def render(self) -> str:
        layers = " | ".join("+".join(l) for l in self.socle)
        return f"factors {{{', '.join(self.factors)}}}; socle layers (bottom first) {layers}"


def signature(M: ModuleRep, gset: GeneratorSet, seed: int = DEFAULT_SEED) -> tuple[FactorSignature, list[FactorLabel]]:
    factors = chop(M, seed)
    labels = [label_factor(S, gset) for S in factors]
    layer_names = []
    for layer in socle_layers(M, seed):
        layer_names.append([label_factor(S, gset).name for S in chop(layer, seed)])
    sig = FactorSignature.build([l.name for l in labels], layer_names, sorted(S.dim for S in factors))
    return sig, labels


def factor_dims(M: ModuleRep, seed: int = DEFAULT_SEED) -> list[int]:
    return sorted(S.dim for S in chop(M, seed))


def counter(names) -> Counter:
    return Counter(names)
