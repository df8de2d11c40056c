"""Generator families for the subgroups of G2 studied here.

Every subgroup is described by one-parameter families t -> element.  A rank-one
(A1-type) subgroup has families "+" and "-"; the rank-two subsystem groups
have one family per root.  ``simple`` lists the (positive, negative) family
pairs used to read off highest weights, ``positive`` the families spanning a
maximal unipotent subgroup.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass, field as dc_field
from math import factorial
from typing import Callable

import numpy as np

from . import linalg as la
from .chevalley import (GroupWord, RepElement, Representation, build_rep, commutator_coeffs,
                        h, integral_form, word, x)
from .gf import Field, FieldElement, FieldError, field_make
from .roots import Root

NAMES = ("A2", "A2short", "A1xA1short", "Lbar0", "Ltilde0", "Z1", "Z2", "Xkl",
         "TwistedDiag", "IrredA1inA2", "PrincipalA1", "G2")


class SubgroupError(ValueError):
    pass


@dataclass(frozen=True)
class Family:
    """A one-parameter family of group elements."""

    name: str
    word: Callable[[FieldElement], GroupWord] | None = None
    matrix: Callable[[Representation, FieldElement], RepElement] | None = None

    def __call__(self, rep: Representation, t: FieldElement) -> RepElement:
        if self.matrix is not None:
            return self.matrix(rep, t)
        return rep.eval_word(self.word(t))


@dataclass
class GeneratorSet:
    name: str
    field: Field
    families: dict[str, Family]
    simple: list[tuple[str, str]]
    positive: list[str]
    notes: list[str] = dc_field(default_factory=list)

    @property
    def rank_one(self) -> bool:
        return set(self.families) == {"+", "-"}

    def element(self, family: str, t, rep: Representation | None = None) -> RepElement:
        rep = rep or build_rep(self.field)
        return self.families[family](rep, self.field(t) if not isinstance(t, FieldElement) else t)

    def sample_parameters(self, nonzero: bool = True) -> list[FieldElement]:
        """All of GF(q) for small q, otherwise 1 and a few powers of the primitive element."""
        F = self.field
        if F.q <= 32:
            return list(F.nonzero()) if nonzero else list(F.elements())
        return [F.gen ** i for i in range(F.n + 1)]

    def tagged_matrices(self, rep: Representation | None = None,
                        params: list[FieldElement] | None = None) -> list[tuple[str, FieldElement, RepElement]]:
        rep = rep or build_rep(self.field)
        params = params if params is not None else self.sample_parameters()
        return [(name, t, fam(rep, t)) for name, fam in self.families.items() for t in params]

    def matrices(self, rep: Representation | None = None, params=None) -> list[RepElement]:
        return [m for _, _, m in self.tagged_matrices(rep, params)]

    def to_json(self, rep: Representation | None = None, params=None) -> dict:
        out = {"name": self.name, "field": [self.field.p, self.field.n], "notes": self.notes,
               "families": {}}
        for name, t, m in self.tagged_matrices(rep, params):
            fam = self.families[name]
            entry = {"t": t.to_list(), "matrix": m.to_json()}
            if fam.word is not None:
                entry["word"] = fam.word(t).to_json()
            out["families"].setdefault(name, []).append(entry)
        return out


@dataclass(frozen=True)
class SubgroupSpec:
    name: str
    field: Field
    k: FieldElement | None = None
    l: FieldElement | None = None
    r: int = 0
    s: int = 0

    def __post_init__(self):
        p = self.field.p
        if self.name not in NAMES:
            raise SubgroupError(f"unknown subgroup {self.name!r}")
        if self.name == "IrredA1inA2" and p == 2:
            raise SubgroupError("IrredA1inA2 needs p > 2")
        if self.name == "PrincipalA1" and p < 7:
            raise SubgroupError("PrincipalA1 needs p >= 7")
        if self.name == "Xkl":
            if self.k is None or self.l is None:
                raise SubgroupError("Xkl needs parameters k and l")
            if self.k.field is not self.field or self.l.field is not self.field:
                raise FieldError("k, l must lie in the subgroup's field")

    @property
    def flags(self) -> list[str]:
        out = []
        p = self.field.p
        if self.name in ("Z1", "Z2") and p != 2:
            out.append(f"{self.name} is a characteristic-2 construction; built here at p={p}")
        if self.name == "A2short" and p != 3:
            out.append("short roots only close up to a subsystem when p=3")
        if self.name == "Xkl":
            if not self.k and not self.l:
                out.append("X_{0,0} equals Lbar0")
            if p != 2:
                out.append("X_{k,l} is a complement only when p=2; relation checks decide")
        return out

    def label(self) -> str:
        if self.name == "Xkl":
            return f"X[{self.k!r},{self.l!r}]"
        if self.name == "TwistedDiag":
            return f"TwistedDiag({self.r},{self.s})"
        return self.name


def xkl(field: Field, k, l) -> SubgroupSpec:
    return SubgroupSpec("Xkl", field, k=field(k) if not isinstance(k, FieldElement) else k,
                        l=field(l) if not isinstance(l, FieldElement) else l)


# --- helpers ---------------------------------------------------------------

def _root_families(indices) -> dict[str, Family]:
    return {f"x{i}": Family(f"x{i}", (lambda i: lambda t: x(i, t))(i)) for i in indices}


def _rank_one(name, field, plus, minus, notes=()) -> GeneratorSet:
    fams = {"+": Family("+", plus), "-": Family("-", minus)}
    return GeneratorSet(name, field, fams, [("+", "-")], ["+"], list(notes))


@functools.lru_cache(maxsize=None)
def _sym2_constants() -> tuple[int, int, int, int]:
    """Integer constants (c, a, b, d) so that

    x+(t) = x_2(t) x_5(2t) x_6(c t^2),  x-(t) = x_-2(2a t) x_-5(b t) x_-6(d t^2)

    is the symmetric-square image of SL2 in the long A2.  c and d come from
    additivity; the signs a, b are fixed by the Weyl relation over GF(7).
    """
    (_, _, _, C), = commutator_coeffs(Root(0, 1), Root(3, 1))
    c = -C
    F = field_make(7)
    rep = build_rep(F)
    for a in (1, -1):
        for b in (1, -1):
            (_, _, _, D), = commutator_coeffs(Root(0, -1), Root(-3, -1))
            d = -a * b * D
            fam = _rank_one("probe", F,
                            lambda t: word(x(2, t), x(5, 2 * t), x(6, c * t * t)),
                            lambda t, a=a, b=b, d=d: word(x(-2, 2 * a * t), x(-5, b * t), x(-6, d * t * t)))
            if steinberg_relations(fam, rep, list(F.elements())).ok:
                return c, a, b, d
    raise AssertionError("no sign choice realises the symmetric square")


def _principal_matrices(field: Field):
    p = field.p
    E = integral_form()
    e = E[Root(1, 0)] + E[Root(0, 1)]
    f = 6 * E[Root(-1, 0)] + 10 * E[Root(0, -1)]

    def powers(m):
        out, cur = [], np.eye(7, dtype=object)
        for k in range(7):
            out.append(la.from_int_matrix(field, (cur * pow(factorial(k), -1, p)) % p))
            cur = cur.dot(m.astype(object))
        assert not cur.any()
        return out

    def exp_family(pw):
        def fam(rep: Representation, t: FieldElement) -> RepElement:
            out = la.zeros(field, 7, 7)
            tk = field.one
            for k in range(7):
                out = (out + la.scale(field, tk, pw[k])) % p
                tk = tk * t
            return RepElement(field, out)
        return fam

    return exp_family(powers(e)), exp_family(powers(f))


# --- constructors ----------------------------------------------------------

def subgroup_generators(spec: SubgroupSpec) -> GeneratorSet:
    F, name = spec.field, spec.name
    notes = spec.flags
    if name == "Lbar0":
        return _rank_one(name, F, lambda t: x(2, t), lambda t: x(-2, t), notes)
    if name == "Ltilde0":
        return _rank_one(name, F, lambda t: x(1, t), lambda t: x(-1, t), notes)
    if name == "A2":
        fams = _root_families([2, 5, 6, -2, -5, -6])
        return GeneratorSet(name, F, fams, [("x2", "x-2"), ("x5", "x-5")], ["x2", "x5", "x6"], notes)
    if name == "A2short":
        fams = _root_families([1, 3, 4, -1, -3, -4])
        return GeneratorSet(name, F, fams, [("x1", "x-1"), ("x3", "x-3")], ["x1", "x3", "x4"], notes)
    if name == "A1xA1short":
        fams = _root_families([6, -6, 1, -1])
        return GeneratorSet(name, F, fams, [("x6", "x-6"), ("x1", "x-1")], ["x6", "x1"], notes)
    if name == "G2":
        fams = _root_families(list(range(1, 7)) + list(range(-1, -7, -1)))
        return GeneratorSet(name, F, fams, [("x1", "x-1"), ("x2", "x-2")],
                            [f"x{i}" for i in range(1, 7)], notes)
    if name == "Z1":
        return _rank_one(name, F, lambda t: word(x(6, t), x(1, t)),
                         lambda t: word(x(-6, t), x(-1, t)), notes)
    if name == "Z2":
        return _rank_one(name, F, lambda t: word(x(2, t), x(6, t * t)),
                         lambda t: word(x(-5, t), x(-6, t * t)), notes)
    if name == "Xkl":
        k, l = spec.k, spec.l
        return _rank_one(spec.label(), F,
                         lambda t: word(x(2, t * t), x(3, k * t), x(6, k ** 3 * t + l * t)),
                         lambda t: word(x(-2, t * t), x(1, k * t), x(5, l * t)), notes)
    if name == "TwistedDiag":
        qr, qs = F.p ** spec.r, F.p ** spec.s
        return _rank_one(spec.label(), F,
                         lambda t: word(x(6, t ** qr), x(1, t ** qs)),
                         lambda t: word(x(-6, t ** qr), x(-1, t ** qs)), notes)
    if name == "IrredA1inA2":
        c, a, b, d = _sym2_constants()
        return _rank_one(name, F,
                         lambda t: word(x(2, t), x(5, 2 * t), x(6, c * t * t)),
                         lambda t: word(x(-2, 2 * a * t), x(-5, b * t), x(-6, d * t * t)), notes)
    if name == "PrincipalA1":
        plus, minus = _principal_matrices(F)
        fams = {"+": Family("+", None, plus), "-": Family("-", None, minus)}
        return GeneratorSet(name, F, fams, [("+", "-")], ["+"], notes)
    raise SubgroupError(f"unknown subgroup {name!r}")


def frobenius_twist_gens(g: GeneratorSet, r: int) -> GeneratorSet:
    """Replace every parameter t by t^(p^r)."""
    e = g.field.p ** r

    def twisted(fam: Family) -> Family:
        if fam.word is not None:
            return Family(fam.name, lambda t: fam.word(t ** e))
        return Family(fam.name, None, lambda rep, t: fam.matrix(rep, t ** e))

    return GeneratorSet(f"{g.name}^({g.field.p}^{r})" if r else g.name, g.field,
                        {k: twisted(v) for k, v in g.families.items()},
                        list(g.simple), list(g.positive), list(g.notes))


# --- relations ------------------------------------------------------------

@dataclass
class RelationReport:
    ok: bool
    failures: list[str]

    def __bool__(self) -> bool:
        return self.ok


def steinberg_relations(g: GeneratorSet, rep: Representation, params=None,
                        max_failures: int = 5) -> RelationReport:
    """Check additivity of x+-, h+(t)h+(u) = h+(tu), and n+(t) x+(t1) n+(t)^-1 = x-(-t^-2 t1)."""
    F = g.field
    params = list(F.elements()) if params is None else list(params)
    nonzero = [t for t in params if t]
    plus, minus = g.families["+"], g.families["-"]
    cache: dict[tuple[str, FieldElement], RepElement] = {}

    def fam(name, t):
        key = (name, t)
        if key not in cache:
            cache[key] = (plus if name == "+" else minus)(rep, t)
        return cache[key]

    failures: list[str] = []

    def fail(msg):
        failures.append(msg)
        return len(failures) >= max_failures

    def n_plus(t):
        return fam("+", t) @ fam("-", -t.inv()) @ fam("+", t)

    def h_plus(t):
        return n_plus(t) @ n_plus(-F.one)

    for name in ("+", "-"):
        for t1 in params:
            for t2 in params:
                if fam(name, t1) @ fam(name, t2) != fam(name, t1 + t2):
                    if fail(f"(i) x{name}({t1!r}) x{name}({t2!r}) != x{name}({t1 + t2!r})"):
                        return RelationReport(False, failures)
    hs = {t: h_plus(t) for t in nonzero}
    for t in nonzero:
        for u in nonzero:
            rhs = hs[t * u] if (t * u) in hs else h_plus(t * u)
            if hs[t] @ hs[u] != rhs:
                if fail(f"(ii) h+({t!r}) h+({u!r}) != h+({t * u!r})"):
                    return RelationReport(False, failures)
    for t in nonzero:
        nt = n_plus(t)
        nt_inv = nt.inv()
        for t1 in params:
            if nt @ fam("+", t1) @ nt_inv != fam("-", -t1 / (t * t)):
                if fail(f"(iii) fails at t={t!r}, t1={t1!r}"):
                    return RelationReport(False, failures)
    return RelationReport(not failures, failures)


def n_plus(g: GeneratorSet, rep: Representation, t: FieldElement) -> RepElement:
    return g.element("+", t, rep) @ g.element("-", -t.inv(), rep) @ g.element("+", t, rep)


def h_plus(g: GeneratorSet, rep: Representation, t: FieldElement) -> RepElement:
    return n_plus(g, rep, t) @ n_plus(g, rep, -g.field.one)


# --- explicit conjugators --------------------------------------------------

def standard_conjugator(k: FieldElement, l: FieldElement) -> tuple[GroupWord, SubgroupSpec]:
    """A word g with g X_{k,l} g^-1 equal to X_{1,0} (k != 0) or X_{0,1} (k = 0)."""
    F = k.field
    if not k and not l:
        raise SubgroupError("X_{0,0} is Lbar0; no conjugator to X_{1,0} or X_{0,1}")
    parts = []
    if k:
        if k != F.one:
            parts.append(h(4, k.inv()))
        if l:
            parts.append(x(4, l / k))
        return word(*parts), xkl(F, 1, 0)
    if not l.is_cube():
        raise FieldError(f"no rational conjugator in {F}: {l!r} is not a cube; extend the field")
    c = l.cube_root()
    if c != F.one:
        parts.append(h(4, c.inv()))
    return word(*parts), xkl(F, 0, 1)
