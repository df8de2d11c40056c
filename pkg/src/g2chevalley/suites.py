"""Bundled verification suites.

Each suite returns a SuiteReport: a list of checks, each with the claim it
tests in words, a verdict and JSON-ready witness data.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field as dc_field
from typing import Callable

import numpy as np

from . import linalg as la
from .chevalley import build_rep, commutator_coeffs, word, x
from .cohomology import (
    SL2Module, align_into_long_parabolic, complement_classes, conjugated_family,
    descent_verifies, h1_dim, layered_descent, level_action, levi_generators, xk0_level_one_classes,
)
from .finitegroup import conjugacy_search, enumerate_group, fixed_space
from .gf import FieldError, field_make
from .modules import DEFAULT_SEED, ModuleRep, chop, label_factor, restrict, signature
from .restriction import distinctness_failures, restriction_report, row_key, table_specs
from .roots import LONG_PARABOLIC, ROOTS, SHORT_PARABOLIC, abs_filtration, index, shape_data
from .subgroups import SubgroupSpec, standard_conjugator, steinberg_relations, subgroup_generators, xkl


@dataclass
class Check:
    id: str
    claim: str
    passed: bool
    witness: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {"id": self.id, "claim": self.claim, "verdict": "pass" if self.passed else "fail",
                "witness": self.witness}


@dataclass
class SuiteReport:
    suite: str
    params: dict
    checks: list[Check] = dc_field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, id: str, claim: str, passed: bool, **witness) -> Check:
        c = Check(id, claim, bool(passed), witness)
        self.checks.append(c)
        return c

    def to_json(self) -> dict:
        return {"suite": self.suite, "params": self.params, "pass": self.passed,
                "seconds": round(self.seconds, 3),
                "checks": [c.to_json() for c in sorted(self.checks, key=lambda c: c.id)]}

    def lines(self) -> list[str]:
        return [f"[{'PASS' if c.passed else 'FAIL'}] {c.id}: {c.claim}" for c in self.checks]


# --- filtration --------------------------------------------------------------

def level_module(F, J, level: int, gset) -> ModuleRep:
    """The Levi action on Q(level)/Q(level+1), tagged like the Levi generator set."""
    rep = build_rep(F)
    indices = [index(d.root) for d in shape_data(J) if d.level == level]
    tagged = gset.tagged_matrices(rep)
    gens = [level_action(rep, m, indices) for _, _, m in tagged]
    return ModuleRep(F, len(indices), gens, [(f, t) for f, t, _ in tagged])


def suite_filtration(report: SuiteReport, **_):
    long_levels = abs_filtration(LONG_PARABOLIC)
    short_levels = abs_filtration(SHORT_PARABOLIC)
    report.add("filtration.long", "long-parabolic radical has three levels of dims 2,1,2 and high weights 1,0,1",
               [l.dim for l in long_levels] == [2, 1, 2] and [l.highweight for l in long_levels] == [1, 0, 1],
               dims=[l.dim for l in long_levels], weights=[l.highweight for l in long_levels])
    report.add("filtration.short", "short-parabolic radical has levels of dims 4,1 with high weights {3,0}",
               [l.dim for l in short_levels] == [4, 1] and {l.highweight for l in short_levels} == {3, 0},
               dims=[l.dim for l in short_levels], weights=[l.highweight for l in short_levels])
    F = field_make(2, 2)
    gset = subgroup_generators(SubgroupSpec("Ltilde0", F))
    M = level_module(F, SHORT_PARABOLIC, 1, gset)
    labels = [label_factor(S, gset) for S in chop(M)]
    report.add("filtration.short_level1_p2", "at p=2 the short level-1 module is the twisted tensor 1^(2)⊗1",
               [l.name for l in labels] == ["1^(2)⊗1"] and labels[0].status == "ok",
               labels=[l.name for l in labels], torus_exponents=list(labels[0].weights or ()))


# --- commutator formula ------------------------------------------------------

COMMUTATOR_FIELDS = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (5, 1), (7, 1)]


def commutator_pairs(only_roots: bool = False):
    for r in ROOTS:
        for s in ROOTS:
            if r == s or r == -s:
                continue
            if only_roots and not commutator_coeffs(r, s):
                continue
            yield r, s


def check_commutators(F, samples: int, rng) -> tuple[int, list[str]]:
    rep = build_rep(F)
    ts = [F.random(rng) for _ in range(samples)]
    us = [F.random(rng) for _ in range(samples)]
    bad, count = [], 0
    for r, s in commutator_pairs():
        ri, si = index(r), index(s)
        a, b = rep.xmat_batch(si, us), rep.xmat_batch(ri, ts)
        ainv, binv = rep.xmat_batch(si, [-u for u in us]), rep.xmat_batch(ri, [-t for t in ts])
        lhs = la.matmul(F, la.matmul(F, la.matmul(F, ainv, binv), a), b)
        rhs = np.broadcast_to(rep.identity_matrix, lhs.shape).copy()
        for i, j, target, c in commutator_coeffs(r, s):
            params = [(-t) ** i * u ** j * c for t, u in zip(ts, us)]
            rhs = la.matmul(F, rhs, rep.xmat_batch(index(target), params))
        count += 1
        if not np.array_equal(lhs, rhs):
            bad.append(f"{tuple(r)},{tuple(s)}")
    return count, bad


def suite_commutators(report: SuiteReport, seed: int = DEFAULT_SEED, samples: int = 20, **_):
    rng = np.random.default_rng(seed)
    for p, n in COMMUTATOR_FIELDS:
        F = field_make(p, n)
        count, bad = check_commutators(F, samples, rng)
        nontrivial = sum(1 for _ in commutator_pairs(only_roots=True))
        report.add(f"commutators.GF({F.q})",
                   "matrix commutators of root elements equal the structure-constant product",
                   not bad, ordered_pairs=count, pairs_with_root_sum=nontrivial,
                   samples_per_pair=samples, failures=bad[:5])


# --- complements X_{k,l} -------------------------------------------------------

def closed_forms(gset, k) -> list[str]:
    """n+(t) = n_2(t^2) x_4(k^2) and h+(t) = h_2(t^2), checked for every t != 0."""
    F = gset.field
    rep = build_rep(F)
    bad = []
    for t in F.nonzero():
        n_plus = gset.element("+", t, rep) @ gset.element("-", -t.inv(), rep) @ gset.element("+", t, rep)
        n_minus1 = gset.element("+", -F.one, rep) @ gset.element("-", F.one, rep) @ gset.element("+", -F.one, rep)
        if n_plus != rep.nmat(2, t * t) @ rep.xmat(4, k * k):
            bad.append(f"n+({t!r})")
        if n_plus @ n_minus1 != rep.hmat(2, t * t):
            bad.append(f"h+({t!r})")
    return bad


def xkl_parameters(F, rng, random_count: int = 50):
    if F.q <= 4:
        return list(itertools.product(F.elements(), F.elements()))
    return [(F.random(rng), F.random(rng)) for _ in range(random_count)]


def suite_relations(report: SuiteReport, p: int = 2, n: int = 2, k=None, l=None,
                    seed: int = DEFAULT_SEED, **_):
    F = field_make(p, n)
    rep = build_rep(F)
    rng = np.random.default_rng(seed)
    if k is not None:
        pairs = [(F(k), F(l if l is not None else 0))]
    else:
        pairs = xkl_parameters(F, rng)
    for kk, ll in pairs:
        gset = subgroup_generators(xkl(F, kk, ll))
        rel = steinberg_relations(gset, rep)
        cid = f"relations.GF({F.q}).k={kk!r},l={ll!r}"
        if p == 2:
            bad = closed_forms(gset, kk)
            report.add(cid, "X_{k,l} satisfies the rank-one Steinberg relations and the n+/h+ closed forms in characteristic 2",
                       rel.ok and not bad, relation_failures=rel.failures, closed_form_failures=bad)
        else:
            # t -> t^2 is not additive in odd characteristic, so even X_{0,0} fails
            report.add(cid, "away from characteristic 2, X_{k,l} violates the Steinberg relations",
                       not rel.ok, relations_hold=rel.ok, relation_failures=rel.failures[:3])


def suite_relations_all(report: SuiteReport, seed: int = DEFAULT_SEED, **_):
    for n in (1, 2, 3):
        suite_relations(report, p=2, n=n, seed=seed)


# --- explicit conjugators ------------------------------------------------------

def conjugator_check(F, kk, ll) -> tuple[bool, dict]:
    rep = build_rep(F)
    try:
        w, target = standard_conjugator(kk, ll)
    except FieldError as exc:
        return True, {"skipped": str(exc)}
    g = rep.eval_word(w)
    gi = g.inv()
    src = subgroup_generators(xkl(F, kk, ll))
    dst = subgroup_generators(target)
    n2 = rep.nmat(2, F.one)
    n2i = n2.inv()
    for t in F.nonzero():
        a = g @ src.element("+", t, rep) @ gi
        b = dst.element("+", t, rep)
        if rep.unipotent_factorize(a) != rep.unipotent_factorize(b):
            return False, {"t": t.to_list(), "family": "+"}
        a = n2 @ g @ src.element("-", t, rep) @ gi @ n2i
        b = n2 @ dst.element("-", t, rep) @ n2i
        if rep.unipotent_factorize(a) != rep.unipotent_factorize(b):
            return False, {"t": t.to_list(), "family": "-"}
    return True, {"word": w.to_json(), "target": target.label()}


def suite_conjugators(report: SuiteReport, p: int = 2, n: int = 3, **_):
    F = field_make(p, n)
    skipped = 0
    for kk, ll in itertools.product(F.elements(), F.elements()):
        if not kk and not ll:
            continue
        ok, wit = conjugator_check(F, kk, ll)
        skipped += "skipped" in wit
        report.add(f"conjugators.GF({F.q}).k={kk!r},l={ll!r}",
                   "the explicit conjugator carries X_{k,l} onto X_{1,0} (k != 0) or X_{0,1} (k = 0) letter by letter",
                   ok, **wit)
    if all(c.is_cube() for c in F.nonzero()):
        report.add(f"conjugators.GF({F.q}).cube_branch", "every l is a cube here, so the k = 0 branch ran for all l",
                   skipped == 0, skipped=skipped)


def suite_conjugators_all(report: SuiteReport, **_):
    suite_conjugators(report, p=2, n=2)
    suite_conjugators(report, p=2, n=3)


# --- finite identifications in G2(2) -----------------------------------------

def g2_store(F):
    rep = build_rep(F)
    return enumerate_group(subgroup_generators(SubgroupSpec("G2", F)).matrices(rep), cap=20_000)


def suite_identifications(report: SuiteReport, seed: int = DEFAULT_SEED, **_):
    F2 = field_make(2, 1)
    rep = build_rep(F2)
    G = g2_store(F2)
    report.add("identifications.order", "the group generated by all x_{+-i}(1) over GF(2) has order 12096",
               G.order == 12096, order=G.order)

    def gens(name, **kw):
        spec = xkl(F2, *kw["kl"]) if name == "Xkl" else SubgroupSpec(name, F2)
        return subgroup_generators(spec).matrices(rep)

    for a, b in [("Z1", "Z2"), ("Z1", "Lbar0"), ("Z2", "Lbar0")]:
        res = conjugacy_search(gens(a), gens(b), G)
        wit = {"result": res.describe(), "orders": list(res.orders)}
        if res.found:
            F4 = field_make(2, 2)
            sa, _ = signature(restrict(subgroup_generators(SubgroupSpec(a, F2))),
                              subgroup_generators(SubgroupSpec(a, F2)), seed)
            sb, _ = signature(restrict(subgroup_generators(SubgroupSpec(b, F2))),
                              subgroup_generators(SubgroupSpec(b, F2)), seed)
            wit["signatures_GF2"] = [sa.render(), sb.render()]
            sa4 = restriction_report(SubgroupSpec(a, F4), seed).observed
            sb4 = restriction_report(SubgroupSpec(b, F4), seed).observed
            wit["signatures_GF4"] = [sa4.render(), sb4.render()]
        report.add(f"identifications.nonconjugate.{a}-{b}",
                   f"{a}(2) and {b}(2) are not conjugate in G2(2)", not res.found, **wit)
    for kl, other in [((1, 0), "Z1"), ((0, 1), "Z2")]:
        res = conjugacy_search(gens("Xkl", kl=kl), gens(other), G)
        wit = {"result": res.describe()}
        if res.found:
            wit["conjugator_word"] = res.word.to_json() if res.word is not None else None
        else:
            sa = restriction_report(xkl(F2, *kl), seed).observed
            sb = restriction_report(SubgroupSpec(other, F2), seed).observed
            wit["rational_class_split"] = True
            wit["signatures"] = [sa.render(), sb.render()]
        ok = res.found or wit["signatures"][0] == wit["signatures"][1]
        report.add(f"identifications.X{kl[0]}{kl[1]}-{other}",
                   f"X_{{{kl[0]},{kl[1]}}}(2) is conjugate to {other}(2) in G2(2)", ok, **wit)
    for p in (2, 3, 5, 7):
        F = field_make(p)
        dim = len(fixed_space(subgroup_generators(SubgroupSpec("G2", F)).matrices(build_rep(F))))
        want = 1 if p == 2 else 0
        report.add(f"identifications.fixed_vector.p{p}",
                   "V7 has a G2-fixed line exactly when p = 2", dim == want, fixed_dim=dim)
    F4 = field_make(2, 2)
    sigs = {name: restriction_report(SubgroupSpec(name, F4), seed).observed for name in ("Z1", "Z2", "Lbar0")}
    distinct = len({s for s in sigs.values()}) == 3
    report.add("identifications.signatures_GF4",
               "over GF(4) the restrictions of V7 to Z1, Z2 and Lbar0 are pairwise distinct, Z1 and Z2 differing only in socle",
               distinct and sigs["Z1"].factors == sigs["Z2"].factors,
               **{k: v.render() for k, v in sigs.items()})


# --- restriction table ---------------------------------------------------------

def suite_table(report: SuiteReport, p: int | None = None, seed: int = DEFAULT_SEED, **_):
    reports = []
    for spec in table_specs():
        if p is not None and spec.field.p != p:
            continue
        if spec.name == "TwistedDiag" and spec.field.p == 2 and spec.r == spec.s == 0:
            continue  # the same subgroup as Z1
        rr = restriction_report(spec, seed)
        reports.append(rr)
        report.add(f"table.{row_key(spec)}", f"V7 restricted to {spec.label()} over GF({spec.field.q}) matches the table row",
                   rr.ok, **rr.to_json())
    bad = distinctness_failures(reports)
    report.add(f"table.distinct{'' if p is None else f'.p{p}'}",
               "restrictions are pairwise distinct except for subgroups known to be conjugate", not bad,
               failures=bad, rows=len(reports))


# --- H1 ------------------------------------------------------------------------

H1_CASES = [(4, "1", 1), (8, "1t2", 1), (9, "1x1t3", 2), (4, "st", 0), (4, "0", 0)]


def suite_h1(report: SuiteReport, **_):
    for q0, module, want in H1_CASES:
        res = h1_dim(q0, module)
        report.add(f"h1.SL2({q0}).{module}", f"dim H^1(SL2({q0}), {module}) = {want} over GF({q0})",
                   res.dim_over_q0 == want and res.b1 == res.module_dim - res.fixed, **res.to_json())
    nat = h1_dim(4, "1")
    tw = h1_dim(4, "1t2")
    report.add("h1.SL2(4).twists", "the natural module and its Frobenius twist, related by a field automorphism, have equal H^1",
               nat.dim_over_q0 == tw.dim_over_q0, natural=nat.dim_over_q0, twisted=tw.dim_over_q0)


# --- complements ---------------------------------------------------------------

def level_one_sl2_module(F) -> SL2Module:
    rep = build_rep(F)
    return SL2Module(F, 2, "Q/Q(2)",
                     lambda t: level_action(rep, rep.xmat(2, t)),
                     lambda t: level_action(rep, rep.xmat(-2, t)))


def suite_complements(report: SuiteReport, seed: int = DEFAULT_SEED, samples: int = 2, **_):
    F4 = field_make(2, 2)
    classes, where = xk0_level_one_classes(F4)
    report.add("complements.GF4.count", "SL2(4) on the level-one module has exactly 4 classes of complements",
               classes.count == 4, count=classes.count, z1=len(classes.z1), b1=len(classes.b1))
    report.add("complements.GF4.representatives", "the X_{k,0}, k in GF(4), represent the 4 classes",
               sorted(where.values()) == list(range(4)),
               classes={repr(k): v for k, v in where.items()})
    h1 = h1_dim(4, level_one_sl2_module(F4))
    report.add("complements.GF4.cross_check", "class count equals |H^1| from the presentation",
               classes.count == F4.q ** h1.dim_over_q0, h1=h1.dim_over_q0)
    F2 = field_make(2, 1)
    c2, _ = xk0_level_one_classes(F2)
    report.add("complements.GF2.count", "over GF(2) all complements to the level-one module are conjugate",
               c2.count == 1, count=c2.count)
    rep4 = build_rep(F4)
    levi = levi_generators(F4, rep4)
    trivial = complement_classes(levi, [la.identity(F4, 1)] * len(levi))
    report.add("complements.trivial", "the trivial module has one class of complements", trivial.count == 1,
               count=trivial.count)

    rng = np.random.default_rng(seed)
    bad, idem = [], []
    for kk, ll in itertools.product(F4.elements(), F4.elements()):
        gset = subgroup_generators(xkl(F4, kk, ll))
        res = layered_descent(gset, rep4)
        if (res.k, res.l) != (kk, ll) or len(res.conjugator):
            idem.append(f"{kk!r},{ll!r}")
        for _ in range(samples):
            u = rep4.eval_word(random_radical_word(F4, rng))
            moved = conjugated_family(gset, u, rep4)
            res = layered_descent(moved, rep4)
            if not descent_verifies(moved, res, rep4) or (res.k, res.l) != (kk, ll):
                bad.append({"input": [kk.to_list(), ll.to_list()], "output": [res.k.to_list(), res.l.to_list()],
                            "conjugator_verified": descent_verifies(moved, res, rep4)})
    report.add("complements.descent.fixed_points", "descent leaves every X_{k,l} in place with the empty word",
               not idem, failures=idem)
    report.add("complements.descent.round_trip",
               "descent returns random radical conjugates of X_{k,l} over GF(4) to (k,l)",
               not bad, failures=bad[:8], failure_count=len(bad), trials=samples * 16)
    G = g2_store(F2)
    _, aligned = align_into_long_parabolic(subgroup_generators(SubgroupSpec("Z1", F2)), G)
    res = layered_descent(aligned, build_rep(F2))
    report.add("complements.descent.Z1", "Z1 over GF(2) descends to some X_{k,l} with (k,l) != (0,0)",
               bool(res.k or res.l) and descent_verifies(aligned, res), k=res.k.to_list(), l=res.l.to_list())


def random_radical_word(F, rng):
    return word(*(x(i, F.random(rng)) for i in (1, 3, 4, 5, 6)))


# --- subsystem orders ------------------------------------------------------------

ORDER_CASES = [("G2", 2, 12096), ("A2", 2, 168), ("A2short", 3, 5616), ("A1xA1short", 2, 36)]


def suite_orders(report: SuiteReport, **_):
    for name, p, want in ORDER_CASES:
        F = field_make(p)
        order = enumerate_group(subgroup_generators(SubgroupSpec(name, F)).matrices(build_rep(F)),
                                cap=20_000).order
        report.add(f"orders.{name}.GF{p}", f"{name} over GF({p}) has order {want}", order == want, order=order)
    F = field_make(2)
    order = enumerate_group(subgroup_generators(SubgroupSpec("A2short", F)).matrices(build_rep(F)),
                            cap=20_000).order
    report.add("orders.A2short.GF2", "short root elements generate more than an A2 in characteristic 2",
               order > 168, order=order)


SUITES: dict[str, Callable] = {
    "filtration": suite_filtration,
    "commutators": suite_commutators,
    "relations": suite_relations,
    "conjugators": suite_conjugators,
    "identifications": suite_identifications,
    "table": suite_table,
    "h1": suite_h1,
    "complements": suite_complements,
    "orders": suite_orders,
}


def run_suite(name: str, **params) -> SuiteReport:
    if name != "all" and name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {', '.join(list(SUITES) + ['all'])}")
    clean = {k: v for k, v in params.items() if v is not None}
    report = SuiteReport(name, clean)
    start = time.perf_counter()
    if name == "all":
        seed = clean.get("seed", DEFAULT_SEED)
        for fn in (suite_filtration, suite_commutators, suite_relations_all, suite_conjugators_all,
                   suite_identifications, suite_table, suite_h1, suite_complements, suite_orders):
            fn(report, seed=seed)
    else:
        SUITES[name](report, **clean)
    report.seconds = time.perf_counter() - start
    return report
