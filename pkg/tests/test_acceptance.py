"""One test per acceptance criterion, each timed against its limit.

A summary line per criterion is printed at the end of the pytest run.
"""

import itertools
import time

import numpy as np

from g2chevalley.chevalley import build_rep
from g2chevalley.cohomology import (
    conjugated_family, descent_verifies, h1_dim, layered_descent,
    xk0_level_one_classes,
)
from g2chevalley.finitegroup import conjugacy_search, enumerate_group, fixed_space
from g2chevalley.gf import field_make
from g2chevalley.modules import chop, label_factor
from g2chevalley.restriction import distinctness_failures, restriction_report, row_key, table_specs
from g2chevalley.roots import LONG_PARABOLIC, SHORT_PARABOLIC, abs_filtration
from g2chevalley.subgroups import SubgroupSpec, steinberg_relations, subgroup_generators, xkl
from g2chevalley.suites import (
    COMMUTATOR_FIELDS, check_commutators, closed_forms, conjugator_check, level_module,
    random_radical_word,
)

SEED = 20240607


def test_criterion_01_filtration(criterion):
    start = time.perf_counter()
    long_levels = abs_filtration(LONG_PARABOLIC)
    short_levels = abs_filtration(SHORT_PARABOLIC)
    F = field_make(2, 2)
    gset = subgroup_generators(SubgroupSpec("Ltilde0", F))
    labels = [label_factor(S, gset).name for S in chop(level_module(F, SHORT_PARABOLIC, 1, gset))]
    ok = ([m.dim for m in long_levels] == [2, 1, 2]
          and [m.highweight for m in long_levels] == [1, 0, 1]
          and [m.dim for m in short_levels] == [4, 1]
          and {m.highweight for m in short_levels} == {3, 0}
          and labels == ["1^(2)⊗1"])
    elapsed = time.perf_counter() - start
    criterion(1, "parabolic filtrations and the p=2 short level-1 label", ok, elapsed, 1, f"labels {labels}")
    assert ok and elapsed < 1


def test_criterion_02_commutators(criterion):
    start = time.perf_counter()
    rng = np.random.default_rng(SEED)
    failures, pairs = [], 0
    for p, n in COMMUTATOR_FIELDS:
        count, bad = check_commutators(field_make(p, n), 20, rng)
        pairs = count
        failures += [f"GF({p}^{n}) {b}" for b in bad]
    elapsed = time.perf_counter() - start
    criterion(2, "commutator formula on all ordered root pairs, 20 samples, 7 fields", not failures, elapsed, 10,
              f"{pairs} ordered pairs per field")
    assert not failures and elapsed < 10


def test_criterion_03_xkl_relations(criterion):
    start = time.perf_counter()
    rng = np.random.default_rng(SEED)
    bad = []
    for n in (1, 2, 3):
        F = field_make(2, n)
        rep = build_rep(F)
        if F.q <= 4:
            pairs = list(itertools.product(F.elements(), F.elements()))
        else:
            pairs = [(F.random(rng), F.random(rng)) for _ in range(50)]
        for k, l in pairs:
            gset = subgroup_generators(xkl(F, k, l))
            if not steinberg_relations(gset, rep).ok or closed_forms(gset, k):
                bad.append((F.q, repr(k), repr(l)))
    elapsed = time.perf_counter() - start
    criterion(3, "Steinberg relations and n+/h+ closed forms for X_{k,l}, p=2", not bad, elapsed, 10)
    assert not bad and elapsed < 10


def test_criterion_04_conjugators(criterion):
    start = time.perf_counter()
    bad, skipped, k0_branch = [], [], 0
    for n in (2, 3):
        F = field_make(2, n)
        for k, l in itertools.product(F.elements(), F.elements()):
            if not k and not l:
                continue
            ok, wit = conjugator_check(F, k, l)
            if "skipped" in wit:
                skipped.append((F.q, repr(l)))
            elif not ok:
                bad.append((F.q, repr(k), repr(l)))
            elif not k and F.q == 8:
                k0_branch += 1
    ok = not bad and k0_branch == 7 and all(q == 4 for q, _ in skipped)
    elapsed = time.perf_counter() - start
    criterion(4, "explicit conjugators over GF(4) and GF(8)", ok, elapsed, 5,
              f"k=0 branch over GF(8): {k0_branch}/7; GF(4) non-cubes skipped: {len(skipped)}")
    assert ok and elapsed < 5


def test_criterion_05_restriction_table(criterion):
    start = time.perf_counter()
    reports = [restriction_report(spec, SEED) for spec in table_specs()]
    mismatched = [row_key(r.spec) + ":" + r.verdict for r in reports if not r.ok]
    dup = distinctness_failures(reports)
    z1 = next(r.observed for r in reports if r.spec.name == "Z1")
    z2 = next(r.observed for r in reports if r.spec.name == "Z2")
    principal = next(r.observed for r in reports if r.spec.name == "PrincipalA1")
    ok = (not mismatched and not dup and z1.factors == z2.factors and z1.socle != z2.socle
          and principal.factors == ("6",))
    elapsed = time.perf_counter() - start
    criterion(5, "restriction table rows and pairwise distinctness", ok, elapsed, 60,
              f"{len(reports)} rows; mismatches {mismatched}; distinctness issues {dup}")
    assert ok and elapsed < 60


def test_criterion_06_trivial_submodule(criterion):
    start = time.perf_counter()
    dims = {}
    for p in (2, 3, 5, 7):
        F = field_make(p)
        dims[p] = len(fixed_space(subgroup_generators(SubgroupSpec("G2", F)).matrices(build_rep(F))))
    ok = dims == {2: 1, 3: 0, 5: 0, 7: 0}
    elapsed = time.perf_counter() - start
    criterion(6, "G2-fixed vectors on V7", ok, elapsed, 1, f"dims {dims}")
    assert ok and elapsed < 1


def test_criterion_07_h1(criterion):
    start = time.perf_counter()
    cases = [(4, "1", 1), (8, "1t2", 1), (9, "1x1t3", 2), (4, "st", 0), (4, "0", 0)]
    got = {(q, m): h1_dim(q, m).dim_over_q0 for q, m, _ in cases}
    ok = all(got[q, m] == want for q, m, want in cases)
    elapsed = time.perf_counter() - start
    criterion(7, "H^1 dimensions for SL2(q0)", ok, elapsed, 30, str(got))
    assert ok and elapsed < 30


def test_criterion_08_complements(criterion):
    start = time.perf_counter()
    F = field_make(2, 2)
    rep = build_rep(F)
    classes, where = xk0_level_one_classes(F)
    counted = classes.count == 4 and sorted(where.values()) == [0, 1, 2, 3]
    rng = np.random.default_rng(SEED)
    misses = []
    for k, l in itertools.product(F.elements(), F.elements()):
        gset = subgroup_generators(xkl(F, k, l))
        for _ in range(2):
            moved = conjugated_family(gset, rep.eval_word(random_radical_word(F, rng)), rep)
            res = layered_descent(moved, rep)
            if (res.k, res.l) != (k, l):
                misses.append(f"({k!r},{l!r})->({res.k!r},{res.l!r})"
                              f"{'' if descent_verifies(moved, res, rep) else ' unverified'}")
    ok = counted and not misses
    elapsed = time.perf_counter() - start
    criterion(8, "complement classes and descent round trip over GF(4)", ok, elapsed, 60,
              f"classes {classes.count}; round-trip misses {len(misses)}/32 e.g. {misses[:3]}")
    assert counted, "complement class count"
    assert not misses, f"descent did not return to the input (k,l): {misses}"
    assert elapsed < 60


def test_criterion_09_identifications(criterion):
    start = time.perf_counter()
    F = field_make(2)
    rep = build_rep(F)
    G = enumerate_group(subgroup_generators(SubgroupSpec("G2", F)).matrices(rep), cap=20_000)

    def gens(spec):
        return subgroup_generators(spec).matrices(rep)

    named = {name: gens(SubgroupSpec(name, F)) for name in ("Z1", "Z2", "Lbar0")}
    conjugate_pairs = []
    for a, b in itertools.combinations(named, 2):
        res = conjugacy_search(named[a], named[b], G)
        if res.found:
            conjugate_pairs.append(f"{a}~{b} via {res.word!r}")
    x10 = conjugacy_search(gens(xkl(F, 1, 0)), named["Z1"], G)
    x01 = conjugacy_search(gens(xkl(F, 0, 1)), named["Z2"], G)

    def resolved(res, spec_a, spec_b):
        if res.found:
            return True
        return restriction_report(spec_a, SEED).observed == restriction_report(spec_b, SEED).observed

    ok = (G.order == 12096 and not conjugate_pairs
          and resolved(x10, xkl(F, 1, 0), SubgroupSpec("Z1", F))
          and resolved(x01, xkl(F, 0, 1), SubgroupSpec("Z2", F)))
    elapsed = time.perf_counter() - start
    criterion(9, "identifications in G2(2)", ok, elapsed, 120,
              f"order {G.order}; X10~Z1 {x10.found}; X01~Z2 {x01.found}; conjugate pairs {conjugate_pairs}")
    assert G.order == 12096
    assert x10.found or resolved(x10, xkl(F, 1, 0), SubgroupSpec("Z1", F))
    assert x01.found or resolved(x01, xkl(F, 0, 1), SubgroupSpec("Z2", F))
    assert not conjugate_pairs, f"expected pairwise non-conjugate: {conjugate_pairs}"
    assert elapsed < 120


def test_criterion_10_orders(criterion):
    start = time.perf_counter()
    cases = [("G2", 2, 12096), ("A2", 2, 168), ("A2short", 3, 5616), ("A1xA1short", 2, 36)]
    got = {}
    for name, p, _ in cases:
        F = field_make(p)
        got[name] = enumerate_group(subgroup_generators(SubgroupSpec(name, F)).matrices(build_rep(F)),
                                    cap=20_000).order
    ok = all(got[name] == want for name, _, want in cases)
    elapsed = time.perf_counter() - start
    criterion(10, "subsystem subgroup orders", ok, elapsed, 60, str(got))
    assert ok and elapsed < 60
