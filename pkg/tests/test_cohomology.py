import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from g2chevalley.chevalley import RepElement, build_rep
from g2chevalley.cohomology import (
    CohomologyError, align_into_long_parabolic, complement_classes, conjugated_family,
    descent_verifies, field_for_q, h1_dim, layered_descent, sl2_module, xk0_level_one_classes,
)
from g2chevalley.finitegroup import enumerate_group
from g2chevalley.gf import field_make
from g2chevalley.subgroups import SubgroupSpec, subgroup_generators, xkl
from g2chevalley.suites import random_radical_word

H1_FROZEN = [(2, "1", 0), (3, "1", 0), (5, "1", 0), (9, "1", 0), (4, "1", 1), (8, "1t2", 1),
             (9, "1x1t3", 2), (4, "st", 0), (4, "0", 0), (8, "1", 1)]


@pytest.mark.parametrize("q0,name,want", H1_FROZEN)
def test_h1_frozen_values(q0, name, want):
    res = h1_dim(q0, name)
    assert res.dim_over_q0 == want
    assert res.b1 == res.module_dim - res.fixed
    assert res.certificate_order == q0 * (q0 * q0 - 1)


def _sl2_generators(F):
    basis = [F.gen ** i for i in range(F.n)]
    return [("+", t) for t in basis] + [("-", F.one)]


@pytest.mark.parametrize("q0,name", [(2, "1"), (3, "1"), (4, "1"), (4, "1t2"), (4, "0"), (5, "1")])
def test_complement_count_agrees_with_h1(q0, name):
    # two independent routes: linear cocycle equations versus brute-force complements
    F = field_for_q(q0)
    nat, mod = sl2_module(F, "1"), sl2_module(F, name)
    letters = _sl2_generators(F)
    x_gens = [RepElement(F, nat.act(l)) for l in letters]
    actions = [mod.act(l) for l in letters]
    classes = complement_classes(x_gens, actions, cap=100_000)
    assert classes.group_order == q0 * (q0 * q0 - 1)
    assert classes.count == q0 ** h1_dim(q0, name).dim_over_q0


def test_bad_module_is_rejected():
    F = field_make(2, 2)
    nat = sl2_module(F, "1")
    bogus = type(nat)(F, 2, "bogus", nat.plus, lambda t: nat.plus(t))
    with pytest.raises(CohomologyError):
        h1_dim(4, bogus)


def test_xk0_classes_are_distinct():
    F = field_make(2, 2)
    classes, where = xk0_level_one_classes(F)
    assert classes.count == 4
    assert sorted(where.values()) == [0, 1, 2, 3]
    assert xk0_level_one_classes(field_make(2))[0].count == 1


@pytest.mark.parametrize("n", [2, 3])
def test_x4_moves_l_to_zero_when_k_nonzero(n):
    # l is not an invariant of the radical class once k != 0
    F = field_make(2, n)
    rep = build_rep(F)
    for k, l in itertools.product(F.nonzero(), F.elements()):
        u = rep.xmat(4, l / k)
        moved = conjugated_family(subgroup_generators(xkl(F, k, l)), u, rep)
        target = subgroup_generators(xkl(F, k, 0))
        for fam in ("+", "-"):
            for t in F.elements():
                assert moved.element(fam, t, rep) == target.element(fam, t, rep)


@settings(max_examples=12, deadline=None)
@given(st.integers(0, 15), st.integers(0, 2 ** 31 - 1))
def test_descent_recovers_k_and_verifies(code, seed):
    F = field_make(2, 2)
    rep = build_rep(F)
    k, l = F.from_code(code % 4), F.from_code(code // 4)
    rng = np.random.default_rng(seed)
    moved = conjugated_family(subgroup_generators(xkl(F, k, l)),
                              rep.eval_word(random_radical_word(F, rng)), rep)
    res = layered_descent(moved, rep)
    assert descent_verifies(moved, res, rep)
    assert res.k == k
    if not k:
        assert res.l == l


def test_descent_is_idempotent_on_standard_forms():
    F = field_make(2, 2)
    rep = build_rep(F)
    for k, l in itertools.product(F.elements(), F.elements()):
        res = layered_descent(subgroup_generators(xkl(F, k, l)), rep)
        assert (res.k, res.l) == (k, l)


def test_z1_lands_in_a_nontrivial_class():
    F = field_make(2)
    rep = build_rep(F)
    G = enumerate_group(subgroup_generators(SubgroupSpec("G2", F)).matrices(rep), cap=20_000)
    _, aligned = align_into_long_parabolic(subgroup_generators(SubgroupSpec("Z1", F)), G)
    res = layered_descent(aligned, rep)
    assert descent_verifies(aligned, res, rep)
    assert (res.k, res.l) != (F.zero, F.zero)
