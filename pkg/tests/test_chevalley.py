import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from g2chevalley import linalg as la
from g2chevalley.chevalley import (
    GroupWord, build_rep, commutator, commutator_coeffs, commutator_product, h, integral_form,
    n, word, x,
)
from g2chevalley.gf import FieldError, field_make
from g2chevalley.roots import ROOTS, Root, index, is_root

FIELDS = [(2, 1), (2, 2), (3, 1), (3, 2), (5, 1), (7, 1)]


def _int_x(E, t):
    """x_r(t) over the integers, computed with Python ints."""
    m = E.astype(object)
    return np.eye(7, dtype=object) + t * m + (t * t * (m @ m)) // 2


def _int_inv(E, t):
    return _int_x(E, -t)


@pytest.mark.parametrize("r,s", [(r, s) for r, s in itertools.permutations(ROOTS, 2) if r != -s])
def test_commutator_formula_over_integers(r, s):
    # oracle: exact integer matrices, independent of any field reduction
    E = integral_form()
    for t, u in [(1, 1), (2, -1), (-3, 2), (5, 7)]:
        lhs = _int_inv(E[s], u) @ _int_inv(E[r], t) @ _int_x(E[s], u) @ _int_x(E[r], t)
        rhs = np.eye(7, dtype=object)
        for i, j, target, c in commutator_coeffs(r, s):
            rhs = rhs @ _int_x(E[target], c * (-t) ** i * u ** j)
        assert (lhs == rhs).all(), (r, s, t, u)


def test_lie_algebra_spans_fourteen_dimensions():
    E = integral_form()
    basis = [m.ravel() for m in E.values()]
    basis += [(E[r] @ E[-r] - E[-r] @ E[r]).ravel() for r in (Root(1, 0), Root(0, 1))]
    assert np.linalg.matrix_rank(np.array(basis, dtype=float)) == 14
    for a, b in itertools.product(E, repeat=2):
        br = E[a] @ E[b] - E[b] @ E[a]
        stacked = np.array(basis + [br.ravel()], dtype=float)
        assert np.linalg.matrix_rank(stacked) == 14
        if is_root(a + b):
            assert br.any()


@pytest.mark.parametrize("p,nn", FIELDS)
def test_root_subgroups_are_additive_and_unimodular(p, nn):
    F = field_make(p, nn)
    rep = build_rep(F)
    rng = np.random.default_rng(p * 10 + nn)
    for i in [k for k in range(-6, 7) if k]:
        t, u = F.random(rng), F.random(rng)
        assert rep.xmat(i, t) @ rep.xmat(i, u) == rep.xmat(i, t + u)
        assert rep.xmat(i, t).det() == F.one
        if t:
            assert rep.hmat(i, t).det() == F.one
            assert rep.nmat(i, t).inv() == rep.nmat(i, -t)


@pytest.mark.parametrize("p,nn", [(2, 2), (3, 1), (5, 1)])
def test_commutator_formula_over_fields(p, nn):
    F = field_make(p, nn)
    rep = build_rep(F)
    rng = np.random.default_rng(7)
    for r, s in itertools.permutations(ROOTS, 2):
        if r == -s:
            continue
        t, u = F.random(rng), F.random(rng)
        lhs = commutator(rep.xmat(index(s), u), rep.xmat(index(r), t))
        assert lhs == commutator_product(rep, r, s, t, u)


@pytest.mark.parametrize("p,nn", FIELDS)
def test_batch_matches_single(p, nn):
    F = field_make(p, nn)
    rep = build_rep(F)
    ts = list(F.elements())
    for i in (1, -4, 6):
        batch = rep.xmat_batch(i, ts)
        for b, t in enumerate(ts):
            assert np.array_equal(batch[b], rep.xmat(i, t).m)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 8), min_size=6, max_size=6))
def test_unipotent_factorize_round_trip(codes):
    F = field_make(3, 2)
    rep = build_rep(F)
    params = {k: F.from_code(c) for k, c in enumerate(codes, start=1)}
    g = rep.normal_form(params)
    assert rep.unipotent_factorize(g) == params
    assert rep.in_unipotent(g)


def test_factorize_rejects_non_unipotent():
    F = field_make(3)
    rep = build_rep(F)
    assert not rep.in_unipotent(rep.xmat(-1, F.one))
    with pytest.raises(ValueError):
        rep.unipotent_factorize(rep.hmat(2, F(2)))


def test_word_json_round_trip_and_evaluation():
    F = field_make(2, 2)
    rep = build_rep(F)
    g = F.gen
    w = word(x(1, g), n(-2, g + 1), h(3, g), x(-6, F.one))
    assert GroupWord.from_json(w.to_json(), F) == w
    assert rep.eval_word(w) @ rep.eval_word(w.inverse()) == rep.identity()
    assert repr(GroupWord()) == "1"
    with pytest.raises(ValueError):
        n(2, F.zero)
    with pytest.raises(ValueError):
        x(0, F.one)


def test_mixed_fields_rejected():
    rep = build_rep(field_make(2, 2))
    with pytest.raises(FieldError):
        rep.xmat(1, field_make(2, 3).gen)
    with pytest.raises(FieldError):
        rep.nmat(1, rep.field.zero)


def test_weyl_elements_permute_weight_lines():
    F = field_make(5)
    rep = build_rep(F)
    for i in range(1, 7):
        m = la.to_elements(F, rep.nmat(i, F.one).m)
        nonzero_per_row = [sum(1 for e in row if e) for row in m]
        assert nonzero_per_row == [1] * 7
