import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from g2chevalley import linalg as la
from g2chevalley.chevalley import build_rep
from g2chevalley.gf import field_make
from g2chevalley.modules import (
    ModuleRep, a1_name, a1_weights, chop, factor_dims, hom_space, is_irreducible, isomorphic_simple,
    label_factor, restrict, signature, socle, socle_layers, spin, split,
)
from g2chevalley.subgroups import SubgroupSpec, subgroup_generators


def _restricted(name, p, n=1, params=None):
    F = field_make(p, n)
    g = subgroup_generators(SubgroupSpec(name, F))
    return g, restrict(g, build_rep(F), params)


def _all_vectors(F, dim):
    for codes in itertools.product(range(F.q), repeat=dim):
        if any(codes):
            yield la.from_elements(F, [[F.from_code(c) for c in codes]])[0]


def _lines(F, dim):
    """One nonzero vector per line: the first nonzero coordinate is 1."""
    one = F.one.coeffs
    for v in _all_vectors(F, dim):
        lead = next(i for i in range(dim) if v[i].any())
        if tuple(v[lead]) == tuple(one):
            yield v


def _socle_by_exhaustive_spin(M):
    # oracle: a cyclic submodule is minimal iff it contains no smaller cyclic one
    F = M.field
    spins = {}
    for v in _lines(F, M.dim):
        W = spin(v[None], M)
        spins.setdefault(la.key(W), W)
    subs = list(spins.values())
    minimal = [W for W in subs
               if not any(len(U) < len(W) and la.rank(F, np.concatenate([U, W])) == len(W) for U in subs)]
    return la.row_space(F, np.concatenate(minimal))


@pytest.mark.parametrize("name", ["Z1", "Z2"])
def test_socle_matches_exhaustive_spin_gf4(name):
    F = field_make(2, 2)
    # x+(t) is additive, so t in {1, g} already generates each root family
    g, M = _restricted(name, 2, 2, params=[F.one, F.gen])
    want = _socle_by_exhaustive_spin(M)
    got = socle(M)
    assert len(got) == len(want)
    assert la.rank(F, np.concatenate([got, want])) == len(want)


def test_spin_edge_cases():
    g, M = _restricted("G2", 2)
    F = M.field
    assert len(spin(la.zeros(F, 0, 7), M)) == 0
    assert len(spin(la.identity(F, 7), M)) == 7
    fixed = la.nullspace(F, np.concatenate([la.sub(F, m, la.identity(F, 7)) for m in M.gens]))
    assert len(fixed) == 1
    assert len(spin(fixed, M)) == 1


def test_chop_g2_and_a2short():
    assert factor_dims(_restricted("G2", 2)[1]) == [1, 6]
    assert factor_dims(_restricted("G2", 5)[1]) == [7]
    assert factor_dims(_restricted("A2short", 3)[1]) == [7]
    assert is_irreducible(_restricted("G2", 7)[1])


@settings(max_examples=8, deadline=None)
@given(st.integers(0, 2 ** 31 - 1))
def test_chop_is_basis_independent(seed):
    F = field_make(2, 2)
    g, M = _restricted("Ltilde0", 2, 2)
    rng = np.random.default_rng(seed)
    while True:
        P = la.from_elements(F, [[F.random(rng) for _ in range(7)] for _ in range(7)])
        if la.det(F, P):
            break
    N = M.conjugate(P)
    a, b = chop(M, seed), chop(N, seed + 1)
    assert sorted(S.dim for S in a) == sorted(S.dim for S in b)
    for S in a:
        assert sum(isomorphic_simple(S, T) for T in b) == sum(isomorphic_simple(S, T) for T in a)
    assert sum(S.dim for S in socle_layers(N)) == 7


def _explicit(F, mats):
    return ModuleRep(F, len(mats[0]), [la.from_elements(F, [[F(v) for v in row] for row in m]) for m in mats])


def test_uniserial_socle_layers_from_explicit_matrices():
    # upper unitriangular Jordan block of size 3 over GF(2): uniserial, three trivial layers
    F = field_make(2)
    M = _explicit(F, [[[1, 1, 0], [0, 1, 1], [0, 0, 1]]])
    layers = socle_layers(M)
    assert [S.dim for S in layers] == [1, 1, 1]
    N = _explicit(F, [[[1, 0, 0], [0, 0, 1], [0, 1, 0]]])
    # trivial plus the regular module of a group of order 2: socle has dimension 2
    assert [S.dim for S in socle_layers(N)] == [2, 1]


def test_split_and_hom():
    g, M = _restricted("G2", 2)
    F = M.field
    fixed = la.nullspace(F, np.concatenate([la.sub(F, m, la.identity(F, 7)) for m in M.gens]))
    S, Q, P = split(M, fixed)
    assert (S.dim, Q.dim) == (1, 6)
    assert len(hom_space(Q, Q)) == 1
    assert not hom_space(S, Q) and not hom_space(Q, S)
    assert la.rank(F, P) == 7


def test_a1_names_and_weights():
    assert a1_name(0, 2) == "0"
    assert a1_name(1, 2) == "1"
    assert a1_name(2, 2) == "1^(2)"
    assert a1_name(3, 2) == "1^(2)⊗1"
    assert a1_name(4, 3) == "1^(3)⊗1"
    assert sorted(a1_weights(3, 2)) == [-3, -1, 1, 3]
    assert len(a1_weights(8, 3)) == 9


def test_labels_of_small_rank_one_modules():
    F = field_make(2, 2)
    g = subgroup_generators(SubgroupSpec("Ltilde0", F))
    names = sorted(label_factor(S, g).name for S in chop(restrict(g)))
    assert names == ["0", "1", "1", "1^(2)"]
    sig, labels = signature(restrict(g), g)
    assert all(l.status == "ok" for l in labels)
    assert sum(len(layer) for layer in sig.socle) == len(sig.factors)


@pytest.mark.parametrize("name,p,n", [("Z1", 2, 2), ("Z2", 2, 2), ("A2", 2, 1), ("A1xA1short", 2, 2),
                                      ("IrredA1inA2", 3, 1)])
def test_socle_layer_dims_sum_to_dim(name, p, n):
    g, M = _restricted(name, p, n)
    layers = socle_layers(M)
    assert sum(S.dim for S in layers) == 7
    assert sorted(S.dim for S in chop(M)) == sorted(d for L in layers for d in (S.dim for S in chop(L)))
