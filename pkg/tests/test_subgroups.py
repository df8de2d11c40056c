import itertools

import pytest

from g2chevalley.chevalley import build_rep
from g2chevalley.gf import FieldError, field_make
from g2chevalley.subgroups import (
    NAMES, SubgroupError, SubgroupSpec, _sym2_constants, frobenius_twist_gens, h_plus, n_plus,
    standard_conjugator, steinberg_relations, subgroup_generators, xkl,
)

RANK_ONE = [("Lbar0", 2, 2), ("Ltilde0", 3, 1), ("Z1", 2, 2), ("Z2", 2, 2), ("Z1", 2, 3),
            ("IrredA1inA2", 3, 1), ("IrredA1inA2", 5, 1), ("PrincipalA1", 7, 1),
            ("TwistedDiag", 2, 2), ("Lbar0", 5, 1)]


@pytest.mark.parametrize("name,p,n", RANK_ONE)
def test_rank_one_relations_hold(name, p, n):
    F = field_make(p, n)
    spec = SubgroupSpec(name, F, r=1) if name == "TwistedDiag" else SubgroupSpec(name, F)
    report = steinberg_relations(subgroup_generators(spec), build_rep(F))
    assert report.ok, report.failures


@pytest.mark.parametrize("p", [3, 5])
def test_z2_is_not_a_homomorphic_image_away_from_two(p):
    F = field_make(p)
    spec = SubgroupSpec("Z2", F)
    assert spec.flags
    report = steinberg_relations(subgroup_generators(spec), build_rep(F))
    assert not report.ok and report.failures


def test_sym2_constants_frozen():
    assert _sym2_constants() == (-1, 1, 1, 1)


def _conjugates(g, src, dst, rep):
    ge = rep.eval_word(g)
    gi = ge.inv()
    return all(ge @ src.element(f, t, rep) @ gi == dst.element(f, t, rep)
               for f in ("+", "-") for t in src.field.elements())


@pytest.mark.parametrize("n", [2, 3])
def test_standard_conjugator(n):
    F = field_make(2, n)
    rep = build_rep(F)
    for k, l in itertools.product(F.elements(), F.elements()):
        if not k and not l:
            with pytest.raises(SubgroupError):
                standard_conjugator(k, l)
            continue
        if not k and not l.is_cube():
            with pytest.raises(FieldError):
                standard_conjugator(k, l)
            continue
        g, target = standard_conjugator(k, l)
        assert _conjugates(g, subgroup_generators(xkl(F, k, l)), subgroup_generators(target), rep)


def test_gf4_non_cube_has_no_rational_conjugator():
    F = field_make(2, 2)
    assert not F.gen.is_cube()
    with pytest.raises(FieldError, match="cube"):
        standard_conjugator(F.zero, F.gen)


def test_xkl_relations_and_closed_forms_gf4():
    F = field_make(2, 2)
    rep = build_rep(F)
    for k, l in itertools.product(F.elements(), F.elements()):
        g = subgroup_generators(xkl(F, k, l))
        assert steinberg_relations(g, rep).ok
        for t in F.nonzero():
            assert h_plus(g, rep, t).det() == F.one
            assert n_plus(g, rep, t) @ n_plus(g, rep, -t) == rep.identity()


def test_frobenius_twist_is_still_a_homomorphism():
    F = field_make(2, 3)
    g = frobenius_twist_gens(subgroup_generators(SubgroupSpec("Z1", F)), 1)
    assert steinberg_relations(g, build_rep(F)).ok
    assert g.name.startswith("Z1^")


def test_invalid_specs():
    F2, F3 = field_make(2), field_make(3)
    with pytest.raises(SubgroupError):
        SubgroupSpec("B3", F2)
    with pytest.raises(SubgroupError):
        SubgroupSpec("IrredA1inA2", F2)
    with pytest.raises(SubgroupError):
        SubgroupSpec("PrincipalA1", field_make(5))
    with pytest.raises(SubgroupError):
        SubgroupSpec("Xkl", F2)
    with pytest.raises(FieldError):
        SubgroupSpec("Xkl", F2, k=F3.one, l=F3.zero)
    assert "Xkl" in NAMES and "X_{0,0} equals Lbar0" in xkl(F2, 0, 0).flags


def test_generator_json_shape():
    F = field_make(2, 2)
    out = subgroup_generators(SubgroupSpec("A2", F)).to_json()
    assert out["field"] == [2, 2]
    assert set(out["families"]) == {"x2", "x5", "x6", "x-2", "x-5", "x-6"}
    assert len(out["families"]["x2"]) == 3
