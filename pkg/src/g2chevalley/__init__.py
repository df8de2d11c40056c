"""Exact computations in the Chevalley group G2 over small finite fields.

The 7-dimensional Weyl module, root elements and words, the standard A1 and
A2 subgroups, module analysis of restrictions, first cohomology of SL2(q)
and exhaustive search in small groups.
"""

from .chevalley import GroupWord, RepElement, Representation, build_rep, commutator_coeffs, rep_for
from .cohomology import complement_classes, h1_dim, layered_descent, sl2_module
from .finitegroup import conjugacy_search, enumerate_group, fixed_space
from .gf import Field, FieldElement, FieldError, field_make
from .modules import FactorSignature, ModuleRep, chop, label_factor, restrict, socle_layers, spin
from .restriction import expected_signature, restriction_report
from .roots import Root, abs_filtration, positive_roots
from .subgroups import GeneratorSet, SubgroupSpec, standard_conjugator, steinberg_relations, subgroup_generators, xkl
from .suites import SuiteReport, run_suite

__version__ = "0.1.0"
