# %% [markdown]
# # Restricting V7 to subgroups
#
# Each subgroup is given by generator families.  The MeatAxe splits the
# restriction into simple factors, which are then named by highest weight,
# and the socle series records how they are glued together.

# %%
from g2chevalley.gf import field_make
from g2chevalley.modules import restrict, signature
from g2chevalley.restriction import restriction_report, table_specs
from g2chevalley.subgroups import SubgroupSpec, subgroup_generators

# %% [markdown]
# Z1 and Z2 over GF(4) have the same composition factors but different
# socle series, so they are not conjugate.

# %%
F = field_make(2, 2)
for name in ("Z1", "Z2"):
    g = subgroup_generators(SubgroupSpec(name, F))
    sig, _ = signature(restrict(g), g)
    print(name, sig.render())

# %% [markdown]
# The whole table with the predicted signature next to each observation.

# %%
for spec in table_specs():
    r = restriction_report(spec)
    print(f"{spec.label():<18} p={spec.field.p}  {r.verdict:<8} {r.observed.render()}")
