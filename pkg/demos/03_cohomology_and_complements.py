# %% [markdown]
# # First cohomology and complements in the long parabolic
#
# H^1(SL2(q), V) is computed from cocycles on a finite set of Steinberg
# relations.  For the natural module over GF(4) it is one-dimensional, so
# the level-one quotient of the radical has four classes of complements.
# The X_{k,0} land in four different classes.

# %%
import itertools

import numpy as np

from g2chevalley.chevalley import build_rep
from g2chevalley.cohomology import (
    conjugated_family, descent_verifies, h1_dim, layered_descent, xk0_level_one_classes,
)
from g2chevalley.gf import field_make
from g2chevalley.subgroups import subgroup_generators, xkl
from g2chevalley.suites import random_radical_word

# %%
for q0, module in [(4, "1"), (8, "1t2"), (9, "1x1t3"), (4, "st"), (5, "1")]:
    print(h1_dim(q0, module).to_json())

# %%
F = field_make(2, 2)
classes, where = xk0_level_one_classes(F)
print("classes:", classes.count, "X_{k,0} ->", {repr(k): i for k, i in where.items()})

# %% [markdown]
# Conjugate X_{k,l} by a random radical element and walk it back down
# level by level.  k always comes back.  When k is nonzero, l does not:
# x4(l/k) already conjugates X_{k,l} onto X_{k,0}.

# %%
rep = build_rep(F)
rng = np.random.default_rng(1)
for k, l in itertools.product(F.elements(), F.elements()):
    moved = conjugated_family(subgroup_generators(xkl(F, k, l)),
                              rep.eval_word(random_radical_word(F, rng)), rep)
    res = layered_descent(moved, rep)
    print(f"({k!r},{l!r}) -> ({res.k!r},{res.l!r})  verified={descent_verifies(moved, res, rep)}")
