# %% [markdown]
# # Roots, root elements and the 7-dimensional module
#
# A walk through the basic objects: the G2 root system, the parabolic
# filtrations, and the matrices x_i(t) acting on V7 over a small field.

# %%
import numpy as np

from g2chevalley.chevalley import build_rep, commutator, commutator_coeffs, x, word
from g2chevalley.gf import field_make
from g2chevalley.roots import LONG_PARABOLIC, POSITIVE, SHORT_PARABOLIC, abs_filtration, is_long

# %% [markdown]
# Positive roots in the basis of simple roots (a1 short, a2 long), indexed 1..6.

# %%
for i, r in enumerate(POSITIVE, start=1):
    print(i, tuple(r), "long" if is_long(r) else "short")

# %% [markdown]
# The unipotent radicals of the two maximal parabolics, level by level.

# %%
for name, J in [("long", LONG_PARABOLIC), ("short", SHORT_PARABOLIC)]:
    print(name, [(m.level, m.dim, m.highweight) for m in abs_filtration(J)])

# %% [markdown]
# Root elements over GF(4).  The commutator of two root elements is a
# product of root elements with integer coefficients.

# %%
F = field_make(2, 2)
rep = build_rep(F)
g = F.gen
a, b = rep.xmat(2, g), rep.xmat(1, g + 1)
print(commutator_coeffs((1, 0), (0, 1)))
print(commutator(b, a).entries()[0])

# %% [markdown]
# A word evaluates to a 7x7 matrix; upper unitriangular elements factor
# back into x_1(t_1) ... x_6(t_6).

# %%
u = rep.eval_word(word(x(3, g), x(1, F.one), x(6, g)))
print(rep.unipotent_factorize(u))
print(np.array(u.to_json())[..., 0])
