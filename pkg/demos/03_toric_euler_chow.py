"""Euler-Chow series of projective spaces and Hirzebruch surfaces, and the
approach of fixed parts to the negative part of a Zariski decomposition.
"""

# %%
from fractions import Fraction

from zariski_series.toric import (
    divisor_class_group,
    euler_chow_divisors,
    euler_chow_points,
    euler_chow_rank_one,
    fixed_part_toric,
    hirzebruch_fan,
    projective_space_fan,
    surface_lattice_from_fan,
)
from zariski_series.zariski import zariski_decompose

# %% Projective spaces: every cycle dimension gives a power of 1/(1-t).
for n in range(1, 4):
    P = projective_space_fan(n)
    print(f"P^{n}:", [euler_chow_rank_one(P, p, assume_rank_one=True).to_string() for p in range(n + 1)])

# %% Hirzebruch surfaces.
for a in (1, 2, 3):
    F = hirzebruch_fan(a)
    print(f"F{a}: points {euler_chow_points(F).to_string()}, divisors {euler_chow_divisors(F).to_string()}")

# %% Fixed part of |n(2E+f)| divided by n, against N = 3/2 E.
F = hirzebruch_fan(2)
group = divisor_class_group(F, [1, 0])
N = zariski_decompose(surface_lattice_from_fan(F, group), [2, 1]).N
print("N =", " ".join(str(x) for x in N), "(coordinates E, f)")
for n in (1, 2, 3, 5, 8, 16, 32):
    fixed = fixed_part_toric(F, group.lift([2 * n, n])).coeffs
    print(n, " ".join(str(Fraction(c, n)) for c in fixed))
