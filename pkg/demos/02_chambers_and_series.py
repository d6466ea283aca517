"""Chambers of a cone of divisors and the multi-graded series over them.

On F2 the cone spanned by E+3f and E+f is cut by the ray through E+2f:
on one side the negative part is zero, on the other it is a multiple of E.
The series of h0 over the cone is assembled chamber by chamber and then
checked against direct lattice counts.
"""

# %%
from itertools import product

from zariski_series.cones import RationalCone, zariski_chambers
from zariski_series.series import chamber_reduction, expand
from zariski_series.toric import (
    ToricH0Oracle,
    divisor_class_group,
    h0_toric,
    hirzebruch_fan,
    surface_lattice_from_fan,
)

fan = hirzebruch_fan(2)
group = divisor_class_group(fan, [1, 0])
S = surface_lattice_from_fan(fan, group)
# ray 1 is the negative section E and ray 0 a fibre f, so class coordinates read (E, f)
print("basis:", S.basis_names, "curves:", S.labels)

# %% The two chambers and their shared wall.
chambers = zariski_chambers(S, RationalCone([[1, 3], [1, 1]]))
for ch in chambers:
    names = [S.labels[i] for i in sorted(ch.gamma)] or ["nef"]
    print(names, [S.format_divisor(r) for r in ch.cone.rays])

# %% sum over m of h0(m1 (E+3f) + m2 (E+f)) t1^m1 t2^m2.
h0 = ToricH0Oracle(fan, group)
rep = chamber_reduction(S, [0, 0], [[1, 3], [1, 1]], h0)
print(rep.series.to_string())
for rec in rep.shifts:
    print("  coset", rec.coset, "needed shift", rec.shift)

# %% Compare a few coefficients with direct counts.
table = expand(rep.series, 8)
bad = 0
for m in product(range(9), repeat=2):
    if sum(m) <= 8:
        direct = h0_toric(fan, group.lift([m[0] + m[1], 3 * m[0] + m[1]]))
        bad += table.get(m, 0) != direct
print("mismatches up to degree 8:", bad)
