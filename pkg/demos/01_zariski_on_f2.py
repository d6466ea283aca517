"""Zariski decompositions on the Hirzebruch surface F2.

Run with ``python3 demos/01_zariski_on_f2.py``.  Each cell prints what it
computes, so the script can be read top to bottom like a notebook.
"""

# %% The surface: basis (E, f) with E^2 = -2, E.f = 1, f^2 = 0.
from fractions import Fraction
from pathlib import Path

from zariski_series.io import parse_surface
from zariski_series.zariski import axioms, zariski_decompose

FIX = Path(__file__).resolve().parent.parent / "fixtures"
F2 = parse_surface(FIX / "f2.json")
print("curves:", dict(zip(F2.labels, (tuple(c) for c in F2.curves))))

# %% D = 2E + f meets E negatively, so E is split off with coefficient 3/2.
z = zariski_decompose(F2, [2, 1])
print("P =", F2.format_divisor(z.P), " N =", F2.format_divisor(z.N))
print("axioms:", axioms(F2, [2, 1], z))

# %% Along the ray D_s = E + s f the negative part shrinks linearly and
# vanishes once s reaches 2, where D_s becomes nef.
for s in [Fraction(k, 2) for k in range(1, 7)]:
    z = zariski_decompose(F2, [1, s])
    print(f"s = {s}: N = {F2.format_divisor(z.N)}")
