# %% [markdown]
# The torus has trivial L2-torsion
#
# Cellular chain complex of the torus twisted by x -> (tz)^a, y -> (tz)^b.
# Both boundary maps are rectangular, so this exercises the quadrature path.

# %%
from torsionlab import dualize, torsion, torus_complex

for ab in [(1, 0), (1, 1), (2, -3)]:
    vals = [torsion(torus_complex(ab, t)).value for t in (0.5, 1.0, 2.0, 5.0)]
    print(ab, ["%.12f" % v for v in vals])

# %% the dual complex has the same torsion (length 2, so the exponent is -1 and 1^-1 = 1)
C = torus_complex((1, 1), 2.0)
print("dual:", torsion(dualize(C)).value)

# %% phi = 0 is rejected: the complex is not L2-acyclic
try:
    torus_complex((0, 0), 1.0)
except ValueError as exc:
    print("error:", exc)
