# %% [markdown]
# Fuglede-Kadison determinants over N(Z)
#
# For a 1x1 matrix (p) the determinant is the Mahler measure of p.  For
# anything rectangular we integrate the log pseudo-determinant of M(e^{i theta})
# around the circle.  Both routes are shown side by side.

# %%
import numpy as np

from torsionlab import LaurentMatrix, LaurentPoly, fk_det, fk_det_square_poly, mahler_jensen

p = LaurentPoly([1, -2])           # 1 - 2z
print("Mahler(1 - 2z)          =", mahler_jensen(p))
print("quadrature on (1 - 2z)   =", fk_det(LaurentMatrix.from_entries([[p]])).value)

# %% roots on the unit circle make the integrand singular; the quadrature deflates them
q = LaurentPoly([1, -1, 1])        # z^2 - z + 1, roots are sixth roots of unity
res = fk_det(LaurentMatrix.from_entries([[q]]))
print("z^2 - z + 1:", res.value, "after", res.nodes, "nodes")

# %% a rectangular example: the column (1 - 2z; 1 - 2z) has one singular value sqrt(2)|1 - 2z|
col = LaurentMatrix.from_entries([[p], [p]])
print("column      :", fk_det(col).value, " expected", 2 * np.sqrt(2))

# %% the two routes agree on random square matrices
rng = np.random.default_rng(0)
for n, span in [(2, 2), (3, 4), (4, 6)]:
    M = LaurentMatrix(rng.normal(size=(n, n, span + 1)) + 1j * rng.normal(size=(n, n, span + 1)))
    a, b = fk_det(M).value, fk_det_square_poly(M).value
    print(f"{n}x{n}, span {span}: quadrature {a:.12g}  Jensen {b:.12g}  rel diff {abs(a - b) / b:.1e}")
