# %% [markdown]
# Real cohomology classes
#
# Replacing phi by r*phi substitutes t -> t^r in the torsion function, and
# the symmetry exponent scales by r.  For non-integral r there is no
# integrality statement to check.

# %%
from torsionlab import get_knot, real_scale, symmetry_report, torsion_roots, triple_from_knot

T = triple_from_knot(get_knot("figure-eight"))
for r in (0.5, 2.0, -1.0, 1.5):
    S = real_scale(T, r)
    agree = max(abs(torsion_roots(S, t) - torsion_roots(T, t ** r)) for t in (0.5, 2.0, 3.0))
    rep = symmetry_report(S, [2, 3, 5])
    print(f"r={r:+.1f}: max |tau_r(t) - tau(t^r)| = {agree:.1e}   n = {rep.fitted:+.6f}"
          f"   integral={rep.integral}  {'PASS' if rep.passed else 'FAIL'}")
