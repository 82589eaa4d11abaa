# %% [markdown]
# The symmetry tau(1/t) = t^n tau(t)
#
# Two independent evaluations of the L2-Alexander torsion of a knot exterior:
# a closed form from the roots of Delta and the quadrature torsion of the
# presentation complex.  They differ by a monomial t^m, so both give the
# same exponent n up to an even shift.

# %%
from torsionlab import get_knot, monomial_offset, symmetry_report, torsion_function, triple_from_knot

for name in ("trefoil", "figure-eight"):
    T = triple_from_knot(get_knot(name))
    roots, quad = torsion_function(T, "roots"), torsion_function(T, "quadrature")
    print(name)
    for t in (0.5, 2.0, 3.0):
        print(f"   t={t:<4} roots {roots(t):.12f}   quadrature {quad(t):.12f}")
    m, resid = monomial_offset(quad, roots, [0.5, 2.0, 3.0])
    print(f"   offset m = {m} (residual {resid:.1e})")
    for backend in ("roots", "quadrature"):
        rep = symmetry_report(T, [2, 3, 5], backend)
        print(f"   {backend:10s} n = {rep.fitted:+.12f}  parity {rep.parity}"
              f"  expected {rep.expected_parity}  {'PASS' if rep.passed else 'FAIL'}")

# %% changing the Euler lift moves n by an even number and keeps the parity
T = triple_from_knot(get_knot("trefoil"))
f = torsion_function(T, "quadrature", euler_actions=[(0, 0, 1), (2, 1, 2)])
rep = symmetry_report(f, [2, 3, 5])
print("after Euler actions: n =", rep.n, rep.parity)
