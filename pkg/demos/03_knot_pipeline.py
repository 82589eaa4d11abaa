# %% [markdown]
# From braid words to Alexander polynomials
#
# braid word -> closure PD code -> Wirtinger presentation -> Fox matrix -> Delta.

# %%
from torsionlab import alexander_polynomial, braid_to_pd, parse_braid, parse_pd, wirtinger
from torsionlab.knot import alexander_coefficients

for word in ["strands=2; s1 s1 s1", "strands=3; s1 s2^-1 s1 s2^-1", "strands=2; s1^5",
             "strands=3; s1 s2 s1 s2 s1 s2 s1 s2"]:
    pd = braid_to_pd(parse_braid(word))
    P = wirtinger(pd)
    print(f"{word:38s} crossings={len(pd):2d}  writhe={pd.writhe():+d}  "
          f"Delta={alexander_coefficients(alexander_polynomial(P))}")

# %% PD input works the same way
pd = parse_pd("PD[X[1,5,2,4],X[3,1,4,6],X[5,3,6,2]]")
print(pd, "->", alexander_coefficients(alexander_polynomial(wirtinger(pd))))

# %% deleting any generator column gives the same polynomial
P = wirtinger(braid_to_pd(parse_braid("strands=3; s1 s2^-1 s1 s2^-1")))
print([alexander_coefficients(alexander_polynomial(P, c)) for c in range(P.generator_count)])
