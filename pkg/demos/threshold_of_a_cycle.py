"""Log canonical threshold of the ideal generated by a cyclic family of monomials.

The monomials x2^2*x3, x1*x3^2, x1^2*x2 arise when a linear vector field whose
matrix is a 3-cycle is contracted against a logarithmic 1-form with full
boundary.  Their Newton polyhedron contains (1, 1, 1), so the threshold is 1.
"""

from foliated import lct_monomial, newton_membership, parse_ideal

ideal = parse_ideal("x2^2*x3, x1*x3^2, x1^2*x2", 3)
res = lct_monomial(ideal)

print("ideal:", ideal.to_text())
print("lct:", res.value)

# (1/lct) * (1,1,1) as a convex combination of the exponent vectors
print("convex weights:", [str(m) for m in res.coefficients])
print("slack:", [str(s) for s in res.slack])

# the dual side: a monomial valuation attaining the bound
print("weight vector:", res.weight)
print("witnesses re-check:", res.verify())

# a point just below the polyhedron gets a separating weight instead
half = newton_membership((1, 1, 0), ideal)
print("(1,1,0) in the polyhedron:", half.member, "separator:", half.separator)
