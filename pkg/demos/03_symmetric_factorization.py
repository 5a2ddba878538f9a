"""F_{r,D} splits as a Vandermonde power times a symmetric polynomial.

Replace the evaluation points by indeterminates x_1..x_D and the
determinant becomes a polynomial F_{r,D}.  It is antisymmetric, so the
r-th power of the Vandermonde product divides it, and the quotient G_{r,D}
is symmetric.  We compute G two independent ways: exact division, and a
determinant of divided differences that never sees F at all.
"""

from partdet import detpoly as dp
from partdet.multipoly import is_symmetric, vandermonde

for r, D in [(1, 2), (1, 3), (2, 2), (2, 3)]:
    F = dp.F_poly(r, D)
    G = dp.G_poly(r, D)
    same = G == dp.G_poly_divided_difference(r, D)
    print(f"(r, D) = ({r}, {D}): deg F = {F.degree:2d}, deg G = {G.degree:2d}, "
          f"V^r * G == F: {vandermonde(D, r) * G == F}, symmetric: {is_symmetric(G)}, "
          f"divided differences agree: {same}")

print("\nG_{1,2} written out:")
for exp, coeff in dp.G_poly(1, 2).sorted_terms():
    print(f"  {coeff} * x1^{exp[0]} x2^{exp[1]}")
