"""The determinants that make the partition systems solvable.

Delta_{r,D} and its barred variant are rD x rD determinants of scaled
Bernoulli polynomial values at the points (D-1)/D, ..., 1/D, 0.  Both come
out nonzero in every case we can reach, which is what the partition demo
relies on.
"""

from fractions import Fraction

from partdet import format_rational
from partdet import detpoly as dp

print("Delta_{r,D}, computed by fraction-free elimination:")
for r in range(1, 4):
    row = [format_rational(dp.delta(r, D)) for D in range(1, 5) if r * D <= 8]
    print(f"  r={r}: " + ", ".join(row))

print("\nDelta-bar_{1,D} against the closed form 1!...(D-2)! / D^(D-1):")
for D in range(2, 7):
    direct = dp.delta_bar(1, D)
    closed = dp.superfactorial(D - 2) / Fraction(D) ** (D - 1)
    print(f"  D={D}: {format_rational(direct):>12}  {format_rational(closed):>12}  {direct == closed}")

print("\nThe same Delta value also drops out of the polynomial F_{r,D} at the canonical point:")
for r, D in [(1, 2), (1, 3), (2, 2)]:
    print(f"  (r, D) = ({r}, {D}): direct {format_rational(dp.delta(r, D))}, "
          f"via F {format_rational(dp.delta_via_F(r, D))}")
