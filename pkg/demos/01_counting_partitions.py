"""Count restricted partitions three ways and watch them agree.

p_a(n) is the number of ways to write n as a sum of parts drawn from a,
with repetition.  For parts (1, 2, 3) it is a quasi-polynomial of degree 2
with period 6; here we recover its coefficients by interpolation and by
solving the two Bernoulli determinant systems.
"""

from partdet import (
    PartitionSpec,
    eval_quasi,
    format_rational,
    p_oracle,
    quasi_from_delta_system,
    quasi_from_deltabar_system,
    quasi_from_oracle,
)

spec = PartitionSpec((1, 2, 3))
print(f"parts {spec.a}, r = {spec.r}, period D = {spec.D}\n")

oracle = quasi_from_oracle(spec)
print("coefficient table d[m][n mod D] from interpolating brute-force counts:")
for m, row in enumerate(oracle.d):
    print(f"  n^{m}: " + "  ".join(f"{format_rational(c):>6}" for c in row))

# The two linear systems only ever see Bernoulli data, never a count.
delta = quasi_from_delta_system(spec)
delta_bar = quasi_from_deltabar_system(spec)
print("\nDelta system gives the same table:    ", delta == oracle)
print("Delta-bar system gives the same table:", delta_bar == oracle)

print("\n  n  p_a(n)  quasi-polynomial")
for n in range(0, 40, 5):
    print(f"{n:3d}  {p_oracle(spec, n):6d}  {format_rational(eval_quasi(delta, n)):>6}")
