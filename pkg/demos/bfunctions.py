"""Bernstein-Sato polynomials of a few plane curves.

For each f we compute b_f by elimination, read off its roots and the log
canonical threshold, then ask the brute-force oracle for an explicit
operator P with P * f^(s+1) = b_f(s) * f^s.
"""

from bsideal import AnsatzBounds, bfunction, factored_string, find_witness, lct, parse_poly
from bsideal.pipeline import InputTuple

CURVES = ["x^2", "x*y", "x^2 + y^2", "x^2 + y^3"]

for src in CURVES:
    f = parse_poly(src)
    b = bfunction(f)
    print(f"f = {src}")
    print(f"  b_f   = {factored_string(b)}")
    print(f"  lct   = {lct(f, b=b)}")
    P = find_witness(b, InputTuple((f,)), (1,), AnsatzBounds(3, 3, 0))
    print(f"  P     = {P}")
    print()

# The cusp's largest root is -5/6, so its lct sits below the value 1 of a
# smooth curve.
