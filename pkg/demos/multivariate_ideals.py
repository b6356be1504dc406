"""Bernstein-Sato ideals of pairs of polynomials.

B_F^m collects the b(s1, s2) with b * f1^s1 f2^s2 = P * f1^(s1+m1) f2^(s2+m2).
For a pair of lines the ideal is a product of linear forms, and each form is
a hyperplane a . s + b = 0 with a >= 0 and b > 0.
"""

from bsideal import bs_ideal, check_structure, cross_validate, factored_string, parse_tuple
from bsideal.pipeline import InputTuple

PAIRS = [("x", "y"), ("x", "x + y"), ("x", "x*y"), ("x", "x")]

for pair in PAIRS:
    F = InputTuple(tuple(parse_tuple(pair)))
    print(f"F = ({', '.join(pair)})")
    for m in [(1, 1), (1, 0), (0, 1)]:
        B = bs_ideal(F, m)
        gens = ", ".join(factored_string(g) for g in B.generators)
        ok = check_structure(B, m).ok
        print(f"  m = {m}: <{gens}>   structure ok: {ok}")
    report = cross_validate(F, (1, 1))
    for g, P in report.verified:
        print(f"  witness for m = (1, 1): P = {P}")
    print()

# With f1 = f2 = x the ideal only depends on s1 + s2: it is the ideal of x^2
# written in the variable s1 + s2, so both (s1+s2+1) and (s1+s2+2) appear.
