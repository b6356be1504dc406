"""From zero loci of Bernstein-Sato ideals to subtori of the complex torus.

Exp sends a hyperplane a . s + b = 0 to the coset {t^(a/d) = exp(-2 pi i b/d)}
with d = gcd(a).  The image for m = (1, 1) is the union of the images for
the unit multi-indices, and pulling back along the diagonal recovers the
roots of the b-function of the product.
"""

from bsideal import bfunction, bs_ideal, diagonal_specialization, exp_locus, locus_union, parse_poly, parse_tuple
from bsideal.pipeline import InputTuple
from bsideal.torus import exp_of_roots, locus_equal

for pair in [("x", "y"), ("x", "x*y")]:
    F = InputTuple(tuple(parse_tuple(pair)))
    whole = exp_locus(bs_ideal(F, (1, 1)))
    parts = locus_union(exp_locus(bs_ideal(F, (1, 0))), exp_locus(bs_ideal(F, (0, 1))))
    print(f"F = ({', '.join(pair)})")
    for comp in whole:
        print(f"  {comp}")
    print(f"  equals union over unit multi-indices: {locus_equal(whole, parts)}")
    diag = diagonal_specialization(whole, (1, 1))
    product = parse_poly(f"({pair[0]})*({pair[1]})")
    print(f"  diagonal angles {[str(a) for a in diag.angles]}")
    print(f"  angles of b for {product}: {[str(a) for a in exp_of_roots(bfunction(product))]}")
    print()
