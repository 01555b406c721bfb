"""y^2 = x^5 - 1 has complex multiplication by Q(zeta_5).

Walk through the primes by residue mod 5 and watch the Frobenius
polynomial change shape.
"""

from collections import Counter

from weilstat.algebra.primes import primes_up_to
from weilstat.curves import HyperellipticCurve, frobenius_poly
from weilstat.weil import honda_tate_split, is_absolutely_simple

curve = HyperellipticCurve(2, (-1, 0, 0, 0, 0, 1), "y^2=x^5-1")

# a few primes from each class
for p in (11, 31, 7, 17, 13, 23, 19, 29):
    P = frobenius_poly(curve, p)
    dec = honda_tate_split(P)
    print(f"p={p:3d}  p%5={p % 5}  {P.to_text():32s} shape {dec.shape()}")

# p = 4 mod 5: always (x^2+p)^2, the square of a supersingular elliptic curve
P = frobenius_poly(curve, 2999)
print("\np=2999:", P.to_text(), "->", [(f.to_text(), m) for f, m in honda_tate_split(P).factors])

# p = 2, 3 mod 5: irreducible over F_p but splits over F_{p^4}
r = is_absolutely_simple(frobenius_poly(curve, 13))
print("p=13 absolutely simple?", r.simple, "witness extension degree", r.witness)

shapes = Counter()
for p in primes_up_to(2000):
    if p > 5:
        shapes[p % 5, honda_tate_split(frobenius_poly(curve, p)).shape()] += 1
print()
for (a, shape), n in sorted(shapes.items()):
    print(f"p = {a} mod 5: {n:4d} x {shape}")
