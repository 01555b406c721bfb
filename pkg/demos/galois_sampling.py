"""Galois groups of Weil quartics, two ways.

Frobenius at an auxiliary prime ell gives a signed cycle type; enough of
them pin down a subgroup of B_2 from below.  The resolvent cubic settles
the question exactly.
"""

from collections import Counter

from weilstat.galois import frob_signed_type, galois_quartic_exact, identify_galois_sampled
from weilstat.weil import weil_poly

P = weil_poly((25, -5, 2, -1, 1), 5)  # x^4-x^3+2x^2-5x+25
print(P.to_text())

for ell in (3, 7, 11, 13, 17, 19, 23):
    try:
        print(f"  ell={ell:2d}  {frob_signed_type(P, ell)}")
    except Exception as exc:
        print(f"  ell={ell:2d}  skipped: {exc}")

gid = identify_galois_sampled(P, 200, early_exit=False)
print("\ntype frequencies over", gid.samples_used, "primes:")
for t, n in sorted(gid.type_counts.items(), key=lambda kv: -kv[1]):
    print(f"  {str(t):8s} {n / gid.samples_used:.3f}")
print("class sizes / 8 predict 1/8, 1/8, 1/4, 1/4, 1/4")
print("sampled:", gid.group, " exact:", galois_quartic_exact(P).group)
print(galois_quartic_exact(P).certificate)

# x^4 + 9 over F_3 has a smaller group: no [2-] or [1+1-] ever appears
Q = weil_poly((9, 0, 0, 0, 1), 3)
g = identify_galois_sampled(Q, 100, early_exit=False)
print("\nx^4+9:", g.group, Counter({str(k): v for k, v in g.type_counts.items()}))

# hunt for cyclic quartics
found = []
for q in (3, 5, 7, 11, 13):
    for a1 in range(-6, 7):
        for a2 in range(-2 * q, 2 * q + 1):
            try:
                W = weil_poly((q * q, q * a1, a2, a1, 1), q)
                if galois_quartic_exact(W).group == "C4":
                    found.append(W.to_text() + f"  (q={q})")
            except Exception:
                pass
print("\ncyclic Weil quartics:", *found[:8], sep="\n  ")
