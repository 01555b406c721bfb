"""Which maximal torus does a random element of Sp_4(F_ell) live in?

The answer is a conjugacy class of the Weyl group B_2, read off from the
characteristic polynomial.  Class frequencies approach |C|/|W| as ell grows.
"""

import numpy as np

from weilstat.equidist import equidist_experiment, group_order_and_bounds, parse_spec, random_group_element, theta_class

rng = np.random.default_rng(1)
spec = parse_spec("sp4", 101)
g = random_group_element(spec, rng)
print(g)
print("torus class:", theta_class(spec, g).type)

for ell in (5, 11, 31, 101, 251):
    rep = equidist_experiment(parse_spec("sp4", ell), 100_000, rng)
    cells = "  ".join(f"{r.type} {r.frequency:.3f}" for r in rep.rows)
    print(f"ell={ell:3d}  max dev {rep.max_deviation:.4f}  non-regular {rep.filtered_fraction:.4f}  {cells}")

# deviation shrinks roughly like 1/ell, as does the non-regular fraction.
# At ell=5 the split class is empty: F_5* has only one pair {a, 1/a} with a != +-1.
rep = equidist_experiment(parse_spec("gl2", 101), 100_000, rng)
print("\nGL_2(F_101):", [(r.type, round(r.frequency, 4), r.target) for r in rep.rows])

for fam, ell in (("gl2", 7), ("sl2", 7), ("sp4", 7), ("gsp4", 7)):
    b = group_order_and_bounds(parse_spec(fam, ell), samples=5000)
    print(f"{b['spec']:12s} |G|={b['order']:>12d} <= ell^d={b['ell^d']:>12d}  classes~{b['class_count']}")
