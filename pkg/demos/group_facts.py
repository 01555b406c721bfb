"""Two finite group checks.

1. In W(D_4), a subgroup meeting every class of B_4 contained in W(D_4)
   is everything.
2. The group (Z/2)^3 x| S_3 acting on the 8 sign vectors has no 8-cycle,
   so a degree-8 polynomial with that Galois group factors mod every prime.
"""

from weilstat.weyl import (
    build_group,
    conjugacy_classes,
    wdn_generation_check,
    order_profile_report,
    overgroup_classes_in_subgroup,
    weight_action_check,
)

B4, D4 = build_group("B", 4), build_group("D", 4)
print(B4.name, B4.order, D4.name, D4.order)
inside = overgroup_classes_in_subgroup(B4, D4)
print(len(conjugacy_classes(B4)), "classes in B_4,", len(inside), "of them inside W(D_4):")
print(" ", " ".join(str(c.type) for c in inside))

rep = wdn_generation_check(4)
print("search nodes:", rep["nodes"], " counterexamples:", rep["counterexamples"], f"({rep['seconds']:.2f}s)")

G = build_group("MUMFORD_PI")
print("\n", order_profile_report(G))
act = weight_action_check(G)
print("transitive on 8 points:", act["transitive"], " longest cycle:", act["max_cycle"])
for structure, n in act["cycle_structures"].items():
    print(f"  {structure:12s} {n}")

# smaller variant
print(order_profile_report(build_group("MUMFORD_PI_A3")))
