"""Tight or overtwisted: verdicts with the rules that decided them."""

from csl.classifier import (classify_contact_positive, classify_inadmissible_transverse,
                            classify_link_surgery, contact_width, kmn, preset, tight_interval,
                            torus_knot)
from csl.slope import Slope

for knot, slope in ((torus_knot(-2, 3), Slope(1)), (preset("right-trefoil"), Slope(3, 2)),
                    (preset("figure-eight"), Slope(1))):
    v = classify_inadmissible_transverse(knot, slope)
    print(f"{knot.name} at {slope}: {v.headline()}")

k = kmn(1, 2)
v = classify_contact_positive(k, k.tb_max, k.rot_at_tbmax, 2)
print(f"{k.name}, contact +2 on a max-tb representative: {v.headline()}")

v = classify_link_surgery([3, 5, 2])
print("link with twists [3, 5, 2]:", v.headline(), "after", v.certificate["moves"], "moves")

print("contact width of the right trefoil:", contact_width(preset("right-trefoil")))
print("transverse slopes on T(-2,3):")
iv = tight_interval(torus_knot(-2, 3))
for region in iv["regions"]:
    print(f"   {region.describe():12} {region.outcome.value}")
print(f"   {'inf':12} {iv['infinity'].outcome.value}")
