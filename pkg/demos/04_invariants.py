"""Invariants of surgery diagrams: the model family and the rational tb and
rot of the dual knot after contact (+n)-surgery."""

from csl.convert import ContactSurgerySpec, ding_geiges_expand
from csl.invariants import (c1_dual_class, diagram_from_expansion, dual_knot_closed_forms,
                            fourmanifold_pack, knot_order, model_diagram, model_slides,
                            rot_rational, tb_rational)
from csl.slope import Slope

print(" g  n  chi  sigma  c1^2      d3      PD c1")
for g, n in ((1, 2), (1, 3), (2, 5), (3, 9)):
    d = model_diagram(g, n)
    p = fourmanifold_pack(d)
    pd = c1_dual_class(d, model_slides(g, n))
    print(f"{g:2} {n:2} {p.euler:4} {p.signature:6}  {str(p.c1_squared):8} {str(p.d3):8} {pd}")

t, r, n, g = -3, 0, 2, 0
d = diagram_from_expansion(t, r, ding_geiges_expand(ContactSurgerySpec(Slope(n))))
f = dual_knot_closed_forms(t, r, n, g)
print(f"contact +{n} on tb={t}, rot={r}:")
print("  from the diagram:   tb_Q =", tb_rational(d), " rot_Q =", rot_rational(d),
      " order =", knot_order(d))
print("  closed forms:       tb_Q =", f.tb_q, " rot_Q =", f.rot_q, " order =", f.order)
