"""From transverse to contact coefficients and on to (+-1) surgery diagrams."""

from csl.convert import (ContactSurgerySpec, contact_to_transverse, ding_geiges_expand,
                         openbook_agrees, stabilization_shift, transverse_to_contact)
from csl.slope import Slope

tb = -1
for s in (Slope(-3), Slope(1, 2), Slope(5, 2)):
    spec = transverse_to_contact(tb, s)
    back = contact_to_transverse(tb, spec)
    print(f"transverse {s} on tb={tb}: contact {spec.coefficient}, back to {back.slope}"
          f" ({'admissible' if back.admissible else 'inadmissible'})")

tb2, rot2, n2 = stabilization_shift(-1, 0, 3)
print(f"contact +3 on (tb, rot) = (-1, 0) is contact +{n2} on ({tb2}, {rot2})")

for r in (Slope(-8, 5), Slope(5, 2)):
    d = ding_geiges_expand(ContactSurgerySpec(r))
    print(f"contact {r}: {len(d)} push-offs, {d.plus_count} of them +1")
    for e in d:
        print("   ", e.to_dict())
    print("    agrees with the open book:", openbook_agrees(r))
