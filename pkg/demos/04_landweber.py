"""Tour: heights of formal group laws and the regular-sequence criterion.

Run:  python3 demos/04_landweber.py
"""

from tmfkit.algebra import ZZ, PrimeField
from tmfkit.fgl import (
    FormalGroupLaw, honda_fgl, height_profile,
    GradedRingPresentation, landweber_regularity,
)

print("=== heights over prime fields ===")
add = FormalGroupLaw.additive(PrimeField(3), 30)
print("additive law over F_3:      height", height_profile(add, 3).height)
mult = FormalGroupLaw.multiplicative(PrimeField(3), 30)
print("multiplicative law over F_3: height", height_profile(mult, 3).height)
for (p, n) in ((2, 2), (3, 2), (5, 1)):
    law = honda_fgl(p, n, p ** n + 2)
    print("Honda law (p=%d, n=%d):       height" % (p, n),
          height_profile(law, n).height)

print()
print("=== does (p, v_1, v_2, ...) act regularly? ===")


def show(tag, out):
    print("%-36s %s" % (tag, out["verdict"]))
    for st in out["stages"]:
        print("    stage %d (v=%s): %s" % (st["stage"], st["v"],
                                           st["status"]))


show("multiplicative over Z:",
     landweber_regularity(GradedRingPresentation(),
                          FormalGroupLaw.multiplicative(ZZ, 11), 3, 2, 4))
show("additive over Z:",
     landweber_regularity(GradedRingPresentation(),
                          FormalGroupLaw.additive(ZZ, 11), 3, 2, 4))
show("Honda (3,2) over F_3:",
     landweber_regularity(GradedRingPresentation().with_constant_relation(3),
                          honda_fgl(3, 2, 11), 3, 2, 4))
