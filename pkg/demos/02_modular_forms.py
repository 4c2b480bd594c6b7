"""Tour: the level-1 modular forms ring and its q-expansions.

Run:  python3 demos/02_modular_forms.py
"""

from tmfkit.modforms import (
    ModularForm, basis_monomials, dimension, monomial_label,
    q_expansion, j_q_expansion,
)

print("=== dimensions and monomial bases ===")
for k in (0, 4, 6, 12, 24, 36, 48):
    labels = [monomial_label(m) for m in basis_monomials(k)]
    print("weight %2d: dim %d  basis %s" % (k, dimension(k), labels))

print()
print("=== the relation c6^2 = c4^3 - 1728*Delta ===")
c6 = ModularForm.generator("c6")
print("c6 * c6 normalizes to:", c6 * c6)

print()
print("=== q-expansions ===")
print("E4    =", q_expansion(ModularForm.generator("c4"), 6))
print("-E6   =", q_expansion(ModularForm.generator("c6"), 6))
print("Delta =", q_expansion(ModularForm.generator("Delta"), 9))
print("        (Ramanujan tau: 1, -24, 252, -1472, 4830, ...)")

print()
print("=== the j-function ===")
print("j =", j_q_expansion(4))
