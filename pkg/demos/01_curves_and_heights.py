"""Tour: Weierstrass invariants, formal groups, and the supersingular locus.

Run:  python3 demos/01_curves_and_heights.py
"""

from tmfkit.algebra import QQ, PrimeField
from tmfkit.weierstrass import (
    WeierstrassCurve, formal_group, hasse_invariant, exact_height,
    supersingular_polynomial,
)

print("=== invariants over Q ===")
for label, a in [("y^2 = x^3 + 1", (0, 0, 0, 0, 1)),
                 ("y^2 + y = x^3 - x^2   (conductor 11)", (0, -1, 1, 0, 0)),
                 ("y^2 = x^3 + x", (0, 0, 0, 1, 0))]:
    c = WeierstrassCurve.from_ints(QQ, *a)
    inv = c.invariants()
    kind, j = inv.j_class()
    print("%-40s c4=%-6s c6=%-6s Delta=%-6s j=%s" % (
        label, QQ.coeff_to_json(inv.c4), QQ.coeff_to_json(inv.c6),
        QQ.coeff_to_json(inv.delta), QQ.coeff_to_json(j)))

print()
print("=== the formal group of y^2 = x^3 + 1, to t^8 ===")
data = formal_group(WeierstrassCurve.from_ints(QQ, 0, 0, 0, 0, 1), 8)
print("x(t) =", data["x_series"])
print("F(x,y) =", data["fgl"].F)
print("invariant differential eta(t) =", data["eta"])

print()
print("=== ordinary vs supersingular over F_13 (short curves y^2=x^3+a4x+a6) ===")
F = PrimeField(13)
ss, ordinary = [], []
for a4 in range(13):
    for a6 in range(13):
        c = WeierstrassCurve.from_ints(F, 0, 0, 0, a4, a6)
        if not c.is_smooth():
            continue
        kind, j = c.invariants().j_class()
        target = ss if exact_height(c) == 2 else ordinary
        target.append(j)
print("supersingular j-invariants found:", sorted(set(ss)))
print("ordinary j-invariants found:    ", sorted(set(ordinary)))
rep = hasse_invariant(WeierstrassCurve.from_ints(F, 0, 0, 0, 1, 0))
print("Hasse invariant of y^2=x^3+x:", rep)

print()
print("=== supersingular polynomials Phi_p(j) ===")
for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 101):
    rep = supersingular_polynomial(p)
    print("p=%-4d Phi = %-40s degree %d" % (p, rep.phi.to_string("j"),
                                            rep.degree))
