"""Tour: the 3-local descent spectral sequence and stable homotopy groups.

Run:  python3 demos/03_descent_chart.py
"""

from tmfkit.chart import (
    descent_ss, render_chart_text, tmf_pi, duality_check, lifts_to_homotopy,
    k1_sphere,
)

print("=== the stable page over degrees -40..42 ===")
print("(digits: free rank over Z_(3); dots: order-3 classes)")
print(render_chart_text(n_min=-40, n_max=42))

print()
print("=== differentials leaving the zero line ===")
chart = descent_ss(0, 30)
for arrow in chart.pages[0].differentials:
    if arrow["from"][0] == 0:
        print("d5: %s -> %s" % (arrow["source"], arrow["target"]))

print()
print("=== homotopy groups ===")
for n in (0, 3, 8, 10, 24, 27, 40, 72, -21, -25, -45):
    rep = tmf_pi(n)
    print("pi_%-4d = %-18s generators %s" % (n, rep.group_string(),
                                             rep.labels()))
print("(the band -20..-1 is empty; try any n in it)")

print()
print("=== the -21-shifted duality, mod 3 ===")
for k in (0, 3, 10, 24):
    out = duality_check(k)
    print("degree %3d pairs with %4d: rows %s x cols %s, perfect: %s" % (
        k, out["partner_degree"], out["rows"], out["cols"], out["is_iso"]))

print()
print("=== which forms survive to homotopy? ===")
for name in ("c4", "c6", "Delta"):
    out = lifts_to_homotopy(name)
    print("%-6s -> %s" % (name, out["verdict"]))

print()
print("=== the K(1)-local sphere at p=3 ===")
for k in (-1, 0, 3, 7, 11, 23, 35):
    print("pi_%-3d = %s" % (k, k1_sphere(3, k)["group"]))
