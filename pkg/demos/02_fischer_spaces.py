"""Fischer spaces of wreath-product 3-transposition groups.

Points are the conjugates t.(i,j) of a transposition inside T wr S_n; two
points are collinear exactly when their product has order three, and the
third point of their common line is the conjugate of one by the other.
"""

from matsuo import build_named_space, builtin_group, build_wreath_space, third_point

print("== the named families ==")
for family, n in [("A", 4), ("W2A", 4), ("W3A", 4), ("W2D", 4),
                  ("W3D", 3), ("WrA4", 2), ("Wr3x3", 2), ("Wr3p2", 2)]:
    sp = build_named_space(family, n)
    degrees = sorted({sp.degree(p) for p in range(len(sp.points))})
    print(f"{family}:{n}  points={len(sp.points):4d}  lines={sp.line_count():5d}"
          f"  lines/point={degrees}  connected={sp.is_connected()}")

print("\n== third points ==")
sp = build_named_space("W3A", 3)
b12 = sp.points[sp.point_of_label("b(1,2)")]
c12 = sp.points[sp.point_of_label("c(1,2)")]
r = third_point(sp, b12, c12)
print("line through b(1,2), c(1,2) closes at", sp.labels[sp.index[r]])

sp4 = build_named_space("A", 4)
p = sp4.points[sp4.point_of_label("b(1,2)")]
q = sp4.points[sp4.point_of_label("b(3,4)")]
print("b(1,2) and b(3,4) are orthogonal:", third_point(sp4, p, q) is None)

print("\n== a custom base group ==")
v4 = builtin_group("V4")
sp = build_wreath_space(v4, 3)
print("V4 wreath over 3 positions:", sp.describe())

print("\n== line counts are computed, never assumed ==")
for n in (3, 4, 5):
    sp = build_named_space("W2A", n)
    per_triple = 4 * (n * (n - 1) * (n - 2) // 6)
    print(f"W2A:{n}: computed {sp.line_count()} lines"
          f" = 4 per position triple ({per_triple})")
