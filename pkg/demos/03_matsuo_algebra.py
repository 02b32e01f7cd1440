"""The Matsuo algebra of a Fischer space over Q(eta).

Each point is an idempotent; orthogonal points multiply to zero; collinear
points c, d on the line {c, d, e} multiply to (eta/2)(c + d - e).  The
Frobenius form (1 / 0 / eta/2 on the basis) associates with the product, and
its Gram determinant locates the critical parameter values.
"""

from fractions import Fraction

from matsuo import AlgebraVector, build_named_space, critical_values, gram, radical_dim

sp = build_named_space("A", 4)
b12 = AlgebraVector.from_labels(sp, ["b(1,2)"])
b13 = AlgebraVector.from_labels(sp, ["b(1,3)"])
b34 = AlgebraVector.from_labels(sp, ["b(3,4)"])

print("== products ==")
print("b(1,2) * b(1,2) =", b12 * b12)
print("b(1,2) * b(3,4) =", b12 * b34)
print("b(1,2) * b(1,3) =", b12 * b13)

double = b12 + b34
print("double axis x = b(1,2)+b(3,4); x*x == x:", (double * double).coeffs == double.coeffs)

print("\n== the Frobenius form ==")
print("(b12, b12) =", b12.form(b12))
print("(b12, b13) =", b12.form(b13))
print("(b12, b34) =", b12.form(b34))
lhs = (b12 * b13).form(b34)
rhs = b12.form(b13 * b34)
print("associativity (uv, w) == (u, vw):", lhs == rhs)

print("\n== Gram data and critical values ==")
tri = build_named_space("A", 3)
data = gram(tri)
print("one line: det(2I + eta A) =", data.det)
cv = critical_values(tri)
print("rational critical values  =", sorted(cv.roots))
print("certificate (square-free) =", cv.certificate)

print("\n== the radical at special eta ==")
for eta0 in (Fraction(1, 3), Fraction(2), Fraction(-1)):
    print(f"radical dimension at eta={eta0}:", radical_dim(tri, eta0))

print("\n== a larger space ==")
big = build_named_space("Wr3x3", 4)
cv = critical_values(big)
print("Wr3x3:4 critical values:", sorted(cv.roots))
print("eta = 2 is critical, matching the flip-dimension drop seen in demo 06")
