"""Exact arithmetic in the rational-function field Q(eta).

Every coefficient in this package is either a Fraction or a ratio of
polynomials in eta; there is no floating point anywhere.  This walkthrough
shows the canonical forms, evaluation, and the root machinery used for
critical values.
"""

from fractions import Fraction

from matsuo import ETA, HALF_ETA, EtaPoly, EtaScalar
from matsuo.scalars import format_scalar, parse_scalar, rational_roots, square_free_part

print("== field arithmetic ==")
print("eta/2 + eta/2      =", HALF_ETA + HALF_ETA)
print("(eta/2)^2          =", HALF_ETA * HALF_ETA)

ratio = EtaScalar(EtaPoly((-4, 0, 1)), EtaPoly((-2, 1)))  # (eta^2-4)/(eta-2)
print("(eta^2-4)/(eta-2)  =", ratio, " (reduced on construction)")

print("\n== evaluation ==")
print("eta/2 at eta=2     =", HALF_ETA.evaluate(2))
print("eta/2 at eta=1/3   =", HALF_ETA.evaluate(Fraction(1, 3)))
pole = EtaScalar(1, EtaPoly((-2, 1)))
try:
    pole.evaluate(2)
except ZeroDivisionError as exc:
    print("1/(eta-2) at eta=2 -> pole error:", exc)

print("\n== roots and square-free parts ==")
p = EtaPoly((1, 1)) * EtaPoly((1, Fraction(-1, 2))) ** 2  # (1+eta)(1-eta/2)^2
print("p                  =", p)
print("square-free part   =", square_free_part(p))
print("rational roots     =", sorted(rational_roots(p)))

print("\n== text round trip ==")
s = HALF_ETA * HALF_ETA - EtaScalar(3)
text = format_scalar(s)
print("formatted          =", text)
print("parsed back equal  =", parse_scalar(text) == s)
