"""Subalgebra generation: echelonized spans closed under the product.

The closure engine runs either over Q(eta) (symbolic mode) or over Q at a
fixed rational eta (evaluated mode); the two modes agree away from the
critical values, which is the consistency protocol used by all searches.
"""

from matsuo import ScalarMode, build_named_space, close, consistency_check, is_direct_sum

SYM = ScalarMode.symbolic()
ONE = SYM.one()

print("== the line algebra ==")
sp = build_named_space("A", 3)
line = close(sp, [{0: ONE}, {1: ONE}, {2: ONE}], SYM)
print("dimension:", line.dimension)
print("multiplication table:")
print(line.multiplication_table_csv())

print("== two generators already span their line ==")
print("dim <<b(1,2), b(1,3)>> =", close(sp, [{0: ONE}, {1: ONE}], SYM).dimension)

print("\n== direct sums ==")
big = build_named_space("A", 10)
g1 = {big.point_of_label("b(1,2)"): ONE}
g2 = {big.point_of_label("b(3,4)"): ONE}
pair = close(big, [g1, g2], SYM)
print("disjoint supports split:", is_direct_sum(pair, [[0], [1]]))
print("a line split 1|2 fails:", is_direct_sum(close(sp, [{0: ONE}, {1: ONE}, {2: ONE}], SYM), [[0], [1, 2]]))

print("\n== symbolic vs evaluated consistency ==")
w3a = build_named_space("W3A", 4)
gens = [{w3a.point_of_label("b(1,2)"): ONE}, {w3a.point_of_label("c(1,3)"): ONE}]
print("dimensions agree at eta=5:", consistency_check(w3a, gens, 5))
print("dimensions agree at eta=7:", consistency_check(w3a, gens, 7))

print("\n== closure is a closure operator ==")
from matsuo.closure import reclose

alg = close(w3a, gens, SYM)
print("re-closing adds nothing:", reclose(alg).dimension == alg.dimension)
