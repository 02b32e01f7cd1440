"""The seven standard flips and their fixed and flip subalgebras.

A flip is an involutive automorphism of the space.  Its orbits split into
singles, doubles (orthogonal pairs), and extras (collinear pairs); the orbit
vectors form a basis of the fixed subalgebra, and the singles and doubles
generate the flip subalgebra.  At eta = 2 two of the families drop one
dimension, which the engine confirms along two independent routes.
"""

from matsuo import FLIP_FAMILIES, ScalarMode, classify_orbits, flip_report, flip_subalgebra, standard_flip
from matsuo.closure import specialized_dimension

print("== orbit counts and fixed dimensions at k = 2 ==")
for family in FLIP_FAMILIES:
    tau = standard_flip(family, 2)
    dec = classify_orbits(tau.space, tau)
    s, d, e = dec.counts()
    print(f"{family:7s} singles={s:3d} doubles={d:3d} extras={e:3d}"
          f"  fixed dim={dec.orbit_count():3d}  ({tau.space.describe()})")

print("\n== flip dimensions at k = 2 ==")
for family in ("W2A", "W3A", "W2D", "WrA4", "WrA4o"):
    tau = standard_flip(family, 2)
    alg = flip_subalgebra(tau.space, tau, ScalarMode.symbolic())
    fixed = classify_orbits(tau.space, tau).orbit_count()
    marker = "= fixed" if alg.dimension == fixed else f"= fixed - {fixed - alg.dimension}"
    print(f"{family:7s} flip dim {alg.dimension:3d} {marker}")

print("\n== the eta = 2 drop, double-entry ==")
for family in ("Wr3x3", "Wr3p2"):
    tau = standard_flip(family, 2)
    sym = flip_subalgebra(tau.space, tau, ScalarMode.symbolic())
    ev = flip_subalgebra(tau.space, tau, ScalarMode.evaluated(2))
    spec = specialized_dimension(sym, 2)
    print(f"{family}: symbolic {sym.dimension}, evaluated(2) {ev.dimension},"
          f" specialize-last {spec}  (both eta=2 routes agree)")

print("\n== a full report ==")
report = flip_report("W3A", 2, etas=[5])
for key in ("family", "k", "singles", "doubles", "extras",
            "fixed_dim", "flip_dim_symbolic", "flip_dims_at", "flip_equals_fixed"):
    print(f"  {key}: {report[key]}")
