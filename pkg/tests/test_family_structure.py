"""Structural facts of the named families: line shapes, the full S3-family
third-point table, and the exact orbit structure of the standard flips."""

import pytest

from matsuo.fischer import build_named_space
from matsuo.flips import classify_orbits, standard_flip

# Third points over overlapping position pairs in the S3 family: entry
# TABLE[y][x] is the letter of the third point on the line through x(1,2)
# and y(2,3); the g letter names the reversed-index d point.
S3_THIRD_TABLE = {
    "b": {"b": "b", "c": "c", "d": "d", "g": "g", "e": "e", "f": "f"},
    "c": {"b": "c", "c": "b", "d": "e", "g": "f", "e": "d", "f": "g"},
    "d": {"b": "d", "c": "f", "d": "g", "g": "b", "e": "c", "f": "e"},
    "g": {"b": "g", "c": "e", "d": "b", "g": "d", "e": "f", "f": "c"},
    "e": {"b": "e", "c": "g", "d": "f", "g": "c", "e": "b", "f": "d"},
    "f": {"b": "f", "c": "d", "d": "c", "g": "e", "e": "g", "f": "b"},
}


def test_s3_family_third_point_table():
    sp = build_named_space("W3D", 3)
    for y_letter, row in S3_THIRD_TABLE.items():
        y = sp.point_of_label(f"{y_letter}(2,3)")
        for x_letter, z_letter in row.items():
            x = sp.point_of_label(f"{x_letter}(1,2)")
            expected = sp.point_of_label(f"{z_letter}(1,3)")
            got = sp.third[x][y]
            assert got == expected, (
                f"third({x_letter}(1,2), {y_letter}(2,3)) gave"
                f" {sp.labels[got]}, expected {z_letter}(1,3)"
            )


def _letter(label: str) -> str:
    return label.split("(")[0]


def _pair(label: str) -> frozenset:
    inner = label[label.index("(") + 1 : -1]
    return frozenset(int(x) for x in inner.split(","))


@pytest.mark.parametrize("n", [3, 4])
def test_w2d_line_shapes(n):
    # every line is one of bbb, bcc, bdd, bee, cde on a 3-letter support
    sp = build_named_space("W2D", n)
    allowed = [("b", "b", "b"), ("b", "c", "c"), ("b", "d", "d"),
               ("b", "e", "e"), ("c", "d", "e")]
    for line in sp.iter_lines():
        letters = tuple(sorted(_letter(sp.labels[p]) for p in line))
        assert letters in allowed, letters
        support = frozenset().union(*(_pair(sp.labels[p]) for p in line))
        assert len(support) == 3


@pytest.mark.parametrize("n", [3, 4])
def test_w3a_line_shapes(n):
    # lines are bbb or ccc over three positions, or bcc over two or three
    sp = build_named_space("W3A", n)
    for line in sp.iter_lines():
        letters = tuple(sorted(_letter(sp.labels[p]) for p in line))
        support = frozenset().union(*(_pair(sp.labels[p]) for p in line))
        if letters == ("b", "b", "b") or letters == ("c", "c", "c"):
            assert len(support) == 3
        else:
            assert letters == ("b", "c", "c")
            assert len(support) in (2, 3)
            if len(support) == 2:
                # the same-pair line {b(i,j), c(i,j), c(j,i)}
                pairs = [_pair(sp.labels[p]) for p in line]
                assert pairs[0] == pairs[1] == pairs[2]


def test_w3a_flip_orbit_structure():
    tau = standard_flip("W3A", 2)
    sp = tau.space
    dec = classify_orbits(sp, tau)
    labels = lambda pair: frozenset(sp.labels[p] for p in pair)
    assert sorted(sp.labels[s] for s in dec.singles) == ["b(1,2)", "b(3,4)"]
    assert {labels(p) for p in dec.doubles} == {
        frozenset({"b(1,3)", "b(2,4)"}),
        frozenset({"b(1,4)", "b(2,3)"}),
        frozenset({"c(1,3)", "c(2,4)"}),
        frozenset({"c(1,4)", "c(2,3)"}),
        frozenset({"c(3,1)", "c(4,2)"}),
        frozenset({"c(4,1)", "c(3,2)"}),
    }
    assert {labels(p) for p in dec.extras} == {
        frozenset({"c(1,2)", "c(2,1)"}),
        frozenset({"c(3,4)", "c(4,3)"}),
    }


def test_w2a_flip_double_structure():
    tau = standard_flip("W2A", 2)
    sp = tau.space
    dec = classify_orbits(sp, tau)
    pairs = {frozenset(sp.labels[p] for p in pair) for pair in dec.doubles}
    assert pairs == {
        frozenset({"b(1,3)", "b(2,4)"}),
        frozenset({"b(1,4)", "b(2,3)"}),
        frozenset({"c(1,3)", "c(2,4)"}),
        frozenset({"c(1,4)", "c(2,3)"}),
    }


def test_a4_inner_flip_singles_are_klein_four():
    tau = standard_flip("WrA4", 2)
    sp = tau.space
    dec = classify_orbits(sp, tau)
    klein = {"()", "(1,2)(3,4)", "(1,3)(2,4)", "(1,4)(2,3)"}
    for s in dec.singles:
        point = sp.points[s]
        assert sp.base.labels[point.t] in klein
        assert (point.i, point.j) in ((1, 2), (3, 4))
    assert len(dec.singles) == 8


def test_a4_outer_flip_singles():
    tau = standard_flip("WrA4o", 2)
    sp = tau.space
    dec = classify_orbits(sp, tau)
    fixed_elems = {"()", "(1,2)(3,4)", "(1,3,4)", "(2,3,4)", "(1,4,3)", "(2,4,3)"}
    seen = set()
    for s in dec.singles:
        point = sp.points[s]
        assert (point.i, point.j) in ((1, 2), (3, 4))
        seen.add(sp.base.labels[point.t])
    assert seen == fixed_elems
    assert not dec.extras


def test_e27_flip_singles_and_extras_exponents():
    tau = standard_flip("Wr3p2", 2)
    sp = tau.space
    dec = classify_orbits(sp, tau)
    for s in dec.singles:
        point = sp.points[s]
        r, rem = divmod(point.t, 9)
        sdig, _ = divmod(rem, 3)
        assert (r + sdig) % 3 == 0
        assert (point.i, point.j) in ((1, 2), (3, 4))
    for p, q in dec.extras:
        a, b = sp.points[p], sp.points[q]
        assert (a.i, a.j) == (b.i, b.j)
        r, rem = divmod(a.t, 9)
        sdig, _ = divmod(rem, 3)
        assert (r + sdig) % 3 != 0


def test_wr3x3_flip_singles_exponents():
    tau = standard_flip("Wr3x3", 2)
    sp = tau.space
    dec = classify_orbits(sp, tau)
    for s in dec.singles:
        point = sp.points[s]
        r, sdig = divmod(point.t, 3)
        assert (r + sdig) % 3 == 0
