"""Fischer spaces of wreath-product 3-transposition groups.

Points are the class elements t.(i,j) = t_i t_j^-1 (i,j) of T wr S_n; two
points are collinear when their product has order three, and the third point
of their line is the conjugate of one by the other.  The third-point map is
computed by literal conjugation inside the wreath group, which sidesteps the
orientation case-split of the closed formulas; the formula route is kept as
an independent oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Optional, Sequence

from .groups import FiniteGroup, builtin_group, validate_orders


class ThreeTranspositionError(ValueError):
    """Base group with an element of order > 3."""


class InvalidConfigurationError(ValueError):
    """A diagram request violating the double-axis orthogonality constraints."""


# A point t.(i,j): group element index t, positions 1 <= i < j <= n.
@dataclass(frozen=True, order=True)
class Point:
    i: int
    j: int
    t: int

    def __post_init__(self):
        if not (1 <= self.i < self.j):
            raise ValueError(f"positions must satisfy i < j, got ({self.i}, {self.j})")


def make_point(group: FiniteGroup, t: int, i: int, j: int) -> Point:
    """Normalized point; t.(i,j) and t^-1.(j,i) are the same element."""
    if i == j:
        raise ValueError("point positions must differ")
    if i > j:
        return Point(j, i, group.inverse(t))
    return Point(i, j, t)


# ---------------------------------------------------------------------------
# wreath group elements: (base tuple of T-indices, permutation tuple)
# acting on pairs (x, pos) by (x, pos) . (b, s) = (x * b[pos], s[pos])
# ---------------------------------------------------------------------------

WElem = tuple[tuple[int, ...], tuple[int, ...]]


def w_identity(group: FiniteGroup, n: int) -> WElem:
    return (tuple([0] * n), tuple(range(n)))


def w_mul(group: FiniteGroup, a: WElem, b: WElem) -> WElem:
    ab, ap = a
    bb, bp = b
    base = tuple(group.mul(ab[i], bb[ap[i]]) for i in range(len(ab)))
    perm = tuple(bp[ap[i]] for i in range(len(ap)))
    return (base, perm)


def w_inv(group: FiniteGroup, a: WElem) -> WElem:
    ab, ap = a
    n = len(ab)
    inv_perm = [0] * n
    for i, img in enumerate(ap):
        inv_perm[img] = i
    base = tuple(group.inverse(ab[inv_perm[i]]) for i in range(n))
    return (base, tuple(inv_perm))


def w_conj(group: FiniteGroup, x: WElem, y: WElem) -> WElem:
    """x conjugated by y, i.e. y^-1 * x * y."""
    return w_mul(group, w_mul(group, w_inv(group, y), x), y)


def w_order(group: FiniteGroup, x: WElem, cap: int = 8) -> int:
    ident = w_identity(group, len(x[0]))
    acc = x
    for k in range(1, cap + 1):
        if acc == ident:
            return k
        acc = w_mul(group, acc, x)
    raise ThreeTranspositionError(f"element order exceeds {cap}")


def point_to_elem(group: FiniteGroup, n: int, p: Point) -> WElem:
    base = [0] * n
    base[p.i - 1] = p.t
    base[p.j - 1] = group.inverse(p.t)
    perm = list(range(n))
    perm[p.i - 1], perm[p.j - 1] = p.j - 1, p.i - 1
    return (tuple(base), tuple(perm))


def elem_to_point(group: FiniteGroup, e: WElem) -> Optional[Point]:
    base, perm = e
    moved = [i for i, img in enumerate(perm) if img != i]
    if len(moved) != 2:
        return None
    i, j = moved
    if perm[i] != j or perm[j] != i:
        return None
    t = base[i]
    if base[j] != group.inverse(t):
        return None
    for k in range(len(base)):
        if k not in (i, j) and base[k] != 0:
            return None
    return Point(i + 1, j + 1, t)


# ---------------------------------------------------------------------------
# the space
# ---------------------------------------------------------------------------

EAGER_LINE_LIMIT = 500


class FischerSpace:
    """Indexed point set with the third-point map and line list.

    Point order is lexicographic by (i, j, t-index), which fixes the basis
    order of the Matsuo algebra and every export.
    """

    def __init__(
        self,
        base: FiniteGroup,
        n: int,
        family: Optional[str] = None,
        labeler: Optional[Callable[[Point], str]] = None,
    ):
        if n < 2:
            raise ValueError("need at least two positions")
        if not validate_orders(base):
            raise ThreeTranspositionError(
                f"{base.name} has an element of order > 3; the class of a"
                " transposition is not a set of 3-transpositions"
            )
        self.base = base
        self.n = n
        self.family = family
        self.points: tuple[Point, ...] = tuple(
            Point(i, j, t)
            for i in range(1, n + 1)
            for j in range(i + 1, n + 1)
            for t in range(base.order)
        )
        self.index: dict[Point, int] = {p: k for k, p in enumerate(self.points)}
        self._elems: list[WElem] = [point_to_elem(base, n, p) for p in self.points]
        self._build_third()
        if labeler is None:
            labeler = lambda p: f"{base.labels[p.t]}.({p.i},{p.j})"
        self.labels: tuple[str, ...] = tuple(labeler(p) for p in self.points)
        self.label_index: dict[str, int] = {}
        for k, lab in enumerate(self.labels):
            self.label_index[lab] = k
        self.lines: Optional[tuple[tuple[int, int, int], ...]] = None
        if len(self.points) <= EAGER_LINE_LIMIT:
            self.lines = tuple(sorted(self._line_set()))
            self._line_lookup = frozenset(self.lines)

    def _build_third(self) -> None:
        npts = len(self.points)
        third = [[-1] * npts for _ in range(npts)]
        group = self.base
        elems = self._elems
        for p in range(npts):
            ep = elems[p]
            for q in range(p + 1, npts):
                eq = elems[q]
                order = w_order(group, w_mul(group, ep, eq))
                if order == 3:
                    r_pt = elem_to_point(group, w_conj(group, ep, eq))
                    if r_pt is None:
                        raise ThreeTranspositionError(
                            "conjugate left the transposition class"
                        )
                    r = self.index[r_pt]
                    third[p][q] = r
                    third[q][p] = r
                elif order > 3:
                    raise ThreeTranspositionError(
                        f"points {self.points[p]} and {self.points[q]} generate"
                        f" an element of order {order}"
                    )
        self.third: list[list[int]] = third

    # -- lines ---------------------------------------------------------------

    def _line_set(self) -> set[tuple[int, int, int]]:
        lines: set[tuple[int, int, int]] = set()
        npts = len(self.points)
        for p in range(npts):
            row = self.third[p]
            for q in range(p + 1, npts):
                r = row[q]
                if r >= 0:
                    lines.add(tuple(sorted((p, q, r))))  # type: ignore[arg-type]
        return lines

    def iter_lines(self) -> Iterator[tuple[int, int, int]]:
        if self.lines is not None:
            yield from self.lines
        else:
            yield from sorted(self._line_set())

    def line_count(self) -> int:
        if self.lines is not None:
            return len(self.lines)
        return sum(1 for _ in self.iter_lines())

    def has_line(self, line: tuple[int, int, int]) -> bool:
        if self.lines is not None:
            return line in self._line_lookup
        p, q, r = line
        return self.third[p][q] == r

    # -- queries -------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.points)

    def collinear(self, p: int, q: int) -> bool:
        return self.third[p][q] >= 0

    def third_index(self, p: int, q: int) -> Optional[int]:
        r = self.third[p][q]
        return r if r >= 0 else None

    def degree(self, p: int) -> int:
        """Number of lines through point p."""
        partners = sum(1 for r in self.third[p] if r >= 0)
        assert partners % 2 == 0
        return partners // 2

    def is_connected(self) -> bool:
        npts = len(self.points)
        if npts == 0:
            return True
        seen = [False] * npts
        stack = [0]
        seen[0] = True
        count = 1
        while stack:
            p = stack.pop()
            for q, r in enumerate(self.third[p]):
                if r >= 0 and not seen[q]:
                    seen[q] = True
                    count += 1
                    stack.append(q)
        return count == npts

    def point_of_label(self, label: str) -> int:
        try:
            return self.label_index[label.replace(" ", "")]
        except KeyError:
            raise KeyError(f"no point labelled {label!r} in this space") from None

    def describe(self) -> str:
        fam = self.family or f"Wr({self.base.name},{self.n})"
        return f"{fam}: {len(self.points)} points, {self.line_count()} lines"

    def export(self) -> dict:
        """JSON-ready space description."""
        return {
            "family": self.family,
            "n": self.n,
            "base_group": self.base.name,
            "points": [
                {"label": self.labels[k], "t": p.t, "i": p.i, "j": p.j}
                for k, p in enumerate(self.points)
            ],
            "lines": [list(line) for line in self.iter_lines()],
        }


def build_wreath_space(base: FiniteGroup, n: int, family: Optional[str] = None,
                       labeler: Optional[Callable[[Point], str]] = None) -> FischerSpace:
    """Fischer space of Wr(T, n); |T| * n(n-1)/2 points."""
    return FischerSpace(base, n, family=family, labeler=labeler)


def third_point(sp: FischerSpace, p: Point, q: Point) -> Optional[Point]:
    """Third point of the line through p and q, or None if not collinear."""
    if p == q:
        raise ValueError("third point needs two distinct points")
    r = sp.third[sp.index[p]][sp.index[q]]
    return sp.points[r] if r >= 0 else None


def third_point_by_formula(sp: FischerSpace, p: Point, q: Point) -> Optional[Point]:
    """Closed-formula third point; the independent oracle for conjugation.

    Lines either join t.(i,j), s.(j,k) to (ts).(i,k) across overlapping
    position pairs, or join t.(i,j), s.(i,j) to (s t^-1 s).(i,j) when
    s t^-1 has order three.
    """
    group = sp.base
    if p == q:
        raise ValueError("third point needs two distinct points")
    shared = {p.i, p.j} & {q.i, q.j}
    if len(shared) == 2:
        # same position pair
        t, s = p.t, q.t
        st = group.mul(s, group.inverse(t))
        if group.element_order(st) != 3:
            return None
        r = group.mul(group.mul(s, group.inverse(t)), s)
        return make_point(group, r, p.i, p.j)
    if len(shared) != 1:
        return None
    m = shared.pop()
    # orient p as a.(x, m) and q as b.(m, y); then the third is (ab).(x, y)
    if p.j == m:
        a, x = p.t, p.i
    else:
        a, x = group.inverse(p.t), p.j
    if q.i == m:
        b, y = q.t, q.j
    else:
        b, y = group.inverse(q.t), q.i
    return make_point(group, group.mul(a, b), x, y)


def point_degree(sp: FischerSpace, p: Point) -> int:
    return sp.degree(sp.index[p])


# ---------------------------------------------------------------------------
# named families
# ---------------------------------------------------------------------------

NAMED_FAMILIES = ("A", "W2A", "W3A", "W2D", "W3D", "WrA4", "Wr3p2", "Wr3x3")

_FAMILY_BASES = {
    "A": "C1",
    "W2A": "C2",
    "W3A": "C3",
    "W2D": "V4",
    "W3D": "S3",
    "WrA4": "A4",
    "Wr3p2": "E27",
    "Wr3x3": "C3xC3",
}


def _letter_labeler(letters: dict[int, str]) -> Callable[[Point], str]:
    def lab(p: Point) -> str:
        return f"{letters[p.t]}({p.i},{p.j})"

    return lab


def _w3a_labeler(p: Point) -> str:
    # t = 1 is c(i,j); t = 2 = inverse is stored on (i,j) but displays c(j,i)
    if p.t == 0:
        return f"b({p.i},{p.j})"
    if p.t == 1:
        return f"c({p.i},{p.j})"
    return f"c({p.j},{p.i})"


def _w3d_labeler(group: FiniteGroup) -> Callable[[Point], str]:
    one = group.index_of("1")
    f = group.index_of("f")
    f2 = group.index_of("f^2")
    e = group.index_of("e")
    fe = group.index_of("f*e")
    f2e = group.index_of("f^2*e")

    def lab(p: Point) -> str:
        if p.t == one:
            return f"b({p.i},{p.j})"
        if p.t == e:
            return f"c({p.i},{p.j})"
        if p.t == f:
            return f"d({p.i},{p.j})"
        if p.t == f2:
            return f"d({p.j},{p.i})"
        if p.t == fe:
            return f"e({p.i},{p.j})"
        assert p.t == f2e
        return f"f({p.i},{p.j})"

    return lab


def build_named_space(family: str, n: int) -> FischerSpace:
    """Named family with the conventional point labels attached."""
    if family not in NAMED_FAMILIES:
        raise ValueError(f"unknown family {family!r}; choose from {NAMED_FAMILIES}")
    if family == "A" and n < 3:
        raise ValueError("family A needs n >= 3")
    if n < 2:
        raise ValueError("need n >= 2")
    base = builtin_group(_FAMILY_BASES[family])
    labeler: Optional[Callable[[Point], str]] = None
    if family == "A":
        labeler = _letter_labeler({0: "b"})
    elif family == "W2A":
        labeler = _letter_labeler({0: "b", 1: "c"})
    elif family == "W3A":
        labeler = _w3a_labeler
    elif family == "W2D":
        labeler = _letter_labeler(
            {
                base.index_of("1"): "b",
                base.index_of("e"): "c",
                base.index_of("f"): "d",
                base.index_of("ef"): "e",
            }
        )
    elif family == "W3D":
        labeler = _w3d_labeler(base)
    sp = build_wreath_space(base, n, family=family, labeler=labeler)
    if family == "W3D":
        # Accept the alternative name g(i,j) for the point stored as d(j,i).
        for k, p in enumerate(sp.points):
            if sp.labels[k].startswith("d("):
                inner = sp.labels[k][2:-1]
                a, b = inner.split(",")
                sp.label_index[f"g({b},{a})"] = k
    return sp


def parse_space_spec(spec: str) -> FischerSpace:
    """Build a named space from a "FAMILY:n" string, e.g. "W3A:4"."""
    try:
        family, n_text = spec.split(":")
        n = int(n_text)
    except ValueError:
        raise ValueError(f"bad space spec {spec!r}; expected FAMILY:n") from None
    return build_named_space(family, n)


# ---------------------------------------------------------------------------
# automorphisms and diagrams
# ---------------------------------------------------------------------------

def is_space_automorphism(sp: FischerSpace, perm: Sequence[int]) -> bool:
    """True iff perm is a bijection on points mapping lines to lines."""
    npts = len(sp.points)
    if len(perm) != npts or sorted(perm) != list(range(npts)):
        return False
    for line in sp.iter_lines():
        image = tuple(sorted(perm[p] for p in line))
        if not sp.has_line(image):
            return False
    return True


@dataclass(frozen=True)
class Diagram:
    """Collinearity graph on an ordered support (a, b, c, d, e).

    The pairs (b, c) and (d, e) are the double-axis constituents and must be
    non-edges.
    """

    adjacency: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        adj = self.adjacency
        if len(adj) != 5 or any(len(row) != 5 for row in adj):
            raise InvalidConfigurationError("diagram needs a 5x5 adjacency matrix")
        for v in range(5):
            if adj[v][v]:
                raise InvalidConfigurationError("diagram has a loop")
            for w in range(5):
                if adj[v][w] != adj[w][v]:
                    raise InvalidConfigurationError("diagram adjacency not symmetric")
        if adj[1][2] or adj[3][4]:
            raise InvalidConfigurationError(
                "double-axis constituents must be orthogonal (no b-c or d-e edge)"
            )

    def edges(self) -> list[tuple[int, int]]:
        return [(v, w) for v in range(5) for w in range(v + 1, 5) if self.adjacency[v][w]]

    def is_connected(self) -> bool:
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for w in range(5):
                if self.adjacency[v][w] and w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == 5


def diagram_of(sp: FischerSpace, a: int, bc: tuple[int, int], de: tuple[int, int]) -> Diagram:
    """Diagram on the support of a type-D generating configuration."""
    b, c = bc
    d, e = de
    support = (a, b, c, d, e)
    if len(set(support)) != 5:
        raise InvalidConfigurationError("support points must be distinct")
    if sp.collinear(b, c):
        raise InvalidConfigurationError("pair (b, c) must be non-collinear")
    if sp.collinear(d, e):
        raise InvalidConfigurationError("pair (d, e) must be non-collinear")
    adj = tuple(
        tuple(v != w and sp.collinear(support[v], support[w]) for w in range(5))
        for v in range(5)
    )
    return Diagram(adj)


# the order-8 relabelling group: b<->c, d<->e, and (b,c)<->(d,e); a is fixed
_DIAGRAM_SYMMETRIES: tuple[tuple[int, ...], ...] = tuple(
    tuple(perm)
    for perm in (
        (0, 1, 2, 3, 4),
        (0, 2, 1, 3, 4),
        (0, 1, 2, 4, 3),
        (0, 2, 1, 4, 3),
        (0, 3, 4, 1, 2),
        (0, 4, 3, 1, 2),
        (0, 3, 4, 2, 1),
        (0, 4, 3, 2, 1),
    )
)

_EDGE_BITS = [(v, w) for v in range(5) for w in range(v + 1, 5)]


def canonical_diagram(d: Diagram) -> int:
    """Lexicographically minimal 10-bit adjacency code over the 8 symmetries."""
    best = None
    for sym in _DIAGRAM_SYMMETRIES:
        code = 0
        for bit, (v, w) in enumerate(_EDGE_BITS):
            if d.adjacency[sym[v]][sym[w]]:
                code |= 1 << bit
        if best is None or code < best:
            best = code
    assert best is not None
    return best


def diagram_code_edges(code: int) -> list[str]:
    """Human-readable edge list of a canonical code."""
    names = "abcde"
    out = []
    for bit, (v, w) in enumerate(_EDGE_BITS):
        if code & (1 << bit):
            out.append(f"{names[v]}{names[w]}")
    return out
