"""Subalgebra generation: echelonized spans closed under the product.

The worklist multiplies each newly inserted basis row against every row
present at that moment, reduces the product, and inserts nonzero remainders;
bilinearity makes this cover all pairs of the final basis, so a terminated
run is a verified closure.  Everything works either over Q(eta) (symbolic
mode) or over Q at a fixed rational eta (evaluated mode).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .algebra import Vec, critical_values, vec_product
from .fischer import FischerSpace
from .scalars import EtaPoly, EtaScalar, PoleError


class UnsafeEtaError(ValueError):
    """Evaluated-mode eta that collides with a degenerate parameter value."""


# ---------------------------------------------------------------------------
# scalar modes
# ---------------------------------------------------------------------------

class ScalarMode:
    """Scalar domain of a computation: symbolic Q(eta) or evaluated at eta0."""

    __slots__ = ("eta0",)

    def __init__(self, eta0: Optional[Fraction] = None):
        if eta0 is not None:
            eta0 = Fraction(eta0)
            if eta0 in (Fraction(0), Fraction(1)):
                raise UnsafeEtaError("eta = 0 and eta = 1 are outside the parameter domain")
        self.eta0 = eta0

    @classmethod
    def symbolic(cls) -> "ScalarMode":
        return cls(None)

    @classmethod
    def evaluated(cls, eta0) -> "ScalarMode":
        return cls(Fraction(eta0))

    @property
    def is_symbolic(self) -> bool:
        return self.eta0 is None

    def one(self):
        return EtaScalar.one() if self.is_symbolic else Fraction(1)

    def zero(self):
        return EtaScalar.zero() if self.is_symbolic else Fraction(0)

    def eta(self):
        return EtaScalar.eta() if self.is_symbolic else self.eta0

    def half_eta(self):
        if self.is_symbolic:
            return EtaScalar(EtaPoly.eta(), 2)
        return self.eta0 / 2

    def from_fraction(self, q):
        q = Fraction(q)
        return EtaScalar.from_fraction(q) if self.is_symbolic else q

    def scalar_complexity(self, s) -> int:
        if self.is_symbolic:
            return s.complexity
        return 0

    def is_safe_for(self, sp: FischerSpace) -> bool:
        """Safe evaluated mode: away from 1/2, 2, -1 and the rational
        critical values of the ambient space.  Symbolic mode is always safe."""
        if self.is_symbolic:
            return True
        if self.eta0 in (Fraction(1, 2), Fraction(2), Fraction(-1)):
            return False
        return self.eta0 not in critical_values(sp).roots

    def describe(self) -> str:
        return "symbolic" if self.is_symbolic else f"eta={self.eta0}"

    def __eq__(self, other):
        return isinstance(other, ScalarMode) and self.eta0 == other.eta0

    def __hash__(self):
        return hash(("ScalarMode", self.eta0))

    def __repr__(self):
        return f"ScalarMode({self.describe()})"


# ---------------------------------------------------------------------------
# echelon bases of sparse vectors
# ---------------------------------------------------------------------------

class EchelonBasis:
    """Reduced echelon family of sparse rows with unit pivots.

    Rows are stored in insertion order (the worklist order); the pivot map
    gives each pivot column's row.  Pivot columns are eliminated from every
    other row, so reduction is a single pass and coordinates can be read off
    at the pivots.
    """

    def __init__(self, mode: ScalarMode):
        self.mode = mode
        self.rows: list[Vec] = []
        self.pivot_of_row: list[int] = []
        self.row_of_pivot: dict[int, int] = {}

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def dimension(self) -> int:
        return len(self.rows)

    def pivots_sorted(self) -> list[int]:
        return sorted(self.row_of_pivot)

    def reduce(self, vec: Vec) -> Vec:
        """Remainder of vec modulo the span; one pass over pivot columns."""
        work = dict(vec)
        for col in sorted(self.row_of_pivot):
            coef = work.get(col)
            if coef:
                row = self.rows[self.row_of_pivot[col]]
                for k, v in row.items():
                    cur = work.get(k)
                    new = (cur - coef * v) if cur is not None else -coef * v
                    if new:
                        work[k] = new
                    elif cur is not None:
                        del work[k]
        return work

    def coordinates(self, vec: Vec) -> Optional[list]:
        """Coefficients of vec on the rows, or None if vec is outside the span."""
        work = dict(vec)
        coords = [self.mode.zero()] * len(self.rows)
        for col in sorted(self.row_of_pivot):
            coef = work.get(col)
            if coef:
                ridx = self.row_of_pivot[col]
                coords[ridx] = coef
                row = self.rows[ridx]
                for k, v in row.items():
                    cur = work.get(k)
                    new = (cur - coef * v) if cur is not None else -coef * v
                    if new:
                        work[k] = new
                    elif cur is not None:
                        del work[k]
        if work:
            return None
        return coords

    def contains(self, vec: Vec) -> bool:
        return not self.reduce(vec)

    def _choose_pivot(self, vec: Vec) -> int:
        if self.mode.is_symbolic:
            return min(vec, key=lambda k: (vec[k].complexity, k))
        return min(vec)

    def insert(self, vec: Vec) -> bool:
        """Reduce and insert; True when the span grew."""
        rem = self.reduce(vec)
        if not rem:
            return False
        pivot = self._choose_pivot(rem)
        inv = self.mode.one() / rem[pivot]
        row = {k: v * inv for k, v in rem.items()}
        row[pivot] = self.mode.one()
        new_index = len(self.rows)
        # eliminate the new pivot column from the existing rows
        for other in self.rows:
            coef = other.get(pivot)
            if coef:
                for k, v in row.items():
                    cur = other.get(k)
                    new = (cur - coef * v) if cur is not None else -coef * v
                    if new:
                        other[k] = new
                    elif cur is not None:
                        del other[k]
        self.rows.append(row)
        self.pivot_of_row.append(pivot)
        self.row_of_pivot[pivot] = new_index
        return True

    def canonical_rows(self) -> tuple:
        """Unique reduced row echelon form of the span, leftmost pivots.

        Independent of insertion order and of the pivot-choice heuristic;
        suitable for exact basis comparisons.
        """
        rows = [dict(r) for r in self.rows]
        canon: list[Vec] = []
        pivots: list[int] = []
        for vec in rows:
            work = dict(vec)
            for row, piv in zip(canon, pivots):
                coef = work.get(piv)
                if coef:
                    for k, v in row.items():
                        cur = work.get(k)
                        new = (cur - coef * v) if cur is not None else -coef * v
                        if new:
                            work[k] = new
                        elif cur is not None:
                            del work[k]
            if not work:
                continue
            piv = min(work)
            inv = self.mode.one() / work[piv]
            newrow = {k: v * inv for k, v in work.items()}
            newrow[piv] = self.mode.one()
            for row in canon:
                coef = row.get(piv)
                if coef:
                    for k, v in newrow.items():
                        cur = row.get(k)
                        new = (cur - coef * v) if cur is not None else -coef * v
                        if new:
                            row[k] = new
                        elif cur is not None:
                            del row[k]
            canon.append(newrow)
            pivots.append(piv)
        order = sorted(range(len(canon)), key=lambda i: pivots[i])
        return tuple(tuple(sorted(canon[i].items())) for i in order)


# ---------------------------------------------------------------------------
# subalgebras
# ---------------------------------------------------------------------------

@dataclass
class Subalgebra:
    """Product-closed subspace with generator metadata."""

    space: FischerSpace
    mode: ScalarMode
    generators: list[tuple[Vec, str]]
    basis: EchelonBasis
    products_computed: int = 0
    _structure: Optional[list[list[Optional[dict[int, object]]]]] = field(
        default=None, repr=False
    )

    @property
    def dimension(self) -> int:
        return self.basis.dimension

    def contains(self, vec: Vec) -> bool:
        return self.basis.contains(vec)

    def coordinates(self, vec: Vec) -> Optional[list]:
        return self.basis.coordinates(vec)

    def row_vector(self, coords: Sequence) -> Vec:
        out: Vec = {}
        for c, row in zip(coords, self.basis.rows):
            if c:
                for k, v in row.items():
                    cur = out.get(k)
                    new = (cur + c * v) if cur is not None else c * v
                    if new:
                        out[k] = new
                    elif cur is not None:
                        del out[k]
        return out

    def product_in_coords(self, u_coords: Sequence, v_coords: Sequence) -> list:
        u = self.row_vector(u_coords)
        v = self.row_vector(v_coords)
        w = vec_product(self.space, u, v, self.mode.half_eta())
        coords = self.basis.coordinates(w)
        if coords is None:
            raise ValueError("product left the subalgebra; basis is not closed")
        return coords

    def structure_constants(self) -> list[list[dict[int, object]]]:
        """Sparse tensor: entry [i][j] maps basis index k to the coefficient
        of basis_k in basis_i * basis_j.  Computed lazily, symmetric."""
        if self._structure is not None:
            return self._structure  # type: ignore[return-value]
        d = self.dimension
        half = self.mode.half_eta()
        tensor: list[list[dict[int, object]]] = [[None] * d for _ in range(d)]  # type: ignore[list-item]
        for i in range(d):
            for j in range(i, d):
                prod = vec_product(self.space, self.basis.rows[i], self.basis.rows[j], half)
                coords = self.basis.coordinates(prod)
                if coords is None:
                    raise ValueError("basis is not closed under the product")
                entry = {k: c for k, c in enumerate(coords) if c}
                tensor[i][j] = entry
                tensor[j][i] = entry
        self._structure = tensor
        return tensor

    def is_closed(self) -> bool:
        half = self.mode.half_eta()
        for i in range(self.dimension):
            for j in range(i, self.dimension):
                prod = vec_product(self.space, self.basis.rows[i], self.basis.rows[j], half)
                if self.basis.reduce(prod):
                    return False
        return True

    def export(self, include_structure: bool = False) -> dict:
        data = {
            "space": self.space.describe(),
            "mode": self.mode.describe(),
            "generators": [
                {"role": role, "vector": _vec_json(self.space, vec)}
                for vec, role in self.generators
            ],
            "dimension": self.dimension,
            "basis": [_vec_json(self.space, row) for row in self.basis.rows],
        }
        if include_structure:
            tensor = self.structure_constants()
            data["structure"] = [
                [{str(k): str(c) for k, c in cell.items()} for cell in row]
                for row in tensor
            ]
        return data

    def multiplication_table_csv(self) -> str:
        """CSV rows (row, col, expansion) of the basis products."""
        tensor = self.structure_constants()
        lines = ["row,col,expansion"]
        for i in range(self.dimension):
            for j in range(self.dimension):
                terms = " + ".join(
                    f"({c})*r{k}" for k, c in sorted(tensor[i][j].items())
                ) or "0"
                lines.append(f'{i},{j},"{terms}"')
        return "\n".join(lines) + "\n"


def _vec_json(sp: FischerSpace, vec: Vec) -> dict[str, str]:
    return {sp.labels[k]: str(vec[k]) for k in sorted(vec)}


def close(
    sp: FischerSpace,
    gens: Iterable[Vec],
    mode: ScalarMode,
    roles: Optional[Sequence[str]] = None,
    max_rounds: Optional[int] = None,
) -> Subalgebra:
    """Smallest product-closed subspace containing the generators."""
    gen_list = [dict(g) for g in gens]
    if roles is None:
        roles = ["custom"] * len(gen_list)
    if any(not g for g in gen_list):
        raise ValueError("generators must be nonzero")
    basis = EchelonBasis(mode)
    half = mode.half_eta()
    for g in gen_list:
        basis.insert(g)
    products = 0
    cursor = 0
    try:
        while cursor < len(basis.rows):
            new_row = basis.rows[cursor]
            limit = len(basis.rows)
            for j in range(limit):
                prod = vec_product(sp, new_row, basis.rows[j], half)
                products += 1
                if prod:
                    basis.insert(prod)
            cursor += 1
            if max_rounds is not None and cursor > max_rounds * len(sp.points):
                raise RuntimeError("closure failed to terminate")
    except PoleError as exc:
        raise UnsafeEtaError(f"pole during evaluated-mode closure: {exc}") from exc
    return Subalgebra(sp, mode, list(zip(gen_list, roles)), basis, products)


def dimension(subalgebra: Subalgebra) -> int:
    return subalgebra.dimension


def reclose(subalgebra: Subalgebra) -> Subalgebra:
    """Close the basis rows again; a closure operator adds nothing."""
    return close(
        subalgebra.space,
        [dict(r) for r in subalgebra.basis.rows],
        subalgebra.mode,
    )


def is_direct_sum(subalgebra: Subalgebra, partition: Sequence[Sequence[int]]) -> bool:
    """True iff the closures of the generator groups meet only in 0, pairwise
    annihilate each other, and their dimensions add up."""
    gens = subalgebra.generators
    seen = sorted(i for part in partition for i in part)
    if seen != list(range(len(gens))):
        raise ValueError("partition must cover the generators exactly once")
    parts = [
        close(subalgebra.space, [gens[i][0] for i in part], subalgebra.mode)
        for part in partition
    ]
    if sum(p.dimension for p in parts) != subalgebra.dimension:
        return False
    half = subalgebra.mode.half_eta()
    for a in range(len(parts)):
        for b in range(a + 1, len(parts)):
            for u in parts[a].basis.rows:
                for v in parts[b].basis.rows:
                    if vec_product(subalgebra.space, u, v, half):
                        return False
    return True


def consistency_check(
    sp: FischerSpace,
    gens: Sequence[Vec],
    eta0,
    allow_unsafe: bool = False,
) -> bool:
    """Symbolic dimension equals the dimension evaluated at eta0.

    Generators are given symbolically; their evaluated twins are obtained by
    scalar evaluation.
    """
    eta0 = Fraction(eta0)
    ev_mode = ScalarMode.evaluated(eta0)
    if not ev_mode.is_safe_for(sp) and not allow_unsafe:
        raise UnsafeEtaError(
            f"eta = {eta0} is a degenerate parameter for this space;"
            " pass allow_unsafe to compare anyway"
        )
    sym = close(sp, gens, ScalarMode.symbolic())
    ev_gens = [evaluate_vec(g, eta0) for g in gens]
    ev = close(sp, ev_gens, ev_mode)
    return sym.dimension == ev.dimension


def evaluate_vec(vec: Vec, eta0) -> Vec:
    """Evaluate a symbolic vector at eta = eta0."""
    eta0 = Fraction(eta0)
    out: Vec = {}
    for k, v in vec.items():
        if isinstance(v, EtaScalar):
            val = v.evaluate(eta0)
        else:
            val = Fraction(v)
        if val:
            out[k] = val
    return out


# ---------------------------------------------------------------------------
# specialize-last dimensions
# ---------------------------------------------------------------------------

def _poly_vec(vec: Vec) -> dict[int, EtaPoly]:
    """Clear a sparse vector to polynomial coefficients (row-wise lcm)."""
    from .scalars import poly_lcm

    lcm = EtaPoly.one()
    for v in vec.values():
        if isinstance(v, EtaScalar):
            lcm = poly_lcm(lcm, v.den)
    out: dict[int, EtaPoly] = {}
    for k, v in vec.items():
        if isinstance(v, EtaScalar):
            out[k] = v.num * (lcm // v.den)
        else:
            out[k] = EtaPoly.constant(Fraction(v))
    return out


def specialized_dimension(subalgebra: Subalgebra, eta0) -> int:
    """Specialize-last dimension of a symbolic closure at eta = eta0.

    Walks the product tree over Q[eta] without ever dividing: the worklist
    holds honest iterated products of the generators, and a vector joins it
    when it grows either the symbolic echelon or the echelon of the
    evaluations at eta0.  On termination the evaluated span contains the
    evaluated generators and is product-closed, hence equals the evaluated
    closure; its rank is the specialized dimension.  The symbolic echelon is
    saturated at the same time, so this really is the symbolic closure
    specialized after the fact.
    """
    if not subalgebra.mode.is_symbolic:
        raise ValueError("specialization needs a symbolic closure")
    eta0 = Fraction(eta0)
    sp = subalgebra.space
    half_eta_poly = EtaPoly((0, Fraction(1, 2)))
    sym_rank = EchelonBasis(ScalarMode.symbolic())
    ev_basis = EchelonBasis(ScalarMode.evaluated(eta0))

    def evaluate(row: dict[int, EtaPoly]) -> Vec:
        out: Vec = {}
        for k, p in row.items():
            val = p.evaluate(eta0)
            if val:
                out[k] = val
        return out

    def as_scalars(row: dict[int, EtaPoly]) -> Vec:
        return {k: EtaScalar(p) for k, p in row.items()}

    worklist: list[dict[int, EtaPoly]] = []
    for g in subalgebra.generators:
        pv = _poly_vec(g[0])
        grew_sym = sym_rank.insert(as_scalars(pv))
        grew_ev = ev_basis.insert(evaluate(pv))
        if grew_sym or grew_ev:
            worklist.append(pv)
    cursor = 0
    while cursor < len(worklist):
        left = worklist[cursor]
        limit = len(worklist)
        for j in range(limit):
            prod = vec_product(sp, left, worklist[j], half_eta_poly)
            if not prod:
                continue
            grew_sym = sym_rank.insert(as_scalars(prod))
            grew_ev = ev_basis.insert(evaluate(prod))
            if grew_sym or grew_ev:
                worklist.append(prod)
        cursor += 1
    if sym_rank.dimension != subalgebra.dimension:
        raise RuntimeError(
            "division-free closure reached a different symbolic dimension"
        )
    return ev_basis.dimension
