"""Axial verification: eigenspaces, fusion laws, primitivity, Miyamoto maps.

Eigenspaces are computed as exact kernels of the adjoint on a closed
subalgebra; the spectrum is known in advance from the fusion law, so no
root-finding is involved.  Single axes follow the Jordan-type law with
eigenvalues (1, 0, eta); sums of two orthogonal axes follow the Monster-type
law with eigenvalues (1, 0, 2*eta, eta).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import Vec, vec_product, vec_scale, vec_sub
from .closure import ScalarMode, Subalgebra
from .fischer import FischerSpace, is_space_automorphism
from .scalars import EtaPoly, EtaScalar


class AdjointNotDiagonalizableError(ValueError):
    """Eigenspace dimensions fall short of the ambient dimension: the element
    is not an axis for the requested spectrum."""


class SpectrumCollisionError(ValueError):
    """Evaluated eta makes two spectrum values coincide; fusion is ill-posed."""


class ParameterDomainError(ValueError):
    """Fusion law requested at an excluded parameter value."""


# ---------------------------------------------------------------------------
# fusion laws
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FusionLaw:
    """Eigenvalue set with a symmetric cell table, by eigenvalue position."""

    name: str
    eigenvalues: tuple
    table: dict

    def allowed(self, li: int, mi: int) -> frozenset[int]:
        return self.table[(li, mi)] if (li, mi) in self.table else self.table[(mi, li)]


def _check_distinct(values: Sequence, what: str) -> None:
    for i in range(len(values)):
        for j in range(i + 1, len(values)):
            if values[i] == values[j]:
                raise SpectrumCollisionError(
                    f"{what}: eigenvalues {values[i]} and {values[j]} coincide"
                )


def jordan_law(mode: ScalarMode) -> FusionLaw:
    """Jordan-type law on (1, 0, eta): eta is the odd part."""
    if not mode.is_symbolic and mode.eta0 in (Fraction(0), Fraction(1)):
        raise ParameterDomainError("Jordan-type law needs eta outside {0, 1}")
    one, zero, eta = mode.one(), mode.zero(), mode.eta()
    values = (one, zero, eta)
    _check_distinct(values, "Jordan-type law")
    t = {
        (0, 0): frozenset({0}),
        (0, 1): frozenset(),
        (0, 2): frozenset({2}),
        (1, 1): frozenset({1}),
        (1, 2): frozenset({2}),
        (2, 2): frozenset({0, 1}),
    }
    return FusionLaw("J", values, t)


def monster_law(mode: ScalarMode) -> FusionLaw:
    """Monster-type law on (1, 0, 2*eta, eta): eta is the odd part."""
    if not mode.is_symbolic and mode.eta0 in (
        Fraction(0),
        Fraction(1),
        Fraction(1, 2),
    ):
        raise ParameterDomainError(
            "Monster-type law at (2*eta, eta) needs eta outside {0, 1, 1/2}"
        )
    one, zero, eta = mode.one(), mode.zero(), mode.eta()
    alpha = eta + eta
    values = (one, zero, alpha, eta)
    _check_distinct(values, "Monster-type law")
    t = {
        (0, 0): frozenset({0}),
        (0, 1): frozenset(),
        (0, 2): frozenset({2}),
        (0, 3): frozenset({3}),
        (1, 1): frozenset({1}),
        (1, 2): frozenset({2}),
        (1, 3): frozenset({3}),
        (2, 2): frozenset({0, 1}),
        (2, 3): frozenset({3}),
        (3, 3): frozenset({0, 1, 2}),
    }
    return FusionLaw("M", values, t)


def law_by_name(name: str, mode: ScalarMode) -> FusionLaw:
    if name == "J":
        return jordan_law(mode)
    if name == "M":
        return monster_law(mode)
    raise ValueError(f"unknown fusion law {name!r}; choose J or M")


# even/odd grading: the eta eigenspace is the odd part for both laws
def odd_part_index(law: FusionLaw) -> int:
    return len(law.eigenvalues) - 1


# ---------------------------------------------------------------------------
# dense linear algebra over the mode scalars
# ---------------------------------------------------------------------------

def kernel_basis(matrix: list[list], mode: ScalarMode) -> list[list]:
    """Deterministic kernel basis of a square matrix (unit free variables)."""
    d = len(matrix)
    m = [list(row) for row in matrix]
    zero, one = mode.zero(), mode.one()
    pivots: list[tuple[int, int]] = []  # (row, col)
    row = 0
    for col in range(d):
        pivot_row = None
        for r in range(row, d):
            if m[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        m[row], m[pivot_row] = m[pivot_row], m[row]
        inv = one / m[row][col]
        m[row] = [x * inv for x in m[row]]
        for r in range(d):
            if r != row and m[r][col]:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[row])]
        pivots.append((row, col))
        row += 1
        if row == d:
            break
    pivot_cols = {c for _, c in pivots}
    basis = []
    for free in range(d):
        if free in pivot_cols:
            continue
        vec = [zero] * d
        vec[free] = one
        for r, c in pivots:
            val = m[r][free]
            if val:
                vec[c] = -val
        basis.append(vec)
    return basis


def invert_matrix(matrix: list[list], mode: ScalarMode) -> Optional[list[list]]:
    """Inverse by Gauss-Jordan elimination; None when singular."""
    d = len(matrix)
    one, zero = mode.one(), mode.zero()
    aug = [list(matrix[r]) + [one if c == r else zero for c in range(d)] for r in range(d)]
    for col in range(d):
        pr = next((r for r in range(col, d) if aug[r][col]), None)
        if pr is None:
            return None
        aug[col], aug[pr] = aug[pr], aug[col]
        inv = one / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(d):
            if r != col and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return [row[d:] for row in aug]


def solve_coordinates(columns: list[list], target: list, mode: ScalarMode) -> Optional[list]:
    """Solve sum_k x_k * columns[k] = target by elimination."""
    d = len(target)
    k = len(columns)
    aug = [[columns[c][r] for c in range(k)] + [target[r]] for r in range(d)]
    one = mode.one()
    row = 0
    piv_cols = []
    for col in range(k):
        pr = next((r for r in range(row, d) if aug[r][col]), None)
        if pr is None:
            continue
        aug[row], aug[pr] = aug[pr], aug[row]
        inv = one / aug[row][col]
        aug[row] = [x * inv for x in aug[row]]
        for r in range(d):
            if r != row and aug[r][col]:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[row])]
        piv_cols.append(col)
        row += 1
    for r in range(row, d):
        if aug[r][k]:
            return None
    sol = [mode.zero()] * k
    for r, col in enumerate(piv_cols):
        sol[col] = aug[r][k]
    return sol


# ---------------------------------------------------------------------------
# adjoints and eigenspaces
# ---------------------------------------------------------------------------

def adjoint_matrix(algebra: Subalgebra, x: Vec) -> list[list]:
    """Matrix of u -> x*u on the subalgebra basis (columns = images)."""
    if algebra.coordinates(x) is None:
        raise ValueError("the axis does not lie in the subalgebra")
    half = algebra.mode.half_eta()
    d = algebra.dimension
    cols = []
    for row in algebra.basis.rows:
        image = vec_product(algebra.space, x, row, half)
        coords = algebra.coordinates(image)
        if coords is None:
            raise ValueError("adjoint image left the subalgebra; not closed")
        cols.append(coords)
    # transpose: entry [r][c] = coefficient of basis_r in x * basis_c
    return [[cols[c][r] for c in range(d)] for r in range(d)]


@dataclass
class EigenDecomposition:
    """Eigenvectors of an adjoint, grouped by the requested spectrum."""

    algebra: Subalgebra
    axis: Vec
    eigenvalues: tuple
    parts: list[list[list]]  # per eigenvalue: list of coordinate vectors

    @property
    def dims(self) -> tuple[int, ...]:
        return tuple(len(p) for p in self.parts)

    def all_vectors(self) -> list[list]:
        return [v for part in self.parts for v in part]

    def part_of(self, index: int) -> list[list]:
        return self.parts[index]


def eigen_decompose(algebra: Subalgebra, x: Vec, spectrum: Sequence) -> EigenDecomposition:
    """Exact kernel bases of (ad_x - lambda) per spectrum value.

    Raises when the eigenspace dimensions do not sum to the dimension of the
    subalgebra, i.e. the adjoint is not diagonalizable over the spectrum.
    """
    mode = algebra.mode
    half = mode.half_eta()
    xx = vec_product(algebra.space, x, x, half)
    if xx != x:
        raise ValueError("axis must be an idempotent")
    mat = adjoint_matrix(algebra, x)
    d = algebra.dimension
    parts = []
    total = 0
    for lam in spectrum:
        shifted = [
            [mat[r][c] - lam if r == c else mat[r][c] for c in range(d)]
            for r in range(d)
        ]
        part = kernel_basis(shifted, mode)
        parts.append(part)
        total += len(part)
    if total != d:
        raise AdjointNotDiagonalizableError(
            f"eigenspace dimensions {tuple(len(p) for p in parts)} sum to"
            f" {total}, expected {d}; not an axis for this spectrum"
        )
    return EigenDecomposition(algebra, x, tuple(spectrum), parts)


# ---------------------------------------------------------------------------
# fusion checking
# ---------------------------------------------------------------------------

@dataclass
class FusionViolation:
    lam_index: int
    mu_index: int
    pair: tuple[int, int]
    offending_part: int
    component: object


@dataclass
class FusionReport:
    law: FusionLaw
    decomposition: EigenDecomposition
    violations: list[FusionViolation]

    @property
    def passed(self) -> bool:
        return not self.violations

    def export(self) -> dict:
        dec = self.decomposition
        return {
            "axis": _vec_text(dec.algebra.space, dec.axis),
            "law": self.law.name,
            "eigen_dims": {
                str(dec.eigenvalues[i]): len(dec.parts[i])
                for i in range(len(dec.parts))
            },
            "violations": [
                {
                    "lambda": str(dec.eigenvalues[v.lam_index]),
                    "mu": str(dec.eigenvalues[v.mu_index]),
                    "pair": list(v.pair),
                    "offending_component": str(dec.eigenvalues[v.offending_part]),
                }
                for v in self.violations
            ],
        }


def _vec_text(sp: FischerSpace, vec: Vec) -> str:
    return " + ".join(
        (f"{sp.labels[k]}" if str(vec[k]) == "1" else f"({vec[k]})*{sp.labels[k]}")
        for k in sorted(vec)
    )


def check_fusion(algebra: Subalgebra, x: Vec, law: FusionLaw) -> FusionReport:
    """Verify every eigenspace product lands in the cells the law allows."""
    dec = eigen_decompose(algebra, x, law.eigenvalues)
    mode = algebra.mode
    columns = dec.all_vectors()
    part_of_column: list[int] = []
    for pi, part in enumerate(dec.parts):
        part_of_column.extend([pi] * len(part))
    violations: list[FusionViolation] = []
    nparts = len(dec.parts)
    half = mode.half_eta()
    ambient = [algebra.row_vector(col) for col in columns]
    d = algebra.dimension
    eigen_matrix = [[columns[c][r] for c in range(d)] for r in range(d)]
    inverse = invert_matrix(eigen_matrix, mode)
    if inverse is None:
        raise AdjointNotDiagonalizableError("eigenvectors do not span the subalgebra")
    offsets = []
    acc = 0
    for part in dec.parts:
        offsets.append(acc)
        acc += len(part)
    for li in range(nparts):
        for mi in range(li, nparts):
            allowed = law.allowed(li, mi)
            for a in range(len(dec.parts[li])):
                ia = offsets[li] + a
                b_start = a if li == mi else 0
                for b in range(b_start, len(dec.parts[mi])):
                    ib = offsets[mi] + b
                    w = vec_product(algebra.space, ambient[ia], ambient[ib], half)
                    coords = algebra.coordinates(w)
                    if coords is None:
                        raise ValueError("eigenvector product left the subalgebra")
                    for ci in range(d):
                        if part_of_column[ci] in allowed:
                            continue
                        val = sum(
                            (inverse[ci][r] * coords[r] for r in range(d) if coords[r]),
                            mode.zero(),
                        )
                        if val:
                            violations.append(
                                FusionViolation(li, mi, (ia, ib), part_of_column[ci], val)
                            )
    return FusionReport(law, dec, violations)


def check_primitive(algebra: Subalgebra, x: Vec) -> bool:
    """True iff the 1-eigenspace of ad_x inside the subalgebra is a line."""
    mode = algebra.mode
    mat = adjoint_matrix(algebra, x)
    d = algebra.dimension
    one = mode.one()
    shifted = [
        [mat[r][c] - one if r == c else mat[r][c] for c in range(d)] for r in range(d)
    ]
    return len(kernel_basis(shifted, mode)) == 1


# ---------------------------------------------------------------------------
# Miyamoto maps
# ---------------------------------------------------------------------------

def miyamoto_point_map(sp: FischerSpace, p: int) -> tuple[int, ...]:
    """Point permutation of the Miyamoto involution of a single axis.

    Fixes p and everything non-collinear with p; on each line through p it
    swaps the other two points.
    """
    n = len(sp.points)
    perm = list(range(n))
    row = sp.third[p]
    for q in range(n):
        if q != p and row[q] >= 0:
            perm[q] = row[q]
    perm_t = tuple(perm)
    if not is_space_automorphism(sp, perm_t):
        raise ValueError("Miyamoto point map failed the automorphism check")
    return perm_t


def permutation_matrix_on(algebra: Subalgebra, perm: Sequence[int]) -> list[list]:
    """Matrix of the permutation-induced linear map restricted to a
    subalgebra; requires invariance."""
    d = algebra.dimension
    cols = []
    for row in algebra.basis.rows:
        image = {perm[k]: v for k, v in row.items()}
        coords = algebra.coordinates(image)
        if coords is None:
            raise ValueError("subalgebra is not invariant under the permutation")
        cols.append(coords)
    return [[cols[c][r] for c in range(d)] for r in range(d)]


@dataclass
class MiyamotoMap:
    """Involutive algebra automorphism acting as -1 on the odd part."""

    algebra: Subalgebra
    matrix: list[list]

    def apply_coords(self, coords: Sequence) -> list:
        d = len(coords)
        return [
            sum((self.matrix[r][c] * coords[c] for c in range(d)), self.algebra.mode.zero())
            for r in range(d)
        ]

    def apply_vec(self, vec: Vec) -> Vec:
        coords = self.algebra.coordinates(vec)
        if coords is None:
            raise ValueError("vector outside the subalgebra")
        return self.algebra.row_vector(self.apply_coords(coords))

    def is_involution(self) -> bool:
        d = self.algebra.dimension
        mode = self.algebra.mode
        one, zero = mode.one(), mode.zero()
        for c in range(d):
            col = [self.matrix[r][c] for r in range(d)]
            image = self.apply_coords(col)
            for r in range(d):
                want = one if r == c else zero
                if image[r] != want:
                    return False
        return True

    def preserves_products(self) -> bool:
        alg = self.algebra
        half = alg.mode.half_eta()
        d = alg.dimension
        images = [
            alg.row_vector([self.matrix[r][c] for r in range(d)]) for c in range(d)
        ]
        for i in range(d):
            for j in range(i, d):
                lhs = vec_product(
                    alg.space,
                    alg.basis.rows[i],
                    alg.basis.rows[j],
                    half,
                )
                lhs_coords = alg.coordinates(lhs)
                mapped = self.apply_coords(lhs_coords)
                rhs = vec_product(alg.space, images[i], images[j], half)
                rhs_coords = alg.coordinates(rhs)
                if rhs_coords is None or mapped != rhs_coords:
                    return False
        return True


def miyamoto_algebra_map(algebra: Subalgebra, x: Vec, law: FusionLaw) -> MiyamotoMap:
    """Identity on the even part, negation on the odd (eta) part."""
    report = check_fusion(algebra, x, law)
    if not report.passed:
        raise ValueError("fusion law fails; no Miyamoto involution")
    dec = report.decomposition
    odd = odd_part_index(law)
    mode = algebra.mode
    columns = dec.all_vectors()
    signs = []
    for pi, part in enumerate(dec.parts):
        signs.extend([-mode.one() if pi == odd else mode.one()] * len(part))
    d = algebra.dimension
    # solve P S P^-1 column by column: image of basis e_c
    matrix_cols = []
    for c in range(d):
        target = [mode.one() if r == c else mode.zero() for r in range(d)]
        y = solve_coordinates(columns, target, mode)
        if y is None:
            raise AdjointNotDiagonalizableError("eigenvectors do not span")
        image = [mode.zero()] * d
        for k, yk in enumerate(y):
            if yk:
                coeff = signs[k] * yk
                for r in range(d):
                    image[r] = image[r] + coeff * columns[k][r]
        matrix_cols.append(image)
    matrix = [[matrix_cols[c][r] for c in range(d)] for r in range(d)]
    result = MiyamotoMap(algebra, matrix)
    if not result.is_involution() or not result.preserves_products():
        raise ValueError("constructed Miyamoto map is not an algebra involution")
    return result


def tau_composition_identity(sp: FischerSpace, a: int, b: int) -> bool:
    """Exact check that the double axis a+b has tau equal to tau_a tau_b.

    With P = tau_a tau_b and x = a + b, it verifies for every point q that
    q - q^P is annihilated by (ad_x - eta) and q + q^P by
    (ad_x - 1) ad_x (ad_x - 2 eta).  That both splits the space into the even
    and odd parts and identifies the Miyamoto action with P.
    """
    if sp.collinear(a, b) or a == b:
        raise ValueError("double axis needs two distinct orthogonal points")
    pa = miyamoto_point_map(sp, a)
    pb = miyamoto_point_map(sp, b)
    perm = tuple(pb[pa[q]] for q in range(len(sp.points)))
    one = EtaScalar.one()
    eta = EtaScalar.eta()
    two_eta = eta + eta
    half = EtaScalar(EtaPoly.eta(), 2)
    x: Vec = {a: one, b: one}

    def ad(v: Vec) -> Vec:
        return vec_product(sp, x, v, half)

    for q in range(len(sp.points)):
        qp = perm[q]
        if qp == q:
            plus: Vec = {q: one + one}
            minus: Vec = {}
        else:
            plus = {q: one, qp: one}
            minus = {q: one, qp: -one}
        if minus and vec_sub(ad(minus), vec_scale(minus, eta)):
            return False
        work = vec_sub(ad(plus), vec_scale(plus, one))
        work = ad(work)
        work = vec_sub(ad(work), vec_scale(work, two_eta))
        if work:
            return False
    return True
