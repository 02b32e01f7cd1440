"""The Matsuo algebra of a Fischer space over Q(eta).

Basis = points; the product of distinct collinear points c, d on the line
{c, d, e} is (eta/2)(c + d - e), orthogonal points multiply to zero, and each
point is an idempotent.  The Frobenius form takes values 1, 0, eta/2 on the
basis.  Vectors are sparse maps from point index to a scalar, either an
EtaScalar (symbolic mode) or a Fraction (evaluated mode).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .fischer import FischerSpace
from .scalars import EtaPoly, EtaScalar, rational_roots

Vec = dict  # point index -> scalar of the active mode


class SpectrumNotRationalError(ValueError):
    """Exact determinant unavailable: irrational collinearity spectrum on a
    space too large for direct elimination."""


# ---------------------------------------------------------------------------
# sparse vector arithmetic
# ---------------------------------------------------------------------------

def vec_add_scaled(target: Vec, source: Vec, scale) -> None:
    """target += scale * source, dropping exact zeros in place."""
    for k, v in source.items():
        cur = target.get(k)
        if cur is None:
            val = scale * v
            if val:
                target[k] = val
        else:
            val = cur + scale * v
            if val:
                target[k] = val
            else:
                del target[k]


def vec_scale(u: Vec, scale) -> Vec:
    if not scale:
        return {}
    return {k: scale * v for k, v in u.items()}


def vec_sub(u: Vec, v: Vec) -> Vec:
    out = dict(u)
    for k, val in v.items():
        cur = out.get(k)
        if cur is None:
            out[k] = -val
        else:
            new = cur - val
            if new:
                out[k] = new
            else:
                del out[k]
    return out


def vec_equal(u: Vec, v: Vec) -> bool:
    return u == v


def vec_product(sp: FischerSpace, u: Vec, v: Vec, half_eta) -> Vec:
    """Bilinear extension of the point product; commutative."""
    out: Vec = {}
    third = sp.third
    for p, cp in u.items():
        row = third[p]
        for q, cq in v.items():
            c = cp * cq
            if not c:
                continue
            if p == q:
                cur = out.get(p)
                new = cur + c if cur is not None else c
                if new:
                    out[p] = new
                elif cur is not None:
                    del out[p]
                continue
            r = row[q]
            if r < 0:
                continue
            ch = c * half_eta
            for idx, delta in ((p, ch), (q, ch), (r, -ch)):
                cur = out.get(idx)
                new = cur + delta if cur is not None else delta
                if new:
                    out[idx] = new
                elif cur is not None:
                    del out[idx]
    return out


def frobenius_value(sp: FischerSpace, u: Vec, v: Vec, half_eta, one):
    """Bilinear extension of the basis form (1 / 0 / eta/2)."""
    total = None
    third = sp.third
    for p, cp in u.items():
        row = third[p]
        for q, cq in v.items():
            if p == q:
                term = cp * cq
            elif row[q] >= 0:
                term = cp * cq * half_eta
            else:
                continue
            total = term if total is None else total + term
    if total is None:
        return one - one
    return total


# ---------------------------------------------------------------------------
# public vector type
# ---------------------------------------------------------------------------

@dataclass
class AlgebraVector:
    """Sparse element of the Matsuo algebra of a space."""

    space: FischerSpace
    coeffs: Vec

    def __post_init__(self):
        self.coeffs = {k: v for k, v in self.coeffs.items() if v}

    @classmethod
    def from_point(cls, sp: FischerSpace, p: int, one=None) -> "AlgebraVector":
        if one is None:
            one = EtaScalar.one()
        return cls(sp, {p: one})

    @classmethod
    def from_labels(cls, sp: FischerSpace, labels: Sequence[str], one=None) -> "AlgebraVector":
        if one is None:
            one = EtaScalar.one()
        coeffs: Vec = {}
        for lab in labels:
            coeffs[sp.point_of_label(lab)] = one
        return cls(sp, coeffs)

    def _check(self, other: "AlgebraVector") -> None:
        if other.space is not self.space:
            raise ValueError("vectors live in different spaces")

    def __add__(self, other: "AlgebraVector") -> "AlgebraVector":
        self._check(other)
        out = dict(self.coeffs)
        vec_add_scaled(out, other.coeffs, _one_like(self, other))
        return AlgebraVector(self.space, out)

    def __sub__(self, other: "AlgebraVector") -> "AlgebraVector":
        self._check(other)
        return AlgebraVector(self.space, vec_sub(self.coeffs, other.coeffs))

    def __mul__(self, other: "AlgebraVector") -> "AlgebraVector":
        self._check(other)
        half = _half_eta_like(self, other)
        return AlgebraVector(self.space, vec_product(self.space, self.coeffs, other.coeffs, half))

    def scaled(self, scalar) -> "AlgebraVector":
        return AlgebraVector(self.space, vec_scale(self.coeffs, scalar))

    def form(self, other: "AlgebraVector"):
        self._check(other)
        half = _half_eta_like(self, other)
        return frobenius_value(self.space, self.coeffs, other.coeffs, half, _one_like(self, other))

    def is_zero(self) -> bool:
        return not self.coeffs

    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.coeffs))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            parts.append(f"({self.coeffs[k]})*{self.space.labels[k]}")
        return " + ".join(parts)


def _scalar_kind(vec: AlgebraVector):
    for v in vec.coeffs.values():
        return v
    return None


def _half_eta_like(u: AlgebraVector, v: AlgebraVector):
    probe = _scalar_kind(u) or _scalar_kind(v)
    if isinstance(probe, Fraction):
        raise ValueError("evaluated-mode vectors need an explicit eta; use vec_product")
    return EtaScalar(EtaPoly.eta(), 2)


def _one_like(u: AlgebraVector, v: AlgebraVector):
    probe = _scalar_kind(u) or _scalar_kind(v)
    if isinstance(probe, Fraction):
        return Fraction(1)
    return EtaScalar.one()


def axis_product(sp: FischerSpace, p: int, q: int) -> AlgebraVector:
    """Product of two basis points as a symbolic vector."""
    one = EtaScalar.one()
    return AlgebraVector(sp, vec_product(sp, {p: one}, {q: one}, EtaScalar(EtaPoly.eta(), 2)))


def frobenius(sp: FischerSpace, u: AlgebraVector, v: AlgebraVector) -> EtaScalar:
    return u.form(v)


# ---------------------------------------------------------------------------
# adjacency, minimal polynomial, determinants
# ---------------------------------------------------------------------------

def adjacency_rows(sp: FischerSpace) -> list[list[int]]:
    """Collinearity neighbour lists."""
    return [
        [q for q, r in enumerate(row) if r >= 0] for row in sp.third
    ]


def _krylov_annihilator(nbrs: list[list[int]], seed: list[int]) -> list[Fraction]:
    """Monic annihilator polynomial of the seed vector under the adjacency map.

    Returns coefficients c_0..c_d (c_d = 1) with sum c_k A^k seed = 0.
    """
    n = len(nbrs)
    chain: list[list[Fraction]] = []   # echelon rows over Q
    chain_pivots: list[int] = []
    chain_combos: list[list[Fraction]] = []  # expression in Krylov vectors
    vec = [Fraction(x) for x in seed]
    k = 0
    while True:
        # reduce A^k seed against the chain, tracking the combination
        work = list(vec)
        combo = [Fraction(0)] * (k + 1)
        combo[k] = Fraction(1)
        for row, piv, rc in zip(chain, chain_pivots, chain_combos):
            factor = work[piv]
            if factor:
                for idx, val in enumerate(row):
                    if val:
                        work[idx] -= factor * val
                for idx, val in enumerate(rc):
                    combo[idx] -= factor * val
        pivot = next((i for i, x in enumerate(work) if x), None)
        if pivot is None:
            return combo
        inv = Fraction(1) / work[pivot]
        chain.append([x * inv for x in work])
        chain_pivots.append(pivot)
        chain_combos.append([x * inv for x in combo] + [Fraction(0)])
        for rc in chain_combos[:-1]:
            rc.append(Fraction(0))
        # advance to A^(k+1) seed
        nxt = [0] * n
        for i, ns in enumerate(nbrs):
            vi = vec[i]
            if vi:
                for j in ns:
                    nxt[j] += vi
        vec = nxt
        k += 1


def _poly_lcm_monic(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    from .scalars import poly_lcm

    res = poly_lcm(EtaPoly(a), EtaPoly(b)).monic()
    return list(res.coeffs)


def _first_unannihilated(nbrs: list[list[int]], int_poly: list[int]) -> Optional[int]:
    """First unit vector e_i with p(A) e_i != 0, by integer Horner; None when
    p annihilates the whole space."""
    n = len(nbrs)
    for i in range(n):
        vec = [0] * n
        vec[i] = int_poly[-1]
        for coeff in reversed(int_poly[:-1]):
            nxt = [0] * n
            for r, ns in enumerate(nbrs):
                vr = vec[r]
                if vr:
                    for c in ns:
                        nxt[c] += vr
            nxt[i] += coeff
            vec = nxt
        if any(vec):
            return i
    return None


def adjacency_minimal_polynomial(sp: FischerSpace) -> EtaPoly:
    """Exact monic minimal polynomial of the collinearity adjacency matrix.

    Krylov annihilators of unit seeds are lcm-ed until the candidate kills
    every unit vector; each annihilator divides the true minimal polynomial,
    so success proves equality.  The final check runs over Z.
    """
    cached = getattr(sp, "_minpoly_cache", None)
    if cached is not None:
        return cached
    nbrs = adjacency_rows(sp)
    n = len(nbrs)
    minpoly: list[Fraction] = [Fraction(1)]
    seed_index = 0
    while True:
        seed = [0] * n
        seed[seed_index] = 1
        ann = _krylov_annihilator(nbrs, seed)
        minpoly = _poly_lcm_monic(minpoly, ann)
        ints = EtaPoly(minpoly).primitive_int_coeffs()
        bad = _first_unannihilated(nbrs, ints)
        if bad is None:
            break
        seed_index = bad
    result = EtaPoly(minpoly)
    sp._minpoly_cache = result  # type: ignore[attr-defined]
    return result


def _int_matrix_rank(rows: list[list[int]]) -> int:
    """Exact rank of an integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    rank = 0
    prev = 1
    row = 0
    for col in range(ncols):
        pivot_row = None
        for r in range(row, nrows):
            if m[r][col]:
                pivot_row = r
                break
        if pivot_row is None:
            continue
        m[row], m[pivot_row] = m[pivot_row], m[row]
        pv = m[row][col]
        for r in range(row + 1, nrows):
            factor = m[r][col]
            # rows with a zero factor still need the pivot scaling to keep
            # the fraction-free divisibility invariant
            for cc in range(col, ncols):
                m[r][cc] = (m[r][cc] * pv - factor * m[row][cc]) // prev
        prev = pv
        rank += 1
        row += 1
        if row == nrows:
            break
    return rank


def eigenvalue_multiplicity(sp: FischerSpace, lam: Fraction) -> int:
    """dim ker(A - lam I) for the collinearity adjacency matrix, exactly."""
    n = len(sp.points)
    p, q = lam.numerator, lam.denominator
    rows = []
    for i, row in enumerate(sp.third):
        out = [q if r >= 0 else 0 for r in row]
        out[i] -= p
        rows.append(out)
    return n - _int_matrix_rank(rows)


# -- fraction-free Bareiss determinant over Z[eta] ---------------------------

def _ip_trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


def _ip_mul(a: list[int], b: list[int]) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return out


def _ip_sub(a: list[int], b: list[int]) -> list[int]:
    out = list(a)
    if len(out) < len(b):
        out.extend([0] * (len(b) - len(out)))
    for i, x in enumerate(b):
        out[i] -= x
    return _ip_trim(out)


def _ip_div_exact(a: list[int], b: list[int]) -> list[int]:
    """Exact division in Z[eta]; the Bareiss invariant guarantees exactness."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = list(a)
    _ip_trim(rem)
    if not rem:
        return []
    out = [0] * (len(rem) - len(b) + 1)
    lead = b[-1]
    while rem and len(rem) >= len(b):
        shift = len(rem) - len(b)
        q, r = divmod(rem[-1], lead)
        assert r == 0, "non-exact division in fraction-free elimination"
        out[shift] = q
        for k, c in enumerate(b):
            rem[shift + k] -= q * c
        _ip_trim(rem)
    assert not rem, "non-exact division in fraction-free elimination"
    return out


def bareiss_det_int_poly(matrix: list[list[list[int]]]) -> list[int]:
    """Determinant of a matrix of integer polynomials, fraction-free."""
    n = len(matrix)
    if n == 0:
        return [1]
    m = [[list(e) for e in row] for row in matrix]
    sign = 1
    prev: list[int] = [1]
    for k in range(n - 1):
        if not _ip_trim(m[k][k]):
            swap = next((r for r in range(k + 1, n) if _ip_trim(m[r][k])), None)
            if swap is None:
                return []
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = _ip_sub(_ip_mul(m[i][j], m[k][k]), _ip_mul(m[i][k], m[k][j]))
                m[i][j] = _ip_div_exact(num, prev)
            m[i][k] = []
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return [sign * c for c in det]


BAREISS_MAX_POINTS = 64


@dataclass
class GramData:
    """Gram matrix of the Frobenius form and its cleared determinant."""

    space: FischerSpace
    det: EtaPoly

    @property
    def matrix(self) -> list[list[EtaScalar]]:
        half = EtaScalar(EtaPoly.eta(), 2)
        one = EtaScalar.one()
        zero = EtaScalar.zero()
        out = []
        for p, row in enumerate(self.space.third):
            out.append(
                [one if p == q else (half if row[q] >= 0 else zero) for q in range(len(row))]
            )
        return out


def _det_via_spectrum(sp: FischerSpace) -> EtaPoly:
    """det(2I + eta*A) from the adjacency spectrum, when it is rational.

    Each eigenvalue lam of multiplicity m contributes (2 + eta*lam)^m.
    """
    m = adjacency_minimal_polynomial(sp)
    roots = rational_roots(m)
    distinct = m.degree
    if len(roots) != distinct:
        raise SpectrumNotRationalError(
            f"adjacency spectrum of {sp.describe()} has irrational eigenvalues;"
            f" space too large ({len(sp.points)} points) for direct elimination"
        )
    n = len(sp.points)
    det = EtaPoly.one()
    total = 0
    for lam in sorted(roots):
        mult = eigenvalue_multiplicity(sp, lam)
        total += mult
        factor = EtaPoly((2 * lam.denominator, lam.numerator))
        det = det * factor**mult
    assert total == n, "eigenvalue multiplicities do not sum to the dimension"
    return det


def gram_det(sp: FischerSpace) -> EtaPoly:
    """Cleared Gram determinant det(2I + eta*A), content-normalized.

    Direct fraction-free elimination on small spaces, spectral route beyond.
    """
    cached = getattr(sp, "_gram_det_cache", None)
    if cached is not None:
        return cached
    n = len(sp.points)
    if n <= BAREISS_MAX_POINTS:
        matrix = []
        for p, row in enumerate(sp.third):
            matrix.append(
                [[2] if p == q else ([0, 1] if row[q] >= 0 else []) for q in range(n)]
            )
        det = EtaPoly(bareiss_det_int_poly(matrix))
    else:
        det = _det_via_spectrum(sp)
    sign = 1 if det.leading > 0 else -1
    det = det.primitive()
    if sign < 0:
        det = EtaPoly([-c for c in det.coeffs])
    sp._gram_det_cache = det  # type: ignore[attr-defined]
    return det


def gram(sp: FischerSpace) -> GramData:
    return GramData(sp, gram_det(sp))


@dataclass
class CriticalValues:
    """Rational critical values plus the square-free certificate polynomial."""

    space: FischerSpace
    roots: frozenset[Fraction]
    excluded: frozenset[Fraction]  # members of {0, 1} that are determinant roots
    certificate: EtaPoly
    det_degree: int

    def report(self) -> dict:
        return {
            "space": self.space.describe(),
            "det_degree": self.det_degree,
            "rational_roots": [str(r) for r in sorted(self.roots)],
            "excluded_parameter_values": [str(r) for r in sorted(self.excluded)],
            "squarefree_certificate": str(self.certificate),
        }


def _certificate_from_minpoly(m: EtaPoly) -> EtaPoly:
    """Transform x -> -2/eta: product of (2 + eta*lam) over distinct lam."""
    d = m.degree
    coeffs = [Fraction(0)] * (d + 1)
    sign_d = 1 if d % 2 == 0 else -1
    for k, a in enumerate(m.coeffs):
        coeffs[d - k] = a * (-2) ** k * sign_d
    poly = EtaPoly(coeffs)
    prim = poly.primitive()
    return prim


def critical_values(sp: FischerSpace) -> CriticalValues:
    """Values of eta where the Gram matrix of the form degenerates.

    eta = 0, 1 are outside the parameter domain and reported separately when
    they happen to be determinant roots.
    """
    cached = getattr(sp, "_critical_cache", None)
    if cached is not None:
        return cached
    m = adjacency_minimal_polynomial(sp)
    cert = _certificate_from_minpoly(m)
    all_roots = {Fraction(-2, 1) / lam for lam in rational_roots(m) if lam != 0}
    excluded = frozenset(r for r in all_roots if r in (Fraction(0), Fraction(1)))
    roots = frozenset(r for r in all_roots if r not in excluded)
    n = len(sp.points)
    zero_mult = eigenvalue_multiplicity(sp, Fraction(0)) if m.evaluate(0) == 0 else 0
    det_degree = n - zero_mult
    result = CriticalValues(sp, roots, excluded, cert, det_degree)
    sp._critical_cache = result  # type: ignore[attr-defined]
    return result


def radical_dim(sp: FischerSpace, eta0) -> int:
    """Kernel dimension of the Gram matrix at eta = eta0.

    The Gram matrix at p/q is (I + (p/2q) A); clearing denominators gives the
    integer matrix 2q I + p A, whose rank is computed fraction-free.
    """
    eta0 = Fraction(eta0)
    if eta0 in (Fraction(0), Fraction(1)):
        raise ValueError("eta = 0 and eta = 1 are outside the parameter domain")
    p, q = eta0.numerator, eta0.denominator
    n = len(sp.points)
    rows = []
    for i, row in enumerate(sp.third):
        out = [p if r >= 0 else 0 for r in row]
        out[i] = 2 * q
        rows.append(out)
    return n - _int_matrix_rank(rows)
