"""Trilinear tensors, slot contractions, the three-map group action, and
determinantal polynomials.

A tensor in V1 (x) V2 (x) V3 is stored as a sparse map (i, j, k) -> scalar.
Contracting one slot against a covector leaves a matrix over the remaining
two slots, with the lower slot index giving the rows.  The determinant of
the slot-1 contraction against a symbolic covector (t1, ..., td) is the
hypersurface equation used as an isotopy certificate; it is normalized to
a monic graded-lex leading term so that equality tests are deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .errors import BudgetExceeded
from .linalg import LinearMap, Matrix
from .poly import BinaryQuartic, Polynomial, det_linear_matrix, det_poly_entries, proportional
from .scalars import Field

DEFAULT_SCAN_BUDGET = 10**8

_SLOT_AXES = {1: (1, 2), 2: (0, 2), 3: (0, 1)}


@dataclass(frozen=True, eq=False)
class Trilinear:
    dims: tuple
    entries: dict  # (i, j, k) -> nonzero scalar
    field: Field

    @staticmethod
    def from_entries(dims, items, field: Field) -> "Trilinear":
        dims = tuple(dims)
        if len(dims) != 3:
            raise ValueError("need three dimensions")
        out = {}
        for key, c in dict(items).items():
            i, j, k = key
            if not (0 <= i < dims[0] and 0 <= j < dims[1] and 0 <= k < dims[2]):
                raise ValueError(f"index {key} out of range for dims {dims}")
            c = field.of(c)
            if c != 0:
                out[(i, j, k)] = c
        return Trilinear(dims, out, field)

    @staticmethod
    def zero(dims, field: Field) -> "Trilinear":
        return Trilinear(tuple(dims), {}, field)

    @staticmethod
    def random_full(dims, field: Field, rng) -> "Trilinear":
        items = {}
        for idx in itertools.product(*(range(d) for d in dims)):
            items[idx] = field.random(rng)
        return Trilinear.from_entries(dims, items, field)

    def __eq__(self, other):
        return (isinstance(other, Trilinear) and self.dims == other.dims
                and self.field == other.field and self.entries == other.entries)

    def get(self, i, j, k):
        return self.entries.get((i, j, k), self.field.zero())

    def is_zero(self):
        return not self.entries


def contract_slot(m: Trilinear, slot: int, v) -> Matrix:
    """Contract one slot against the covector v; remaining slots give a
    matrix with the lower slot index as rows."""
    if slot not in (1, 2, 3):
        raise ValueError("slot must be 1, 2 or 3")
    if len(v) != m.dims[slot - 1]:
        raise ValueError(f"covector length {len(v)} != slot dimension {m.dims[slot - 1]}")
    v = [m.field.of(x) for x in v]
    ra, ca = _SLOT_AXES[slot]
    rows, cols = m.dims[ra], m.dims[ca]
    acc = [[0] * cols for _ in range(rows)]
    s_ax = slot - 1
    for idx, c in m.entries.items():
        w = v[idx[s_ax]]
        if w != 0:
            acc[idx[ra]][idx[ca]] += w * c
    f = m.field
    ent = tuple(f.of(acc[i][j]) for i in range(rows) for j in range(cols))
    return Matrix(rows, cols, ent, f)


def contract_slot_symbolic(m: Trilinear, slot: int):
    """Contract one slot against the symbolic covector (t1, ..., td).

    Returns a nested list of linear polynomials in d = dims[slot-1] variables.
    """
    if slot not in (1, 2, 3):
        raise ValueError("slot must be 1, 2 or 3")
    nvars = m.dims[slot - 1]
    ra, ca = _SLOT_AXES[slot]
    rows, cols = m.dims[ra], m.dims[ca]
    coeffs = [[{} for _ in range(cols)] for _ in range(rows)]
    s_ax = slot - 1
    for idx, c in m.entries.items():
        e = tuple(1 if t == idx[s_ax] else 0 for t in range(nvars))
        cell = coeffs[idx[ra]][idx[ca]]
        cell[e] = m.field.add(cell.get(e, m.field.zero()), c)
    return [[Polynomial(nvars, {e: c for e, c in cell.items() if c != 0}, m.field)
             for cell in row] for row in coeffs]


@dataclass(frozen=True)
class HomotopyTriple:
    """Three linear maps acting on the three tensor slots."""

    f1: LinearMap
    f2: LinearMap
    f3: LinearMap

    @staticmethod
    def identity(dims, field: Field) -> "HomotopyTriple":
        return HomotopyTriple(*(LinearMap.identity(d, field) for d in dims))

    def maps(self):
        return (self.f1, self.f2, self.f3)

    def is_isotopy(self):
        return all(f.is_invertible() for f in self.maps())


def act(m: Trilinear, triple: HomotopyTriple) -> Trilinear:
    """Apply the triple slotwise: out[a,b,c] = sum f1[a,i] f2[b,j] f3[c,k] m[i,j,k]."""
    for ax, f in enumerate(triple.maps()):
        if f.domain_dim != m.dims[ax] or f.field != m.field:
            raise ValueError(f"slot {ax + 1} map incompatible with tensor")
    field = m.field
    entries = m.entries
    dims = list(m.dims)
    for ax, f in enumerate(triple.maps()):
        mat = f.matrix
        new = {}
        for idx, c in entries.items():
            i = idx[ax]
            for a in range(mat.rows):
                w = mat[a, i]
                if w == 0:
                    continue
                nidx = idx[:ax] + (a,) + idx[ax + 1:]
                cur = new.get(nidx)
                new[nidx] = cur + w * c if cur is not None else w * c
        if field.p is not None:
            entries = {k: v % field.p for k, v in new.items() if v % field.p}
        else:
            entries = {k: v for k, v in new.items() if v != 0}
        dims[ax] = mat.rows
    return Trilinear(tuple(dims), entries, field)


def det_poly(m: Trilinear, slot: int) -> Polynomial:
    """Determinant of the symbolic contraction of one slot, made monic.

    Requires the two remaining slot dimensions to be equal.  The result is
    homogeneous of that common degree, or identically zero.
    """
    ra, ca = _SLOT_AXES[slot]
    if m.dims[ra] != m.dims[ca]:
        raise ValueError(f"slots {ra + 1} and {ca + 1} differ: {m.dims[ra]} vs {m.dims[ca]}")
    return det_linear_matrix(contract_slot_symbolic(m, slot)).monic()


def rank_stratum_count(m: Trilinear, slot: int, r: int, budget=DEFAULT_SCAN_BUDGET) -> int:
    """Number of covectors v in F_p^d with rank(contract_slot(m, slot, v)) <= r."""
    p = m.field.p
    if p is None:
        raise ValueError("rank stratum counting needs a prime field")
    d = m.dims[slot - 1]
    if p**d > budget:
        raise BudgetExceeded(p**d, budget)
    ra, ca = _SLOT_AXES[slot]
    rows, cols = m.dims[ra], m.dims[ca]
    slices = [[] for _ in range(d)]
    for idx, c in m.entries.items():
        slices[idx[slot - 1]].append((idx[ra] * cols + idx[ca], c))
    count = 0
    for v in itertools.product(range(p), repeat=d):
        flat = [0] * (rows * cols)
        for s, w in enumerate(v):
            if w:
                for pos, c in slices[s]:
                    flat[pos] = (flat[pos] + w * c) % p
        if Matrix(rows, cols, tuple(flat), m.field).rank() <= r:
            count += 1
    return count


def restrict(m: Trilinear, slot: int, basis) -> Trilinear:
    """Pull one slot back along a subspace of its dual.

    basis is a list of linearly independent covectors of the slot; the
    restricted tensor has that slot dimension equal to len(basis), and its
    determinant polynomial is the substitution of the original one along
    the basis.
    """
    d = m.dims[slot - 1]
    rows = [[m.field.of(x) for x in w] for w in basis]
    if any(len(w) != d for w in rows):
        raise ValueError("basis covector length mismatch")
    if Matrix.from_rows(rows, m.field).rank() != len(rows):
        raise ValueError("basis covectors are linearly dependent")
    s_ax = slot - 1
    out = {}
    for idx, c in m.entries.items():
        for a, w in enumerate(rows):
            coef = w[idx[s_ax]]
            if coef != 0:
                nidx = idx[:s_ax] + (a,) + idx[s_ax + 1:]
                cur = out.get(nidx)
                out[nidx] = cur + coef * c if cur is not None else coef * c
    dims = m.dims[:s_ax] + (len(rows),) + m.dims[s_ax + 1:]
    return Trilinear.from_entries(dims, out, m.field)


@dataclass(frozen=True)
class ConeReport:
    passed: bool
    kernel_dim: int
    map_rank: int
    scale: object  # leading-coefficient ratio between the two sides, if both nonzero
    detail: str


def cone_check(m: Trilinear, f: LinearMap) -> ConeReport:
    """Check that acting by (f, id, id) on slot 1 pulls the determinantal
    polynomial back along the adjoint of f (so it is constant along ker f
    directions and the projective hypersurface is a cone)."""
    field = m.field
    if f.domain_dim != m.dims[0] or f.codomain_dim != m.dims[0]:
        raise ValueError("f must be an endomorphism of slot 1")
    n = m.dims[0]
    triple = HomotopyTriple(f, LinearMap.identity(m.dims[1], field),
                            LinearMap.identity(m.dims[2], field))
    lhs = det_poly(act(m, triple), 1)
    base = det_poly(m, 1)
    # variable i of base is replaced by the i-th row of f^T, i.e. column i of f
    subst = [[f.matrix[a, i] for a in range(n)] for i in range(n)]
    rhs = base.substitute_linear(subst, n)
    ok = proportional(lhs, rhs)
    scale = None
    if ok and not lhs.is_zero():
        e0, c0 = lhs.leading()
        scale = field.div(c0, rhs.terms[e0])
    rank = f.rank()
    detail = "proportional" if ok else f"mismatch: lhs={lhs}, pullback={rhs}"
    return ConeReport(ok, n - rank, rank, scale, detail)


def pencil_quartic(diag, row, col, field: Field) -> BinaryQuartic:
    """det(x*I4 + y*(D + col*row)) as a binary quartic in (x, y).

    D is the diagonal 4x4 matrix with entries diag; col*row is the outer
    product of a column and a row 4-vector.  The x^4 coefficient is 1.
    """
    if field.char in (2, 3):
        raise ValueError(f"pencil quartic needs characteristic not in {{2, 3}} (got {field.name})")
    if not (len(diag) == len(row) == len(col) == 4):
        raise ValueError("need 4 diagonal entries, a row 4-vector and a column 4-vector")
    diag = [field.of(v) for v in diag]
    row = [field.of(v) for v in row]
    col = [field.of(v) for v in col]
    one, zero = field.one(), field.zero()
    rows = []
    for r in range(4):
        prow = []
        for c in range(4):
            ycoef = field.add(diag[r] if r == c else zero, field.mul(col[r], row[c]))
            prow.append(Polynomial.from_terms(
                2, [((1, 0), one if r == c else zero), ((0, 1), ycoef)], field))
        rows.append(prow)
    quartic = BinaryQuartic.from_polynomial(det_linear_matrix(rows))
    assert quartic.a0 == one
    return quartic


def pihs_curve_criterion(degree: int, ambient_dim: int) -> bool:
    """Whether an integral non-degenerate curve of the given degree in
    projective space of the given dimension has projectively isomorphic
    hyperplane sections: degree <= ambient_dim + 1."""
    if degree < 1 or ambient_dim < 1:
        raise ValueError("degree and ambient dimension must be positive")
    return degree <= ambient_dim + 1
