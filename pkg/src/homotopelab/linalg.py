"""Exact dense linear algebra over Q and F_p.

Row reduction over Q is fraction-free: rows are kept as primitive integer
vectors and eliminated by cross-multiplication, with a content reduction
after every step; pivots are divided out only at the end.  Determinants
over Q use the Bareiss algorithm on a denominator-cleared integer matrix.
Over F_p plain modular elimination is used.  Pivoting is deterministic
(first nonzero entry in column order), so all outputs are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .errors import FieldMismatch
from .scalars import Field


def _primitive(row):
    """Scale a Fraction row to a primitive integer vector (content 1)."""
    den = lcm(*(x.denominator for x in row)) if row else 1
    ints = [int(x * den) for x in row]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        ints = [x // g for x in ints]
    return ints


def _reduce_content(ints):
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g > 1:
        return [x // g for x in ints]
    return ints


@dataclass(frozen=True)
class Matrix:
    rows: int
    cols: int
    entries: tuple  # row-major scalars
    field: Field

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match shape")

    # -- constructors -------------------------------------------------

    @staticmethod
    def from_rows(rows, field: Field) -> "Matrix":
        r = len(rows)
        c = len(rows[0]) if r else 0
        if any(len(row) != c for row in rows):
            raise ValueError("ragged rows")
        ent = tuple(field.of(x) for row in rows for x in row)
        return Matrix(r, c, ent, field)

    @staticmethod
    def zero(rows, cols, field: Field) -> "Matrix":
        z = field.zero()
        return Matrix(rows, cols, (z,) * (rows * cols), field)

    @staticmethod
    def identity(n, field: Field) -> "Matrix":
        z, o = field.zero(), field.one()
        ent = tuple(o if i == j else z for i in range(n) for j in range(n))
        return Matrix(n, n, ent, field)

    @staticmethod
    def diagonal(diag, field: Field) -> "Matrix":
        n = len(diag)
        z = field.zero()
        ent = tuple(field.of(diag[i]) if i == j else z for i in range(n) for j in range(n))
        return Matrix(n, n, ent, field)

    @staticmethod
    def random(rows, cols, field: Field, rng) -> "Matrix":
        return Matrix(rows, cols, tuple(field.random(rng) for _ in range(rows * cols)), field)

    # -- access -------------------------------------------------------

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i * self.cols + j]

    def row(self, i):
        return list(self.entries[i * self.cols : (i + 1) * self.cols])

    def col(self, j):
        return [self.entries[i * self.cols + j] for i in range(self.rows)]

    def row_lists(self):
        return [self.row(i) for i in range(self.rows)]

    def __str__(self):
        fmt = self.field.format_scalar
        return "\n".join("[" + " ".join(fmt(x) for x in self.row(i)) + "]" for i in range(self.rows))

    # -- arithmetic ---------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Matrix):
            raise TypeError("expected a Matrix")
        self.field.check_same(other.field)

    def __add__(self, other):
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        add = self.field.add
        return Matrix(self.rows, self.cols,
                      tuple(add(a, b) for a, b in zip(self.entries, other.entries)), self.field)

    def __sub__(self, other):
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        sub = self.field.sub
        return Matrix(self.rows, self.cols,
                      tuple(sub(a, b) for a, b in zip(self.entries, other.entries)), self.field)

    def scale(self, c):
        mul = self.field.mul
        c = self.field.of(c)
        return Matrix(self.rows, self.cols, tuple(mul(c, x) for x in self.entries), self.field)

    def __matmul__(self, other):
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
        p = self.field.p
        n, m, k = self.rows, other.cols, self.cols
        a, b = self.entries, other.entries
        out = []
        for i in range(n):
            arow = a[i * k : (i + 1) * k]
            for j in range(m):
                s = 0
                for t in range(k):
                    s += arow[t] * b[t * m + j]
                out.append(s % p if p is not None else s + self.field.zero())
        return Matrix(n, m, tuple(out), self.field)

    def apply(self, vec):
        """Matrix-vector product; vec has length cols."""
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        p = self.field.p
        out = []
        for i in range(self.rows):
            row = self.entries[i * self.cols : (i + 1) * self.cols]
            s = 0
            for t, v in enumerate(vec):
                if v != 0:
                    s += row[t] * v
            out.append(s % p if p is not None else s + self.field.zero())
        return tuple(out)

    def transpose(self):
        ent = tuple(self.entries[i * self.cols + j]
                    for j in range(self.cols) for i in range(self.rows))
        return Matrix(self.cols, self.rows, ent, self.field)

    def is_zero(self):
        return all(x == 0 for x in self.entries)

    # -- elimination --------------------------------------------------

    def rref(self):
        """Reduced row echelon form.  Returns (Matrix, rank, pivot columns)."""
        reduced, pivots = self._rref_rows()
        ent = tuple(x for row in reduced for x in row)
        return Matrix(self.rows, self.cols, ent, self.field), len(pivots), tuple(pivots)

    def _rref_rows(self):
        if self.field.p is None:
            return self._rref_rational()
        return self._rref_mod()

    def _rref_rational(self):
        R = [_primitive([Fraction(x) for x in self.row(i)]) for i in range(self.rows)]
        pivots = []
        r = 0
        for c in range(self.cols):
            pr = next((i for i in range(r, self.rows) if R[i][c] != 0), None)
            if pr is None:
                continue
            R[r], R[pr] = R[pr], R[r]
            pv = R[r][c]
            for i in range(self.rows):
                if i != r and R[i][c] != 0:
                    f = R[i][c]
                    R[i] = _reduce_content([x * pv - f * y for x, y in zip(R[i], R[r])])
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        out = [[Fraction(0)] * self.cols for _ in range(self.rows)]
        for idx, c in enumerate(pivots):
            pv = R[idx][c]
            out[idx] = [Fraction(x, pv) for x in R[idx]]
        return out, pivots

    def _rref_mod(self):
        p = self.field.p
        R = [self.row(i) for i in range(self.rows)]
        pivots = []
        r = 0
        for c in range(self.cols):
            pr = next((i for i in range(r, self.rows) if R[i][c] != 0), None)
            if pr is None:
                continue
            R[r], R[pr] = R[pr], R[r]
            inv = pow(R[r][c], -1, p)
            R[r] = [x * inv % p for x in R[r]]
            for i in range(self.rows):
                if i != r and R[i][c]:
                    f = R[i][c]
                    R[i] = [(x - f * y) % p for x, y in zip(R[i], R[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return R, pivots

    def rank(self):
        return self.rref()[1]

    def kernel_basis(self):
        """Basis of the right kernel, one vector per free column."""
        red, _, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        neg = self.field.neg
        basis = []
        for f in free:
            v = [self.field.zero()] * self.cols
            v[f] = self.field.one()
            for idx, c in enumerate(pivots):
                v[c] = neg(red[idx, f])
            basis.append(tuple(v))
        return basis

    def image_basis(self):
        """Basis of the column space: the original columns at the pivot positions."""
        _, _, pivots = self.rref()
        return [tuple(self.col(c)) for c in pivots]

    def det(self):
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        n = self.rows
        if n == 0:
            return self.field.one()
        if self.field.p is None:
            return self._det_bareiss()
        return self._det_mod()

    def _det_bareiss(self):
        n = self.rows
        dens = []
        M = []
        for i in range(self.rows):
            row = [Fraction(x) for x in self.row(i)]
            d = lcm(*(x.denominator for x in row))
            dens.append(d)
            M.append([int(x * d) for x in row])
        sign = 1
        prev = 1
        for k in range(n - 1):
            if M[k][k] == 0:
                pr = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
                if pr is None:
                    return Fraction(0)
                M[k], M[pr] = M[pr], M[k]
                sign = -sign
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
                M[i][k] = 0
            prev = M[k][k]
        den = 1
        for d in dens:
            den *= d
        return Fraction(sign * M[n - 1][n - 1], den)

    def _det_mod(self):
        p = self.field.p
        n = self.rows
        M = [self.row(i) for i in range(n)]
        sign = 1
        acc = 1
        for k in range(n):
            pr = next((i for i in range(k, n) if M[i][k] != 0), None)
            if pr is None:
                return 0
            if pr != k:
                M[k], M[pr] = M[pr], M[k]
                sign = -sign
            pv = M[k][k]
            acc = acc * pv % p
            inv = pow(pv, -1, p)
            for i in range(k + 1, n):
                if M[i][k]:
                    f = M[i][k] * inv % p
                    M[i] = [(x - f * y) % p for x, y in zip(M[i], M[k])]
        return acc % p if sign == 1 else (-acc) % p

    def try_inverse(self):
        """Inverse matrix, or None when singular."""
        if self.rows != self.cols:
            raise ValueError("inverse of a non-square matrix")
        n = self.rows
        aug = _hstack(self, Matrix.identity(n, self.field))
        red, rank, _ = aug.rref()
        if rank < n:
            return None
        ent = tuple(red[i, n + j] for i in range(n) for j in range(n))
        return Matrix(n, n, ent, self.field)

    def solve(self, rhs):
        """One exact solution of self * x = rhs, or None when inconsistent."""
        if len(rhs) != self.rows:
            raise ValueError("rhs length mismatch")
        aug = _hstack(self, Matrix(self.rows, 1, tuple(self.field.of(x) for x in rhs), self.field))
        red, _, pivots = aug.rref()
        if pivots and pivots[-1] == self.cols:
            return None
        x = [self.field.zero()] * self.cols
        for idx, c in enumerate(pivots):
            x[c] = red[idx, self.cols]
        return tuple(x)


def _hstack(a: Matrix, b: Matrix) -> Matrix:
    if a.rows != b.rows:
        raise ValueError("row mismatch")
    ent = []
    for i in range(a.rows):
        ent.extend(a.row(i))
        ent.extend(b.row(i))
    return Matrix(a.rows, a.cols + b.cols, tuple(ent), a.field)


def matrix_from_columns(cols, field: Field) -> Matrix:
    rows = len(cols[0]) if cols else 0
    ent = tuple(field.of(cols[j][i]) for i in range(rows) for j in range(len(cols)))
    return Matrix(rows, len(cols), ent, field)


def rank_normal_form(m: Matrix):
    """(U, V, r) with U*m*V = diag(1,...,1,0,...,0), U and V invertible."""
    f = m.field
    A = m.row_lists()
    U = Matrix.identity(m.rows, f).row_lists()
    V = Matrix.identity(m.cols, f).row_lists()
    r = 0
    while r < min(m.rows, m.cols):
        pivot = None
        for j in range(r, m.cols):
            for i in range(r, m.rows):
                if A[i][j] != 0:
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j = pivot
        A[r], A[i] = A[i], A[r]
        U[r], U[i] = U[i], U[r]
        if j != r:
            for row in A:
                row[r], row[j] = row[j], row[r]
            for row in V:
                row[r], row[j] = row[j], row[r]
        inv = f.inv(A[r][r])
        A[r] = [f.mul(inv, x) for x in A[r]]
        U[r] = [f.mul(inv, x) for x in U[r]]
        for i2 in range(m.rows):
            if i2 != r and A[i2][r] != 0:
                c = A[i2][r]
                A[i2] = [f.sub(x, f.mul(c, y)) for x, y in zip(A[i2], A[r])]
                U[i2] = [f.sub(x, f.mul(c, y)) for x, y in zip(U[i2], U[r])]
        for j2 in range(m.cols):
            if j2 != r and A[r][j2] != 0:
                c = A[r][j2]
                for row in A:
                    row[j2] = f.sub(row[j2], f.mul(c, row[r]))
                for row in V:
                    row[j2] = f.sub(row[j2], f.mul(c, row[r]))
        r += 1
    return Matrix.from_rows(U, f), Matrix.from_rows(V, f), r


class RowSpace:
    """A row space built incrementally, kept as reduced echelon basis rows.

    The basis is the canonical RREF basis of the span, so it does not
    depend on insertion order.
    """

    def __init__(self, ncols, field: Field):
        self.ncols = ncols
        self.field = field
        self._rows = []  # (pivot column, row list), sorted by pivot

    @property
    def rank(self):
        return len(self._rows)

    def reduce(self, vec):
        f = self.field
        v = [f.of(x) for x in vec]
        for piv, row in self._rows:
            c = v[piv]
            if c != 0:
                v = [f.sub(x, f.mul(c, y)) for x, y in zip(v, row)]
        return v

    def contains(self, vec):
        return all(x == 0 for x in self.reduce(vec))

    def add(self, vec) -> bool:
        """Insert a vector; returns True when the rank grew."""
        f = self.field
        v = self.reduce(vec)
        piv = next((i for i, x in enumerate(v) if x != 0), None)
        if piv is None:
            return False
        inv = f.inv(v[piv])
        v = [f.mul(inv, x) for x in v]
        for other_piv, row in self._rows:
            c = row[piv]
            if c != 0:
                row[:] = [f.sub(x, f.mul(c, y)) for x, y in zip(row, v)]
        self._rows.append((piv, v))
        self._rows.sort(key=lambda t: t[0])
        return True

    def pivots(self):
        return [piv for piv, _ in self._rows]

    def basis_rows(self):
        return [tuple(row) for _, row in self._rows]

    def coords_of(self, vec):
        """Coordinates of vec in the basis rows, or None when outside the span."""
        f = self.field
        v = [f.of(x) for x in vec]
        coords = [v[piv] for piv, _ in self._rows]
        recon = [f.zero()] * self.ncols
        for c, (_, row) in zip(coords, self._rows):
            if c != 0:
                recon = [f.add(x, f.mul(c, y)) for x, y in zip(recon, row)]
        if recon != v:
            return None
        return tuple(coords)


@dataclass(frozen=True)
class LinearMap:
    """A linear map stored as its (codomain x domain) matrix."""

    matrix: Matrix

    @property
    def domain_dim(self):
        return self.matrix.cols

    @property
    def codomain_dim(self):
        return self.matrix.rows

    @property
    def field(self):
        return self.matrix.field

    @staticmethod
    def identity(n, field: Field) -> "LinearMap":
        return LinearMap(Matrix.identity(n, field))

    @staticmethod
    def from_rows(rows, field: Field) -> "LinearMap":
        return LinearMap(Matrix.from_rows(rows, field))

    def apply(self, vec):
        return self.matrix.apply(vec)

    def __matmul__(self, other: "LinearMap") -> "LinearMap":
        if self.domain_dim != other.codomain_dim:
            raise ValueError("composition dimension mismatch")
        return LinearMap(self.matrix @ other.matrix)

    def is_invertible(self):
        return self.matrix.rows == self.matrix.cols and self.matrix.det() != 0

    def inverse(self) -> "LinearMap":
        inv = self.matrix.try_inverse()
        if inv is None:
            raise ValueError("map is not invertible")
        return LinearMap(inv)

    def kernel_basis(self):
        return self.matrix.kernel_basis()

    def image_basis(self):
        return self.matrix.image_basis()

    def rank(self):
        return self.matrix.rank()


def random_invertible(n, field: Field, rng) -> LinearMap:
    while True:
        m = Matrix.random(n, n, field, rng)
        if m.det() != 0:
            return LinearMap(m)


def random_of_rank(n, r, field: Field, rng) -> LinearMap:
    """A random n x n map of exact rank r."""
    if not 0 <= r <= n:
        raise ValueError("rank out of range")
    d = Matrix.diagonal([field.one()] * r + [field.zero()] * (n - r), field)
    return LinearMap(random_invertible(n, field, rng).matrix @ d @ random_invertible(n, field, rng).matrix)
