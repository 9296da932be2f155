"""Finite-dimensional algebras as structure-constant tensors.

An algebra of dimension d stores its multiplication law as a sparse
trilinear tensor with e_i * e_j = sum_k c[i,j,k] e_k.  Elements are plain
coordinate tuples.  Products iterate over the sparse pair table with early
exit on zero coordinates, which keeps the very sparse word algebras cheap.
Unit metadata is verified at construction, never trusted.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import BudgetExceeded
from .linalg import LinearMap, Matrix, RowSpace, matrix_from_columns
from .scalars import Field
from .tensor import Trilinear

DEFAULT_ENUM_BUDGET = 2**24


@dataclass(frozen=True, eq=False)
class Algebra:
    dim: int
    structure: Trilinear
    field: Field
    unit: tuple | None = None
    labels: tuple | None = None

    def __post_init__(self):
        if self.structure.dims != (self.dim,) * 3:
            raise ValueError("structure tensor shape does not match dimension")
        if self.structure.field != self.field:
            raise ValueError("structure tensor field mismatch")
        if self.labels is not None and len(self.labels) != self.dim:
            raise ValueError("label count mismatch")
        if self.unit is not None:
            u = self.element(self.unit)
            object.__setattr__(self, "unit", u)
            for i in range(self.dim):
                e = self.basis_element(i)
                if self.mul(u, e) != e or self.mul(e, u) != e:
                    raise ValueError("declared unit is not a two-sided unit")

    # -- construction helpers ------------------------------------------

    @staticmethod
    def from_structure(dim, items, field: Field, unit=None, labels=None) -> "Algebra":
        t = Trilinear.from_entries((dim, dim, dim), items, field)
        return Algebra(dim, t, field, unit=unit, labels=tuple(labels) if labels else None)

    @staticmethod
    def random(dim, field: Field, rng) -> "Algebra":
        return Algebra(dim, Trilinear.random_full((dim,) * 3, field, rng), field)

    @cached_property
    def _pair_table(self):
        tbl = [[[] for _ in range(self.dim)] for _ in range(self.dim)]
        for (i, j, k), c in self.structure.entries.items():
            tbl[i][j].append((k, c))
        return tbl

    # -- elements --------------------------------------------------------

    def zero(self):
        return (self.field.zero(),) * self.dim

    def basis_element(self, i):
        if not 0 <= i < self.dim:
            raise ValueError("basis index out of range")
        z, o = self.field.zero(), self.field.one()
        return tuple(o if j == i else z for j in range(self.dim))

    def element(self, coords):
        if len(coords) != self.dim:
            raise ValueError(f"need {self.dim} coordinates, got {len(coords)}")
        return tuple(self.field.of(x) for x in coords)

    def random_element(self, rng):
        return tuple(self.field.random(rng) for _ in range(self.dim))

    def add(self, a, b):
        return tuple(self.field.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(self.field.sub(x, y) for x, y in zip(a, b))

    def scale(self, c, a):
        c = self.field.of(c)
        return tuple(self.field.mul(c, x) for x in a)

    def is_zero_element(self, a):
        return all(x == 0 for x in a)

    # -- multiplication ---------------------------------------------------

    def mul(self, a, b):
        if len(a) != self.dim or len(b) != self.dim:
            raise ValueError("element length mismatch")
        out = [0] * self.dim
        tbl = self._pair_table
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            row = tbl[i]
            for j, bj in enumerate(b):
                if bj == 0:
                    continue
                cell = row[j]
                if cell:
                    w = ai * bj
                    for k, c in cell:
                        out[k] += w * c
        p = self.field.p
        if p is not None:
            return tuple(x % p for x in out)
        return tuple(out)

    def commutator(self, a, b):
        return self.sub(self.mul(a, b), self.mul(b, a))

    def is_idempotent(self, a):
        return self.mul(a, a) == tuple(a)

    def is_square_zero(self, a):
        return self.is_zero_element(self.mul(a, a))

    def is_associative(self):
        d = self.dim
        tbl = self._pair_table
        p = self.field.p
        for i in range(d):
            for j in range(d):
                pij = tbl[i][j]
                for k in range(d):
                    acc = {}
                    for t, c in pij:
                        for s, c2 in tbl[t][k]:
                            acc[s] = acc.get(s, 0) + c * c2
                    for t, c in tbl[j][k]:
                        for s, c2 in tbl[i][t]:
                            acc[s] = acc.get(s, 0) - c * c2
                    for val in acc.values():
                        if (val % p if p is not None else val) != 0:
                            return False
        return True

    # -- multiplication operators as matrices ------------------------------

    def left_mul_matrix(self, a) -> Matrix:
        cols = [self.mul(a, self.basis_element(j)) for j in range(self.dim)]
        return matrix_from_columns(cols, self.field)

    def right_mul_matrix(self, a) -> Matrix:
        cols = [self.mul(self.basis_element(j), a) for j in range(self.dim)]
        return matrix_from_columns(cols, self.field)

    def try_invert_element(self, a):
        """Two-sided inverse of a, or None.  Needs a unital algebra."""
        if self.unit is None:
            raise ValueError("inversion needs a unital algebra")
        x = self.left_mul_matrix(a).solve(self.unit)
        if x is None or self.mul(x, a) != self.unit:
            return None
        return tuple(x)

    # -- homotopes ----------------------------------------------------------

    def homotope(self, f1: LinearMap, f2: LinearMap, g: LinearMap) -> "Algebra":
        """New multiplication a x b = g(f1(a) * f2(b)); unit metadata is dropped."""
        for f in (f1, f2, g):
            if f.domain_dim != self.dim or f.codomain_dim != self.dim or f.field != self.field:
                raise ValueError("homotope maps must be endomorphisms of the algebra")
        u = [f1.apply(self.basis_element(i)) for i in range(self.dim)]
        v = [f2.apply(self.basis_element(j)) for j in range(self.dim)]
        entries = {}
        for i in range(self.dim):
            for j in range(self.dim):
                w = g.apply(self.mul(u[i], v[j]))
                for k, c in enumerate(w):
                    if c != 0:
                        entries[(i, j, k)] = c
        return Algebra(self.dim, Trilinear((self.dim,) * 3, entries, self.field), self.field)

    def left_delta_homotope(self, delta) -> "Algebra":
        """New multiplication a x b = (a * delta) * b."""
        delta = self.element(delta)
        u = [self.mul(self.basis_element(i), delta) for i in range(self.dim)]
        entries = {}
        for i in range(self.dim):
            for j in range(self.dim):
                w = self.mul(u[i], self.basis_element(j))
                for k, c in enumerate(w):
                    if c != 0:
                        entries[(i, j, k)] = c
        return Algebra(self.dim, Trilinear((self.dim,) * 3, entries, self.field), self.field)

    def right_delta_homotope(self, delta) -> "Algebra":
        """New multiplication a x b = a * (delta * b)."""
        delta = self.element(delta)
        v = [self.mul(delta, self.basis_element(j)) for j in range(self.dim)]
        entries = {}
        for i in range(self.dim):
            for j in range(self.dim):
                w = self.mul(self.basis_element(i), v[j])
                for k, c in enumerate(w):
                    if c != 0:
                        entries[(i, j, k)] = c
        return Algebra(self.dim, Trilinear((self.dim,) * 3, entries, self.field), self.field)

    def augment_unit(self) -> "Algebra":
        """Adjoin a formal two-sided unit as the new first basis vector."""
        n = self.dim
        one = self.field.one()
        entries = {}
        for (i, j, k), c in self.structure.entries.items():
            entries[(i + 1, j + 1, k + 1)] = c
        for j in range(n + 1):
            entries[(0, j, j)] = one
        for i in range(1, n + 1):
            entries[(i, 0, i)] = one
        unit = (one,) + (self.field.zero(),) * n
        labels = ("1",) + tuple(self.labels) if self.labels else None
        return Algebra(n + 1, Trilinear((n + 1,) * 3, entries, self.field),
                       self.field, unit=unit, labels=labels)

    # -- structural probes -----------------------------------------------

    def is_well_tempered(self, delta) -> bool:
        """Whether the two-sided span of basis * delta * basis is everything."""
        if self.unit is None:
            raise ValueError("well-tempered test needs a unital algebra")
        delta = self.element(delta)
        left = [self.mul(self.basis_element(i), delta) for i in range(self.dim)]
        span = RowSpace(self.dim, self.field)
        for i in range(self.dim):
            for j in range(self.dim):
                span.add(self.mul(left[i], self.basis_element(j)))
                if span.rank == self.dim:
                    return True
        return span.rank == self.dim

    def corner_subalgebra(self, e):
        """The subalgebra e * A * e for an idempotent e.

        Returns (corner, embedding), where embedding maps corner coordinates
        into the ambient algebra and the corner's unit is e.
        """
        e = self.element(e)
        if not self.is_idempotent(e):
            raise ValueError("corner needs an idempotent element")
        span = RowSpace(self.dim, self.field)
        for i in range(self.dim):
            span.add(self.mul(self.mul(e, self.basis_element(i)), e))
        basis = span.basis_rows()
        r = len(basis)
        entries = {}
        for a in range(r):
            for b in range(r):
                w = span.coords_of(self.mul(basis[a], basis[b]))
                if w is None:
                    raise ValueError("corner span is not multiplicatively closed")
                for k, c in enumerate(w):
                    if c != 0:
                        entries[(a, b, k)] = c
        unit_coords = span.coords_of(e)
        if unit_coords is None:
            raise ValueError("idempotent does not lie in its own corner span")
        corner = Algebra(r, Trilinear((r,) * 3, entries, self.field), self.field,
                         unit=unit_coords)
        return corner, LinearMap(matrix_from_columns(basis, self.field))

    def conjugation_isomorphism(self, delta, u, v):
        """(delta', psi) with delta' = u*delta*v and psi(x) = v^-1 * x * u^-1.

        psi is an isomorphism from the delta-homotope to the delta'-homotope;
        u and v must be units.
        """
        delta = self.element(delta)
        uinv = self.try_invert_element(self.element(u))
        vinv = self.try_invert_element(self.element(v))
        if uinv is None or vinv is None:
            raise ValueError("conjugation needs invertible u and v")
        delta2 = self.mul(self.mul(self.element(u), delta), self.element(v))
        psi = LinearMap(self.left_mul_matrix(vinv) @ self.right_mul_matrix(uinv))
        return delta2, psi

    def reduce_mod(self, p: int) -> "Algebra":
        """The same structure constants over F_p (denominators must be units)."""
        if self.field.p is not None:
            raise ValueError("reduction applies to algebras over Q")
        f2 = Field.prime(p)
        entries = {key: f2.of(c) for key, c in self.structure.entries.items()}
        unit = tuple(f2.of(x) for x in self.unit) if self.unit is not None else None
        return Algebra(self.dim, Trilinear((self.dim,) * 3,
                                           {k: c for k, c in entries.items() if c != 0}, f2),
                       f2, unit=unit, labels=self.labels)


def is_isomorphism_witness(src: Algebra, dst: Algebra, phi: LinearMap) -> bool:
    """Whether phi is an invertible map with phi(a*b) = phi(a) x phi(b) on all
    basis pairs (and unit to unit, when both algebras are unital)."""
    if src.dim != dst.dim or src.field != dst.field:
        return False
    if phi.domain_dim != src.dim or phi.codomain_dim != dst.dim:
        return False
    if not phi.is_invertible():
        return False
    images = [phi.apply(src.basis_element(i)) for i in range(src.dim)]
    for i in range(src.dim):
        ei = src.basis_element(i)
        for j in range(src.dim):
            lhs = phi.apply(src.mul(ei, src.basis_element(j)))
            if lhs != dst.mul(images[i], images[j]):
                return False
    if src.unit is not None and dst.unit is not None:
        if phi.apply(src.unit) != dst.unit:
            return False
    return True


@dataclass(frozen=True)
class SplitWitness:
    """An orthogonal idempotent decomposition eps = first + second."""

    first: tuple
    second: tuple


def probe_idempotent_split(alg: Algebra, eps, budget=DEFAULT_ENUM_BUDGET,
                           ansatz=None):
    """Search for nonzero orthogonal idempotents summing to eps.

    Without an ansatz the whole of F_p^dim is scanned (subject to the
    budget).  With ansatz — a list of elements spanning a search subspace —
    only that subspace is scanned.  Returns a SplitWitness, or None when no
    decomposition exists in the searched region.
    """
    p = alg.field.p
    if p is None:
        raise ValueError("idempotent probing needs a prime field")
    eps = alg.element(eps)
    if not alg.is_idempotent(eps):
        raise ValueError("probe target must be idempotent")
    if ansatz is None:
        needed = p**alg.dim
        if needed > budget:
            raise BudgetExceeded(needed, budget)
        candidates = itertools.product(range(p), repeat=alg.dim)
    else:
        vectors = [alg.element(w) for w in ansatz]
        needed = p ** len(vectors)
        if needed > budget:
            raise BudgetExceeded(needed, budget)

        def combos():
            for cs in itertools.product(range(p), repeat=len(vectors)):
                acc = alg.zero()
                for c, w in zip(cs, vectors):
                    if c:
                        acc = alg.add(acc, alg.scale(c, w))
                yield acc

        candidates = combos()
    for y in candidates:
        y = tuple(y)
        if alg.is_zero_element(y) or y == eps:
            continue
        if not alg.is_idempotent(y):
            continue
        x = alg.sub(eps, y)
        if alg.is_zero_element(x) or not alg.is_idempotent(x):
            continue
        if alg.is_zero_element(alg.mul(x, y)) and alg.is_zero_element(alg.mul(y, x)):
            return SplitWitness(x, y)
    return None
