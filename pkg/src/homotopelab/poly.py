"""Sparse multivariate polynomials with exact coefficients.

Terms are stored as a dict from exponent tuples to nonzero scalars.
The canonical ordering is graded lexicographic with t1 < t2 < ...:
compare total degree first, then the exponent tuples themselves.
Determinants of small polynomial matrices are computed by cofactor
expansion memoized on column subsets; sizes beyond 8 are rejected.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import FieldMismatch
from .scalars import Field

MAX_DET_SIZE = 8


def _gl_key(expt):
    return (sum(expt), expt)


@dataclass(frozen=True, eq=False)
class Polynomial:
    nvars: int
    terms: dict  # exponent tuple -> nonzero scalar
    field: Field

    # -- constructors -------------------------------------------------

    @staticmethod
    def zero(nvars, field: Field) -> "Polynomial":
        return Polynomial(nvars, {}, field)

    @staticmethod
    def constant(c, nvars, field: Field) -> "Polynomial":
        c = field.of(c)
        terms = {} if c == 0 else {(0,) * nvars: c}
        return Polynomial(nvars, terms, field)

    @staticmethod
    def variable(i, nvars, field: Field) -> "Polynomial":
        if not 0 <= i < nvars:
            raise ValueError("variable index out of range")
        e = tuple(1 if j == i else 0 for j in range(nvars))
        return Polynomial(nvars, {e: field.one()}, field)

    @staticmethod
    def linear_form(coeffs, field: Field) -> "Polynomial":
        """sum_i coeffs[i] * t_i."""
        n = len(coeffs)
        terms = {}
        for i, c in enumerate(coeffs):
            c = field.of(c)
            if c != 0:
                terms[tuple(1 if j == i else 0 for j in range(n))] = c
        return Polynomial(n, terms, field)

    @staticmethod
    def from_terms(nvars, items, field: Field) -> "Polynomial":
        terms = {}
        for expt, c in items:
            c = field.of(c)
            if len(expt) != nvars:
                raise ValueError("exponent arity mismatch")
            if c != 0:
                cur = terms.get(tuple(expt))
                c = field.add(cur, c) if cur is not None else c
                if c == 0:
                    terms.pop(tuple(expt), None)
                else:
                    terms[tuple(expt)] = c
        return Polynomial(nvars, terms, field)

    # -- predicates / views -------------------------------------------

    def is_zero(self):
        return not self.terms

    def total_degree(self):
        """Max total degree of a term; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self, d=None):
        degs = {sum(e) for e in self.terms}
        if not degs:
            return True
        if len(degs) > 1:
            return False
        return d is None or degs == {d}

    def leading(self):
        """(exponent, coefficient) of the graded-lex leading term."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=_gl_key)
        return e, self.terms[e]

    def coeff(self, expt):
        return self.terms.get(tuple(expt), self.field.zero())

    def __eq__(self, other):
        return (isinstance(other, Polynomial) and self.nvars == other.nvars
                and self.field == other.field and self.terms == other.terms)

    def __hash__(self):
        return hash((self.nvars, self.field, frozenset(self.terms.items())))

    # -- arithmetic ---------------------------------------------------

    def _check(self, other):
        if self.nvars != other.nvars:
            raise ValueError("polynomial arity mismatch")
        self.field.check_same(other.field)

    def __add__(self, other):
        self._check(other)
        add = self.field.add
        terms = dict(self.terms)
        for e, c in other.terms.items():
            cur = terms.get(e)
            s = add(cur, c) if cur is not None else c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        return Polynomial(self.nvars, terms, self.field)

    def __neg__(self):
        neg = self.field.neg
        return Polynomial(self.nvars, {e: neg(c) for e, c in self.terms.items()}, self.field)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        p = self.field.p
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2
                cur = out.get(e)
                c = cur + c if cur is not None else c
                out[e] = c
        if p is not None:
            out = {e: c % p for e, c in out.items()}
        return Polynomial(self.nvars, {e: c for e, c in out.items() if c != 0}, self.field)

    def scale(self, c):
        c = self.field.of(c)
        if c == 0:
            return Polynomial.zero(self.nvars, self.field)
        mul = self.field.mul
        return Polynomial(self.nvars, {e: mul(c, v) for e, v in self.terms.items()}, self.field)

    def __pow__(self, n):
        if n < 0:
            raise ValueError("negative power")
        result = Polynomial.constant(self.field.one(), self.nvars, self.field)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def monic(self):
        """Divide by the leading graded-lex coefficient (zero stays zero)."""
        if not self.terms:
            return self
        _, lc = self.leading()
        return self.scale(self.field.inv(lc))

    # -- evaluation / substitution -------------------------------------

    def evaluate(self, point):
        if len(point) != self.nvars:
            raise ValueError("point arity mismatch")
        point = [self.field.of(x) for x in point]
        total = 0
        for e, c in self.terms.items():
            v = c
            for x, k in zip(point, e):
                for _ in range(k):
                    v = v * x
            total += v
        return self.field.of(total)

    def substitute_linear(self, mat, new_nvars):
        """Replace variable i by sum_j mat[i][j] * s_j (s over new_nvars vars)."""
        if len(mat) != self.nvars or any(len(r) != new_nvars for r in mat):
            raise ValueError("substitution matrix shape mismatch")
        forms = [Polynomial.linear_form([self.field.of(x) for x in row], self.field)
                 for row in mat]
        out = Polynomial.zero(new_nvars, self.field)
        pow_cache = [{0: Polynomial.constant(1, new_nvars, self.field)} for _ in range(self.nvars)]
        for e, c in self.terms.items():
            term = Polynomial.constant(c, new_nvars, self.field)
            for i, k in enumerate(e):
                if k:
                    cache = pow_cache[i]
                    if k not in cache:
                        prev = max(cache)
                        cur = cache[prev]
                        for _ in range(prev, k):
                            cur = cur * forms[i]
                        cache[k] = cur
                    term = term * cache[k]
            out = out + term
        return out

    # -- text form ------------------------------------------------------

    def __str__(self):
        if not self.terms:
            return "0"
        fmt = self.field.format_scalar
        parts = []
        for e in sorted(self.terms, key=_gl_key, reverse=True):
            c = self.terms[e]
            factors = []
            for i, k in enumerate(e):
                if k == 1:
                    factors.append(f"t{i + 1}")
                elif k > 1:
                    factors.append(f"t{i + 1}^{k}")
            mono = "*".join(factors)
            if not mono:
                parts.append(fmt(c))
            elif c == self.field.one():
                parts.append(mono)
            else:
                parts.append(f"{fmt(c)}*{mono}")
        return " + ".join(parts)


def proportional(p: Polynomial, q: Polynomial) -> bool:
    """True iff p = c * q for some nonzero scalar c (0 and 0 count)."""
    if p.nvars != q.nvars or p.field != q.field:
        return False
    if p.is_zero() or q.is_zero():
        return p.is_zero() and q.is_zero()
    if set(p.terms) != set(q.terms):
        return False
    f = p.field
    e0 = next(iter(p.terms))
    c = f.div(p.terms[e0], q.terms[e0])
    return all(p.terms[e] == f.mul(c, q.terms[e]) for e in p.terms)


def det_poly_entries(rows) -> Polynomial:
    """Determinant of a square matrix of polynomials (any degrees), size <= 8."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("matrix is not square")
    if n > MAX_DET_SIZE:
        raise ValueError(f"determinant size {n} exceeds limit {MAX_DET_SIZE}")
    first = rows[0][0]
    field, nvars = first.field, first.nvars
    for r in rows:
        for e in r:
            if e.field != field:
                raise FieldMismatch("matrix entries over different fields")
            if e.nvars != nvars:
                raise ValueError("matrix entries with different arities")
    if n == 0:
        return Polynomial.constant(1, nvars, field)
    memo = {}

    def minor(cols):
        if cols in memo:
            return memo[cols]
        r = n - len(cols)
        if len(cols) == 1:
            res = rows[r][cols[0]]
        else:
            res = Polynomial.zero(nvars, field)
            for idx, c in enumerate(cols):
                entry = rows[r][c]
                if entry.is_zero():
                    continue
                sub = minor(cols[:idx] + cols[idx + 1:])
                term = entry * sub
                res = res + term if idx % 2 == 0 else res - term
        memo[cols] = res
        return res

    return minor(tuple(range(n)))


def det_linear_matrix(rows) -> Polynomial:
    """Determinant of a square matrix whose entries have degree <= 1."""
    for r in rows:
        for e in r:
            if e.total_degree() > 1:
                raise ValueError("entry of degree > 1")
    return det_poly_entries(rows)


@dataclass(frozen=True)
class BinaryQuartic:
    """a0*x^4 + a1*x^3*y + a2*x^2*y^2 + a3*x*y^3 + a4*y^4."""

    a0: object
    a1: object
    a2: object
    a3: object
    a4: object
    field: Field

    @staticmethod
    def of(coeffs, field: Field) -> "BinaryQuartic":
        if len(coeffs) != 5:
            raise ValueError("need 5 coefficients")
        return BinaryQuartic(*(field.of(c) for c in coeffs), field=field)

    @staticmethod
    def from_polynomial(p: Polynomial) -> "BinaryQuartic":
        """Extract the quartic coefficients of a 2-variable form of degree <= 4."""
        if p.nvars != 2:
            raise ValueError("need a 2-variable polynomial")
        if any(sum(e) > 4 for e in p.terms):
            raise ValueError("degree exceeds 4")
        return BinaryQuartic.of([p.coeff((4 - i, i)) for i in range(5)], p.field)

    def coeffs(self):
        return (self.a0, self.a1, self.a2, self.a3, self.a4)

    def is_zero(self):
        return all(c == 0 for c in self.coeffs())

    def to_polynomial(self) -> Polynomial:
        return Polynomial.from_terms(
            2, [((4 - i, i), c) for i, c in enumerate(self.coeffs())], self.field)

    def substituted(self, mat) -> "BinaryQuartic":
        """Apply the linear change of variables given by a 2x2 matrix."""
        return BinaryQuartic.from_polynomial(self.to_polynomial().substitute_linear(mat, 2))

    def scaled(self, c) -> "BinaryQuartic":
        mul = self.field.mul
        c = self.field.of(c)
        return BinaryQuartic(*(mul(c, a) for a in self.coeffs()), field=self.field)

    def __str__(self):
        return str(self.to_polynomial())


@dataclass(frozen=True)
class QuarticInvariants:
    delta0: object
    delta1: object
    disc: object
    j: object  # None when disc == 0 (repeated root)


def quartic_invariants(q: BinaryQuartic) -> QuarticInvariants:
    """Classical invariants of a binary quartic.

    delta0 = a2^2 - 3 a1 a3 + 12 a0 a4,
    delta1 = 2 a2^3 - 9 a1 a2 a3 + 27 a1^2 a4 + 27 a0 a3^2 - 72 a0 a2 a4,
    disc   = (4 delta0^3 - delta1^2) / 27,
    j      = delta0^3 / disc  when disc != 0, undefined (None) otherwise.
    """
    if q.is_zero():
        raise ValueError("invariants of the zero quartic")
    f = q.field
    if f.char in (2, 3):
        raise ValueError(f"quartic invariants need characteristic not in {{2, 3}} (got {f.name})")
    a0, a1, a2, a3, a4 = (f.of(c) for c in q.coeffs())
    d0 = f.of(a2 * a2 - 3 * a1 * a3 + 12 * a0 * a4)
    d1 = f.of(2 * a2**3 - 9 * a1 * a2 * a3 + 27 * a1 * a1 * a4
              + 27 * a0 * a3 * a3 - 72 * a0 * a2 * a4)
    disc = f.div(f.of(4 * d0**3 - d1 * d1), f.of(27))
    j = None if disc == 0 else f.div(f.mul(d0, f.mul(d0, d0)), disc)
    return QuarticInvariants(d0, d1, disc, j)
