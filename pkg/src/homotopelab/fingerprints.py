"""Computable isomorphism invariants based on exhaustive finite-field scans.

All censuses here run over F_p rational points and are used as
*distinguishing invariants* between algebras, not as literal point counts
of varieties: equality of fingerprints is only ever reported as
"consistent with isomorphism".  Every scan checks its size against an
explicit budget and refuses deterministically rather than truncating.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .algebra import DEFAULT_ENUM_BUDGET, Algebra
from .constructions import word16, word16_delta
from .errors import BudgetExceeded
from .scalars import Field, sort_key


def _prime_of(alg: Algebra):
    if alg.field.p is None:
        raise ValueError("fingerprints need an algebra over a prime field")
    return alg.field.p


def _check_budget(needed, budget):
    if needed > budget:
        raise BudgetExceeded(needed, budget)


def enumerate_idempotents(alg: Algebra, budget=DEFAULT_ENUM_BUDGET):
    """All elements with a*a = a, in lexicographic coordinate order."""
    p = _prime_of(alg)
    _check_budget(p**alg.dim, budget)
    out = []
    mul = alg.mul
    for coords in itertools.product(range(p), repeat=alg.dim):
        if mul(coords, coords) == coords:
            out.append(coords)
    return out


def enumerate_square_zero(alg: Algebra, budget=DEFAULT_ENUM_BUDGET):
    """All elements with a*a = 0, in lexicographic coordinate order."""
    p = _prime_of(alg)
    _check_budget(p**alg.dim, budget)
    out = []
    mul = alg.mul
    for coords in itertools.product(range(p), repeat=alg.dim):
        if not any(mul(coords, coords)):
            out.append(coords)
    return out


def _ratio_if_proportional(field: Field, u, v):
    """c with u = c*v (both nonzero vectors), or None."""
    piv = next((i for i, x in enumerate(v) if x != 0), None)
    if piv is None or u[piv] == 0:
        return None
    c = field.div(u[piv], v[piv])
    if all(x == field.mul(c, y) for x, y in zip(u, v)):
        return c
    return None


def mu_spectrum(alg: Algebra, budget=DEFAULT_ENUM_BUDGET):
    """Sorted list of ratios mu with z1*z2 = mu * z2*z1 over square-zero
    pairs whose products are both nonzero."""
    nonzero_sq = [z for z in enumerate_square_zero(alg, budget) if any(z)]
    _check_budget(len(nonzero_sq) ** 2, budget)
    mul = alg.mul
    mus = set()
    for z1 in nonzero_sq:
        for z2 in nonzero_sq:
            u = mul(z1, z2)
            if not any(u):
                continue
            v = mul(z2, z1)
            if not any(v):
                continue
            c = _ratio_if_proportional(alg.field, u, v)
            if c is not None:
                mus.add(c)
    return sorted(mus, key=sort_key)


def idempotent_commutator_fingerprint(alg: Algebra, budget=DEFAULT_ENUM_BUDGET):
    """Sorted multiset of coefficients c over ordered pairs (u, v) of
    distinct nonzero idempotents whose commutator is a nonzero multiple
    c*t of some nonzero idempotent t.

    Isomorphisms permute idempotents and preserve commutators, so this
    multiset is an isomorphism invariant.
    """
    idems = [e for e in enumerate_idempotents(alg, budget) if any(e)]
    coeffs = []
    for u in idems:
        for v in idems:
            if u == v:
                continue
            c = alg.commutator(u, v)
            if not any(c):
                continue
            for t in idems:
                ratio = _ratio_if_proportional(alg.field, c, t)
                if ratio is not None:
                    coeffs.append(ratio)
                    break
    return sorted(coeffs, key=sort_key)


def products_supported_in(alg: Algebra, left, right, allowed) -> bool:
    """Whether e_i * e_j lies in the coordinate span of `allowed` for every
    i in left and j in right."""
    allowed = set(allowed)
    outside = [k for k in range(alg.dim) if k not in allowed]
    for i in left:
        ei = alg.basis_element(i)
        for j in right:
            prod = alg.mul(ei, alg.basis_element(j))
            if any(prod[k] != 0 for k in outside):
                return False
    return True


@dataclass(frozen=True)
class SplittingReport:
    lam: object
    field: Field
    subalgebra_closed: bool
    relations_hold: bool
    complement_square_zero: bool
    left_products_stay: bool
    right_products_stay: bool

    @property
    def passed(self):
        return (self.subalgebra_closed and self.relations_hold
                and self.complement_square_zero and self.left_products_stay
                and self.right_products_stay)

    def clauses(self):
        return {
            "subalgebra_closed": self.subalgebra_closed,
            "relations_hold": self.relations_hold,
            "complement_square_zero": self.complement_square_zero,
            "left_products_stay": self.left_products_stay,
            "right_products_stay": self.right_products_stay,
        }


# In the unit-augmented homotope of the word algebra, basis 0 is the
# adjoined unit and word i moves to index i+1.  The distinguished span uses
# the adjoined unit, x, y and the surviving length-3 word; the complement
# span holds the twelve other words of length >= 1.  (The basis word "1"
# of the original algebra, at index 1, lies outside both spans.)
_MAIN_IDX = (0, 2, 3, 16)
_COMP_IDX = tuple(range(4, 16))


def verify_homotope_splitting(lam, field: Field) -> SplittingReport:
    """Check the span structure of the unit-augmented delta-homotope of the
    16-dimensional word algebra at delta = lam*h1 + h2.

    Clauses: span(unit, x, y, xh1y) is closed under the product and its
    generators satisfy x*x = 0, y*y = 0, x*y - lam*(y*x) = 0; the span of
    the twelve other words multiplies to zero against itself and absorbs
    products with the main span on either side.
    """
    lam = field.of(lam)
    base = word16(field)
    hom = base.left_delta_homotope(word16_delta(lam, field))
    amb = hom.augment_unit()
    x = amb.basis_element(2)
    y = amb.basis_element(3)
    xy = amb.mul(x, y)
    yx = amb.mul(y, x)
    relations = (not any(amb.mul(x, x))
                 and not any(amb.mul(y, y))
                 and not any(amb.sub(xy, amb.scale(lam, yx))))
    return SplittingReport(
        lam=lam,
        field=field,
        subalgebra_closed=products_supported_in(amb, _MAIN_IDX, _MAIN_IDX, _MAIN_IDX),
        relations_hold=relations,
        complement_square_zero=products_supported_in(amb, _COMP_IDX, _COMP_IDX, ()),
        left_products_stay=products_supported_in(amb, _MAIN_IDX, _COMP_IDX, _COMP_IDX),
        right_products_stay=products_supported_in(amb, _COMP_IDX, _MAIN_IDX, _COMP_IDX),
    )
