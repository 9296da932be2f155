"""Exact builders for the algebra and tensor families used throughout.

Everything here is constructed directly from structure constants or by
word rewriting; no generic quotient machinery is involved.  Basis orders
are pinned so that serialized output and tests are reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra
from .scalars import Field
from .tensor import Trilinear


def ground_field_algebra(field: Field) -> Algebra:
    """The base field as a 1-dimensional unital algebra."""
    return Algebra.from_structure(1, {(0, 0, 0): field.one()}, field,
                                  unit=(field.one(),), labels=("1",))


def two_dim_nonassoc(field: Field) -> Algebra:
    """The 2-dimensional algebra with e1*e1 = e1, e2*e1 = e2, e1*e2 = e1,
    e2*e2 = e1 (not associative, not commutative)."""
    one = field.one()
    return Algebra.from_structure(
        2, {(0, 0, 0): one, (1, 0, 1): one, (0, 1, 0): one, (1, 1, 0): one},
        field, labels=("e1", "e2"))


def two_dim_homotope(lam, field: Field) -> Algebra:
    """Left delta-homotope of :func:`two_dim_nonassoc` at delta = e1 + lam*e2.

    The table works out to e1*e1 = e1*e2 = e2*e2 = (1+lam)e1 and
    e2*e1 = e2 + lam*e1; the family is pairwise nonisomorphic over an
    infinite field.
    """
    base = two_dim_nonassoc(field)
    return base.left_delta_homotope((field.one(), field.of(lam)))


def quantum_exterior(lam, field: Field) -> Algebra:
    """The 4-dimensional unital algebra <x, y | x^2, y^2, x*y - lam*y*x>.

    Basis (1, x, y, xy) with y*x stored as lam^-1 * xy; lam must be nonzero.
    """
    lam = field.of(lam)
    if lam == 0:
        raise ValueError("parameter must be nonzero")
    one = field.one()
    entries = {(0, 0, 0): one}
    for i in (1, 2, 3):
        entries[(0, i, i)] = one
        entries[(i, 0, i)] = one
    entries[(1, 2, 3)] = one              # x*y = xy
    entries[(2, 1, 3)] = field.inv(lam)   # y*x = lam^-1 * xy
    return Algebra.from_structure(4, entries, field,
                                  unit=(one, field.zero(), field.zero(), field.zero()),
                                  labels=("1", "x", "y", "xy"))


# Pinned basis order for the 16-dimensional word algebra.
_W16_WORDS = (
    (),
    ("x",), ("y",), ("h1",), ("h2",),
    ("x", "y"), ("y", "x"),
    ("x", "h1"), ("x", "h2"), ("y", "h1"), ("y", "h2"),
    ("h1", "x"), ("h1", "y"), ("h2", "x"), ("h2", "y"),
    ("x", "h1", "y"),
)

W16_LABELS = tuple("".join(w) if w else "1" for w in _W16_WORDS)
W16_WORD_LENGTHS = tuple(len(w) for w in _W16_WORDS)

_W16_INDEX = {w: i for i, w in enumerate(_W16_WORDS)}


def _w16_reduce(word):
    """Index of a concatenated word after rewriting, or None when it dies.

    Surviving words: the empty word, the four generators, the ten length-2
    words other than xx, yy and the four h*h products, and the single
    length-3 class xh1y = yh2x.  Everything longer is zero.
    """
    if len(word) > 3:
        return None
    if word == ("y", "h2", "x"):
        return _W16_INDEX[("x", "h1", "y")]
    return _W16_INDEX.get(word)


def word16(field: Field) -> Algebra:
    """The 16-dimensional unital associative word algebra on x, y, h1, h2.

    Relations kill x^2, y^2, every h*h product, every word of length >= 3
    except xh1y and yh2x, and identify xh1y with yh2x.
    """
    one = field.one()
    entries = {}
    for i, wi in enumerate(_W16_WORDS):
        for j, wj in enumerate(_W16_WORDS):
            k = _w16_reduce(wi + wj)
            if k is not None:
                entries[(i, j, k)] = one
    unit = tuple(one if i == 0 else field.zero() for i in range(16))
    return Algebra.from_structure(16, entries, field, unit=unit, labels=W16_LABELS)


def word16_delta(lam, field: Field):
    """The element lam*h1 + h2 of :func:`word16`."""
    z = field.zero()
    coords = [z] * 16
    coords[3] = field.of(lam)
    coords[4] = field.one()
    return tuple(coords)


def matrix_algebra(base: Algebra, n: int) -> Algebra:
    """n x n matrices over a unital algebra, basis E_rs (x) base basis.

    Coordinate layout: index (r, s, t) maps to (r*n + s)*dim(base) + t.
    The base algebra must be unital (and associative for the product to be).
    """
    if base.unit is None:
        raise ValueError("matrix algebra needs a unital base")
    d = base.dim
    entries = {}
    for (t, w, k), c in base.structure.entries.items():
        for r in range(n):
            for s in range(n):
                for v in range(n):
                    entries[((r * n + s) * d + t, (s * n + v) * d + w, (r * n + v) * d + k)] = c
    unit = [base.field.zero()] * (n * n * d)
    for r in range(n):
        for t, c in enumerate(base.unit):
            unit[(r * n + r) * d + t] = c
    labels = None
    if base.labels:
        labels = tuple(f"E{r}{s}:{lab}" for r in range(n) for s in range(n)
                       for lab in base.labels)
    return Algebra.from_structure(n * n * d, entries, base.field,
                                  unit=tuple(unit), labels=labels)


def matrix_element(base: Algebra, n: int, blocks: dict):
    """Coordinates in matrix_algebra(base, n) of a block matrix, given as a
    map (row, col) -> base element."""
    d = base.dim
    coords = [base.field.zero()] * (n * n * d)
    for (r, s), elt in blocks.items():
        elt = base.element(elt)
        for t, c in enumerate(elt):
            coords[(r * n + s) * d + t] = c
    return tuple(coords)


def well_tempered_embed(base: Algebra, delta):
    """diag(1, delta) in Mat_2(base): a well-tempered element for any delta."""
    if base.unit is None:
        raise ValueError("embedding needs a unital base")
    return matrix_element(base, 2, {(0, 0): base.unit, (1, 1): delta})


@dataclass(frozen=True)
class Quiver:
    nvertices: int
    arrows: tuple  # (source, target, label)

    def __post_init__(self):
        for s, t, _ in self.arrows:
            if not (0 <= s < self.nvertices and 0 <= t < self.nvertices):
                raise ValueError("arrow endpoint out of range")

    @staticmethod
    def of(nvertices, arrows) -> "Quiver":
        return Quiver(nvertices, tuple((s, t, str(lab)) for s, t, lab in arrows))

    def is_acyclic(self) -> bool:
        indeg = [0] * self.nvertices
        for _, t, _ in self.arrows:
            indeg[t] += 1
        queue = [v for v in range(self.nvertices) if indeg[v] == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for s, t, _ in self.arrows:
                if s == v:
                    indeg[t] -= 1
                    if indeg[t] == 0:
                        queue.append(t)
        return seen == self.nvertices


def kronecker_quiver() -> Quiver:
    return Quiver.of(2, [(0, 1, "a"), (0, 1, "b")])


def doubled_chain_quiver(nvertices: int) -> Quiver:
    """nvertices vertices in a line with two parallel arrows per step."""
    arrows = []
    for i in range(nvertices - 1):
        arrows.append((i, i + 1, f"a{i}"))
        arrows.append((i, i + 1, f"b{i}"))
    return Quiver.of(nvertices, arrows)


def path_algebra(q: Quiver, field: Field, max_len=None) -> Algebra:
    """The path algebra of an acyclic quiver.

    Basis: all paths (stationary paths included), ordered by length then
    start vertex then arrow sequence.  A path is stored as (start, arrows)
    with arrows traversed left to right; the product p * q concatenates
    "first q, then p" and is zero when the endpoints do not match (or when
    the result exceeds max_len, if given).  The unit is the sum of the
    stationary paths.
    """
    if not q.is_acyclic():
        raise ValueError("path algebra needs an acyclic quiver")
    paths = [(v, ()) for v in range(q.nvertices)]
    frontier = list(paths)
    while frontier:
        nxt = []
        for start, arrows in frontier:
            if max_len is not None and len(arrows) >= max_len:
                continue
            end = q.arrows[arrows[-1]][1] if arrows else start
            for ai, (s, _, _) in enumerate(q.arrows):
                if s == end:
                    nxt.append((start, arrows + (ai,)))
        paths.extend(nxt)
        frontier = nxt
    paths.sort(key=lambda pth: (len(pth[1]), pth[0], pth[1]))
    index = {pth: i for i, pth in enumerate(paths)}

    def target(pth):
        start, arrows = pth
        return q.arrows[arrows[-1]][1] if arrows else start

    one = field.one()
    entries = {}
    for i, pi in enumerate(paths):
        for j, pj in enumerate(paths):
            # product pi * pj: traverse pj first, then pi
            if pi[0] != target(pj):
                continue
            combined = (pj[0], pj[1] + pi[1])
            if combined in index:
                entries[(i, j, index[combined])] = one

    unit = [field.zero()] * len(paths)
    for v in range(q.nvertices):
        unit[index[(v, ())]] = one

    def label(pth):
        start, arrows = pth
        if not arrows:
            return f"e{start}"
        return "*".join(q.arrows[a][2] for a in arrows)

    return Algebra.from_structure(len(paths), entries, field, unit=tuple(unit),
                                  labels=tuple(label(pth) for pth in paths))


def pencil_tensor(diag, row, field: Field) -> Trilinear:
    """The (5, 4, 2) tensor whose slot-3 slices are (I4; 0) and (D; row),
    D diagonal with the given entries.  Contracting slot 3 against (x, y)
    yields the 5 x 4 pencil x*A + y*B."""
    if len(diag) != 4 or len(row) != 4:
        raise ValueError("need 4 diagonal entries and a row 4-vector")
    entries = {}
    for i in range(4):
        entries[(i, i, 0)] = field.one()
        entries[(i, i, 1)] = field.of(diag[i])
    for j in range(4):
        entries[(4, j, 1)] = field.of(row[j])
    return Trilinear.from_entries((5, 4, 2), entries, field)
