"""Self-describing JSON file format, version "homotopelab/1".

Three kinds are supported: algebra, tensor, matrix.  Scalars travel as
strings ("2/3", "-1", "5"); entry lists are sorted lexicographically so
the writer is canonical.  Unit metadata on algebras is re-verified on
load, never trusted.
"""

from __future__ import annotations

import json

from .algebra import Algebra
from .linalg import Matrix
from .scalars import Field
from .tensor import Trilinear

FORMAT = "homotopelab/1"


def algebra_to_obj(alg: Algebra) -> dict:
    fmt = alg.field.format_scalar
    obj = {
        "format": FORMAT,
        "kind": "algebra",
        "field": alg.field.name,
        "dim": alg.dim,
        "entries": [[i, j, k, fmt(c)]
                    for (i, j, k), c in sorted(alg.structure.entries.items())],
    }
    if alg.unit is not None:
        obj["unit"] = [fmt(c) for c in alg.unit]
    if alg.labels is not None:
        obj["labels"] = list(alg.labels)
    return obj


def tensor_to_obj(t: Trilinear) -> dict:
    fmt = t.field.format_scalar
    return {
        "format": FORMAT,
        "kind": "tensor",
        "field": t.field.name,
        "dims": list(t.dims),
        "entries": [[i, j, k, fmt(c)] for (i, j, k), c in sorted(t.entries.items())],
    }


def matrix_to_obj(m: Matrix) -> dict:
    fmt = m.field.format_scalar
    return {
        "format": FORMAT,
        "kind": "matrix",
        "field": m.field.name,
        "rows": m.rows,
        "cols": m.cols,
        "entries": [[fmt(x) for x in m.row(i)] for i in range(m.rows)],
    }


def to_obj(x) -> dict:
    if isinstance(x, Algebra):
        return algebra_to_obj(x)
    if isinstance(x, Trilinear):
        return tensor_to_obj(x)
    if isinstance(x, Matrix):
        return matrix_to_obj(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _require(obj, key):
    if key not in obj:
        raise ValueError(f"missing required key {key!r}")
    return obj[key]


def from_obj(obj: dict):
    if _require(obj, "format") != FORMAT:
        raise ValueError(f"unsupported format {obj.get('format')!r}")
    kind = _require(obj, "kind")
    field = Field.parse(_require(obj, "field"))
    if kind == "algebra":
        dim = int(_require(obj, "dim"))
        entries = {(int(i), int(j), int(k)): field.parse_scalar(str(v))
                   for i, j, k, v in _require(obj, "entries")}
        unit = obj.get("unit")
        if unit is not None:
            unit = tuple(field.parse_scalar(str(v)) for v in unit)
        labels = obj.get("labels")
        return Algebra.from_structure(dim, entries, field, unit=unit, labels=labels)
    if kind == "tensor":
        dims = tuple(int(d) for d in _require(obj, "dims"))
        entries = {(int(i), int(j), int(k)): field.parse_scalar(str(v))
                   for i, j, k, v in _require(obj, "entries")}
        return Trilinear.from_entries(dims, entries, field)
    if kind == "matrix":
        rows = [[field.parse_scalar(str(v)) for v in row] for row in _require(obj, "entries")]
        m = Matrix.from_rows(rows, field) if rows else Matrix.zero(
            int(_require(obj, "rows")), int(_require(obj, "cols")), field)
        if m.rows != int(_require(obj, "rows")) or m.cols != int(_require(obj, "cols")):
            raise ValueError("declared shape does not match entries")
        return m
    raise ValueError(f"unknown kind {kind!r}")


def dumps(x) -> str:
    return json.dumps(to_obj(x), indent=1)


def loads(text: str):
    return from_obj(json.loads(text))


def save(x, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(x))
        fh.write("\n")


def load(path):
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())
