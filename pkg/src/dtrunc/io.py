"""SSX, CAT and OPD file formats (JSON syntax, canonical ordering, byte-deterministic output)."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .category import Category
from .errors import ArgumentError, ValidationError
from .operad import ColoredOperad
from .sset import SSet, SimplexRef


class ParseError(ValidationError):
    """Malformed input; ``where`` is a JSON path to the offending value."""

    def __init__(self, where: str, msg: str):
        super().__init__(f"{where}: {msg}")
        self.where = where


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, indent=1, ensure_ascii=False) + "\n"


def _load(text: str, kind: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno} col {exc.colno}", f"invalid JSON ({exc.msg})") from None
    if not isinstance(data, dict):
        raise ParseError("$", f"{kind} document must be an object")
    return data


def _need(data: dict, key: str, typ, where: str = "$"):
    if key not in data:
        raise ParseError(where, f"missing field {key!r}")
    val = data[key]
    if not isinstance(val, typ):
        raise ParseError(f"{where}.{key}", f"expected {typ.__name__}")
    return val


def _reject_unknown(data: dict, allowed: set, where: str = "$") -> None:
    extra = sorted(set(data) - allowed)
    if extra:
        raise ParseError(where, f"unknown field {extra[0]!r}")


# -- SSX -----------------------------------------------------------------------
def sset_to_json(X: SSet) -> dict:
    out: dict[str, Any] = {
        "dims": {str(n): list(X.nondegenerate(n)) for n in sorted(X.dims)},
        "faces": {
            x: [{"degens": list(r.degeneracies), "base": r.base} for r in X.faces_of(x)]
            for x in X.ids()
            if X.dim_of(x) > 0
        },
    }
    if X.labels:
        out["labels"] = dict(X.labels)
    if X.name:
        out["name"] = X.name
    return out


def sset_from_json(data: dict) -> SSet:
    _reject_unknown(data, {"dims", "faces", "labels", "name"})
    dims_raw = _need(data, "dims", dict)
    faces_raw = _need(data, "faces", dict)
    dims: dict[int, list[str]] = {}
    dim_of: dict[str, int] = {}
    for k, ids in dims_raw.items():
        where = f"$.dims.{k}"
        try:
            n = int(k)
        except ValueError:
            raise ParseError(where, "dimension key must be an integer") from None
        if not isinstance(ids, list) or not all(isinstance(x, str) for x in ids):
            raise ParseError(where, "expected a list of simplex ids")
        dims[n] = ids
        for x in ids:
            dim_of[x] = n
    faces: dict[str, list[SimplexRef]] = {}
    for x, n in dim_of.items():
        if n == 0:
            continue
        where = f"$.faces.{x}"
        refs = faces_raw.get(x)
        if not isinstance(refs, list) or len(refs) != n + 1:
            raise ParseError(where, f"expected {n + 1} face refs")
        out = []
        for i, r in enumerate(refs):
            w = f"{where}[{i}]"
            if not isinstance(r, dict):
                raise ParseError(w, "face ref must be an object")
            _reject_unknown(r, {"degens", "base"}, w)
            base = _need(r, "base", str, w)
            degens = _need(r, "degens", list, w)
            if base not in dim_of:
                raise ParseError(w, f"unknown simplex {base!r}")
            try:
                ref = SimplexRef.from_degeneracies(base, dim_of[base], degens)
            except ValidationError as exc:
                raise ParseError(w, str(exc)) from None
            if ref.dim != n - 1:
                raise ParseError(w, f"face has dimension {ref.dim}, expected {n - 1}")
            out.append(ref)
        faces[x] = out
    stray = sorted(set(faces_raw) - set(faces))
    if stray:
        raise ParseError("$.faces", f"faces given for unknown or 0-dimensional simplex {stray[0]!r}")
    labels = data.get("labels", {})
    if not isinstance(labels, dict):
        raise ParseError("$.labels", "expected an object")
    X = SSet(dims, faces, labels=labels, name=data.get("name", ""))
    try:
        X.validate()
    except ValidationError as exc:
        raise ParseError("$", f"simplicial identities fail: {exc}") from None
    return X


# -- CAT -----------------------------------------------------------------------
def category_to_json(C: Category) -> dict:
    out = {
        "objects": list(C.objects),
        "morphisms": [{"id": f, "src": s, "dst": t} for f, (s, t) in sorted(C.morphisms.items())],
        "compose": sorted([g, f, gf] for (g, f), gf in C.table.items()),
        "identities": dict(C.identities),
    }
    if C.name:
        out["name"] = C.name
    return out


def category_from_json(data: dict) -> Category:
    _reject_unknown(data, {"objects", "morphisms", "compose", "identities", "name"})
    objects = _need(data, "objects", list)
    mor = {}
    for i, m in enumerate(_need(data, "morphisms", list)):
        w = f"$.morphisms[{i}]"
        if not isinstance(m, dict):
            raise ParseError(w, "expected an object")
        _reject_unknown(m, {"id", "src", "dst"}, w)
        mid = _need(m, "id", str, w)
        if mid in mor:
            raise ParseError(w, f"duplicate morphism {mid!r}")
        mor[mid] = (_need(m, "src", str, w), _need(m, "dst", str, w))
    table = {}
    for i, row in enumerate(_need(data, "compose", list)):
        if not (isinstance(row, list) and len(row) == 3 and all(isinstance(v, str) for v in row)):
            raise ParseError(f"$.compose[{i}]", "expected [g, f, gf]")
        table[(row[0], row[1])] = row[2]
    ident = _need(data, "identities", dict)
    try:
        return Category(objects, mor, ident, table, name=data.get("name", ""))
    except ValidationError as exc:
        raise ParseError("$", str(exc)) from None


# -- OPD -----------------------------------------------------------------------
def operad_to_json(O: ColoredOperad) -> dict:
    out = {
        "colors": list(O.colors),
        "operations": [{"id": o, "inputs": list(ins), "output": out} for o, (ins, out) in sorted(O.ops.items())],
        "composition": sorted([a, i, b, r] for (a, i, b), r in O.table.items()),
        "symmetry": sorted([o, list(p), r] for (o, p), r in O.sym.items()),
        "arity_cap": O.N,
    }
    if O.name:
        out["name"] = O.name
    return out


def operad_from_json(data: dict, arity_cap: int | None = None) -> ColoredOperad:
    _reject_unknown(data, {"colors", "operations", "composition", "symmetry", "arity_cap", "name"})
    colors = _need(data, "colors", list)
    ops = {}
    for i, o in enumerate(_need(data, "operations", list)):
        w = f"$.operations[{i}]"
        if not isinstance(o, dict):
            raise ParseError(w, "expected an object")
        _reject_unknown(o, {"id", "inputs", "output"}, w)
        oid = _need(o, "id", str, w)
        if oid in ops:
            raise ParseError(w, f"duplicate operation {oid!r}")
        ops[oid] = (tuple(_need(o, "inputs", list, w)), _need(o, "output", str, w))
    table = {}
    for i, row in enumerate(_need(data, "composition", list)):
        if not (isinstance(row, list) and len(row) == 4 and isinstance(row[1], int)):
            raise ParseError(f"$.composition[{i}]", "expected [outer, slot, inner, result]")
        table[(row[0], row[1], row[2])] = row[3]
    sym = {}
    for i, row in enumerate(_need(data, "symmetry", list)):
        if not (isinstance(row, list) and len(row) == 3 and isinstance(row[1], list)):
            raise ParseError(f"$.symmetry[{i}]", "expected [op, perm, result]")
        sym[(row[0], tuple(row[1]))] = row[2]
    cap = arity_cap if arity_cap is not None else data.get("arity_cap")
    if cap is None:
        cap = max((len(ins) for ins, _ in ops.values()), default=0)
    if not isinstance(cap, int) or cap < 0:
        raise ParseError("$.arity_cap", "expected a non-negative integer")
    try:
        return ColoredOperad(colors, ops, table, sym, name=data.get("name", ""), arity_cap=cap)
    except ValidationError as exc:
        raise ParseError("$", str(exc)) from None


# -- files ---------------------------------------------------------------------
FORMATS = ("ssx", "cat", "opd")


def detect_format(path: str | Path, given: str | None = None) -> str:
    fmt = given or Path(path).suffix.lstrip(".").lower()
    if fmt not in FORMATS:
        raise ArgumentError(f"cannot tell the format of {path}; pass --format ssx|cat|opd")
    return fmt


def read(path: str | Path, fmt: str | None = None, arity_cap: int | None = None):
    fmt = detect_format(path, fmt)
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ArgumentError(f"cannot read {path}: {exc.strerror}") from None
    data = _load(text, fmt.upper())
    if fmt == "ssx":
        return sset_from_json(data)
    if fmt == "cat":
        return category_from_json(data)
    return operad_from_json(data, arity_cap)


def to_json(obj) -> dict:
    if isinstance(obj, SSet):
        return sset_to_json(obj)
    if isinstance(obj, Category):
        return category_to_json(obj)
    if isinstance(obj, ColoredOperad):
        return operad_to_json(obj)
    raise ArgumentError(f"cannot serialise {type(obj).__name__}")


def serialize(obj) -> str:
    return dumps(to_json(obj))


def write(obj, path: str | Path) -> None:
    Path(path).write_text(serialize(obj), encoding="utf-8")
