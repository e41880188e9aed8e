"""Structured-text (JSON) formats for every artifact the toolkit consumes
or emits. Indices in files are 1-based; algebra bracket rows are given only
for i<j<k and skew-completed on load; rationals travel as "p/q" strings
(denominator omitted when 1). Serializers are canonical: loading then
saving a saved file reproduces it byte for byte.
"""
from __future__ import annotations

import json
import os
from typing import Optional

from .exactlin import InputError, Mat, Tensor4, rat, rat_str
from .homlie import Algebra3
from .reps import Rep3, rep_from_upper
from .bialgebra import BilForm, Cobracket, MatchedPairData
from .prelie import OOperator, PreLie3
from .yangbaxter import RTensor

_PERMS3 = (((0, 1, 2), 1), ((1, 2, 0), 1), ((2, 0, 1), 1),
           ((0, 2, 1), -1), ((2, 1, 0), -1), ((1, 0, 2), -1))


def _ctx(path: Optional[str], field: str) -> str:
    return f"{path or '<inline>'}: {field}"


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"{path}: no such file")
    except json.JSONDecodeError as e:
        raise InputError(f"{path}: line {e.lineno}: invalid JSON ({e.msg})")


def _need(doc: dict, field: str, path: Optional[str]):
    if field not in doc:
        raise InputError(f"{_ctx(path, field)}: missing field")
    return doc[field]


def _parse_rat(v, where: str):
    try:
        return rat(v)
    except (InputError, ValueError, TypeError):
        raise InputError(f"{where}: bad rational {v!r}")


def _parse_matrix(v, where: str, rows: int, cols: int) -> Mat:
    if (not isinstance(v, list) or len(v) != rows
            or any(not isinstance(r, list) or len(r) != cols for r in v)):
        raise InputError(f"{where}: expected a {rows}x{cols} row-major matrix")
    return Mat([[_parse_rat(x, where) for x in row] for row in v])


def _matrix_doc(m: Mat) -> list:
    return [[rat_str(v) for v in row] for row in m.entries]


def _parse_dim(doc: dict, path: Optional[str], max_dim: Optional[int]) -> int:
    n = _need(doc, "dim", path)
    if not isinstance(n, int) or n < 1:
        raise InputError(f"{_ctx(path, 'dim')}: expected a positive integer")
    if max_dim is not None and n > max_dim:
        raise InputError(f"{_ctx(path, 'dim')}: dimension {n} exceeds the "
                         f"supported maximum {max_dim}")
    return n


def _parse_basis(doc: dict, path: Optional[str], n: int) -> tuple:
    basis = doc.get("basis", [f"e{i + 1}" for i in range(n)])
    if not isinstance(basis, list) or len(basis) != n:
        raise InputError(f"{_ctx(path, 'basis')}: expected {n} names")
    return tuple(basis)


def _index(v, where: str, n: int) -> int:
    if not isinstance(v, int) or not 1 <= v <= n:
        raise InputError(f"{where}: index {v!r} out of range 1..{n}")
    return v - 1


def _skew_rows_to_tensor(rows, where: str, n: int) -> Tensor4:
    entries = []
    for rnum, row in enumerate(rows, 1):
        loc = f"{where}[{rnum}]"
        if not isinstance(row, list) or len(row) != 5:
            raise InputError(f"{loc}: expected [i, j, k, l, value]")
        i, j, k = (_index(v, loc, n) for v in row[:3])
        l = _index(row[3], loc, n)
        if len({i, j, k}) < 3:
            raise InputError(f"{loc}: repeated index among ({row[0]},{row[1]},{row[2]})")
        if not i < j < k:
            raise InputError(f"{loc}: indices must be strictly increasing")
        v = _parse_rat(row[4], loc)
        src = (i, j, k)
        for perm, sign in _PERMS3:
            entries.append((src[perm[0]], src[perm[1]], src[perm[2]], l, sign * v))
    return Tensor4.from_entries((n,) * 4, entries)


def load_algebra(path: str, max_dim: Optional[int] = None) -> Algebra3:
    return algebra_from_doc(_load_json(path), path, max_dim)


def algebra_from_doc(doc: dict, path: Optional[str] = None,
                     max_dim: Optional[int] = None) -> Algebra3:
    n = _parse_dim(doc, path, max_dim)
    _parse_basis(doc, path, n)
    rows = _need(doc, "bracket", path)
    if not isinstance(rows, list):
        raise InputError(f"{_ctx(path, 'bracket')}: expected a list of rows")
    seen = set()
    for rnum, row in enumerate(rows, 1):
        if isinstance(row, list) and len(row) == 5:
            key = tuple(row[:4])
            if key in seen:
                raise InputError(f"{_ctx(path, 'bracket')}[{rnum}]: duplicate row {key}")
            seen.add(key)
    bracket = _skew_rows_to_tensor(rows, _ctx(path, "bracket"), n)
    twist = _parse_matrix(_need(doc, "twist", path), _ctx(path, "twist"), n, n)
    return Algebra3(n, bracket, twist, label=doc.get("label", ""))


def algebra_to_doc(a: Algebra3) -> dict:
    rows = []
    for (i, j, k), row in sorted(a.bracket.rows()):
        if i < j < k:
            for l in sorted(row):
                rows.append([i + 1, j + 1, k + 1, l + 1, rat_str(row[l])])
    doc = {"dim": a.dim,
           "basis": [f"e{i + 1}" for i in range(a.dim)],
           "bracket": rows,
           "twist": _matrix_doc(a.twist)}
    if a.label:
        doc["label"] = a.label
    return doc


def _resolve(ref, path: Optional[str], loader, max_dim):
    """An "algebra"-style field: inline object or a path relative to the
    referencing file."""
    if isinstance(ref, dict):
        return loader(ref, None, max_dim)
    if isinstance(ref, str):
        base = os.path.dirname(path) if path else "."
        return loader(_load_json(os.path.join(base, ref)), ref, max_dim)
    raise InputError(f"{_ctx(path, 'algebra')}: expected a file path or inline object")


def load_rep(path: str, max_dim: Optional[int] = None) -> Rep3:
    doc = _load_json(path)
    base = _resolve(_need(doc, "algebra", path), path, algebra_from_doc, max_dim)
    m = _need(doc, "vdim", path)
    if not isinstance(m, int) or m < 1:
        raise InputError(f"{_ctx(path, 'vdim')}: expected a positive integer")
    if max_dim is not None and m > max_dim:
        raise InputError(f"{_ctx(path, 'vdim')}: dimension {m} exceeds the "
                         f"supported maximum {max_dim}")
    rows = _need(doc, "rho", path)
    upper = {}
    for rnum, row in enumerate(rows, 1):
        loc = f"{_ctx(path, 'rho')}[{rnum}]"
        if not isinstance(row, list) or len(row) != 3:
            raise InputError(f"{loc}: expected [i, j, matrix]")
        i = _index(row[0], loc, base.dim)
        j = _index(row[1], loc, base.dim)
        if not i < j:
            raise InputError(f"{loc}: indices must satisfy i < j")
        if (i, j) in upper:
            raise InputError(f"{loc}: duplicate pair ({row[0]},{row[1]})")
        upper[(i, j)] = _parse_matrix(row[2], loc, m, m)
    A = _parse_matrix(_need(doc, "A", path), _ctx(path, "A"), m, m)
    return rep_from_upper(base, m, upper, A)


def rep_to_doc(r: Rep3) -> dict:
    n = r.base.dim
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            if not r.rho[i][j].is_zero():
                rows.append([i + 1, j + 1, _matrix_doc(r.rho[i][j])])
    return {"algebra": algebra_to_doc(r.base), "vdim": r.vdim,
            "rho": rows, "A": _matrix_doc(r.A)}


def load_cobracket(path: str, max_dim: Optional[int] = None) -> Cobracket:
    doc = _load_json(path)
    base = _resolve(_need(doc, "algebra", path), path, algebra_from_doc, max_dim)
    n = base.dim
    rows = _need(doc, "delta", path)
    entries = []
    seen = set()
    for rnum, row in enumerate(rows, 1):
        loc = f"{_ctx(path, 'delta')}[{rnum}]"
        if not isinstance(row, list) or len(row) != 5:
            raise InputError(f"{loc}: expected [i, j, l, k, value]")
        i, j, l, k = (_index(v, loc, n) for v in row[:4])
        if (i, j, l, k) in seen:
            raise InputError(f"{loc}: duplicate row")
        seen.add((i, j, l, k))
        entries.append((i, j, l, k, _parse_rat(row[4], loc)))
    return Cobracket(base, Tensor4.from_entries((n,) * 4, entries))


def cobracket_to_doc(c: Cobracket) -> dict:
    rows = [[i + 1, j + 1, l + 1, k + 1, rat_str(v)]
            for i, j, l, k, v in sorted(c.dual_c.items())]
    return {"algebra": algebra_to_doc(c.base), "delta": rows}


def load_prelie(path: str, max_dim: Optional[int] = None) -> PreLie3:
    doc = _load_json(path)
    n = _parse_dim(doc, path, max_dim)
    _parse_basis(doc, path, n)
    rows = _need(doc, "bracket", path)
    entries = []
    seen = set()
    for rnum, row in enumerate(rows, 1):
        loc = f"{_ctx(path, 'bracket')}[{rnum}]"
        if not isinstance(row, list) or len(row) != 5:
            raise InputError(f"{loc}: expected [i, j, k, l, value]")
        i, j, k, l = (_index(v, loc, n) for v in row[:4])
        if i == j:
            raise InputError(f"{loc}: repeated index in the skew pair")
        if not i < j:
            raise InputError(f"{loc}: first two indices must satisfy i < j")
        if (i, j, k, l) in seen:
            raise InputError(f"{loc}: duplicate row")
        seen.add((i, j, k, l))
        v = _parse_rat(row[4], loc)
        entries.append((i, j, k, l, v))
        entries.append((j, i, k, l, -v))
    twist = _parse_matrix(_need(doc, "twist", path), _ctx(path, "twist"), n, n)
    return PreLie3(n, Tensor4.from_entries((n,) * 4, entries), twist,
                   label=doc.get("label", ""))


def prelie_to_doc(p: PreLie3) -> dict:
    rows = []
    for (i, j, k), row in sorted(p.product.rows()):
        if i < j:
            for l in sorted(row):
                rows.append([i + 1, j + 1, k + 1, l + 1, rat_str(row[l])])
    doc = {"dim": p.dim,
           "basis": [f"e{i + 1}" for i in range(p.dim)],
           "bracket": rows,
           "twist": _matrix_doc(p.twist)}
    if p.label:
        doc["label"] = p.label
    return doc


def load_rtensor(path: str, max_dim: Optional[int] = None) -> RTensor:
    doc = _load_json(path)
    base = _resolve(_need(doc, "algebra", path), path, algebra_from_doc, max_dim)
    m = _parse_matrix(_need(doc, "matrix", path), _ctx(path, "matrix"),
                      base.dim, base.dim)
    return RTensor(base, m)


def rtensor_to_doc(r: RTensor) -> dict:
    return {"algebra": algebra_to_doc(r.base), "matrix": _matrix_doc(r.entries)}


def load_bilform(path: str, max_dim: Optional[int] = None) -> BilForm:
    doc = _load_json(path)
    n = _parse_dim(doc, path, max_dim)
    kind = _need(doc, "kind", path)
    if kind not in ("symmetric", "skew"):
        raise InputError(f"{_ctx(path, 'kind')}: expected 'symmetric' or 'skew'")
    m = _parse_matrix(_need(doc, "matrix", path), _ctx(path, "matrix"), n, n)
    return BilForm(n, m, kind)


def bilform_to_doc(f: BilForm) -> dict:
    return {"dim": f.dim, "kind": f.kind, "matrix": _matrix_doc(f.matrix)}


def load_matrix(path: str, max_dim: Optional[int] = None) -> Mat:
    doc = _load_json(path)
    n = _parse_dim(doc, path, max_dim)
    return _parse_matrix(_need(doc, "matrix", path), _ctx(path, "matrix"), n, n)


def matrix_to_doc(m: Mat) -> dict:
    return {"dim": m.rows, "matrix": _matrix_doc(m)}


def load_matched_pair(path: str, max_dim: Optional[int] = None) -> MatchedPairData:
    doc = _load_json(path)
    left = _resolve(_need(doc, "left", path), path, algebra_from_doc, max_dim)
    right = _resolve(_need(doc, "right", path), path, algebra_from_doc, max_dim)

    def action(field, base, vdim):
        rows = _need(doc, field, path)
        upper = {}
        for rnum, row in enumerate(rows, 1):
            loc = f"{_ctx(path, field)}[{rnum}]"
            if not isinstance(row, list) or len(row) != 3:
                raise InputError(f"{loc}: expected [i, j, matrix]")
            i = _index(row[0], loc, base.dim)
            j = _index(row[1], loc, base.dim)
            if not i < j:
                raise InputError(f"{loc}: indices must satisfy i < j")
            upper[(i, j)] = _parse_matrix(row[2], loc, vdim, vdim)
        A = _parse_matrix(_need(doc, field + "_A", path), _ctx(path, field + "_A"),
                          vdim, vdim)
        return rep_from_upper(base, vdim, upper, A)

    return MatchedPairData(left, right,
                           action("rho", left, right.dim),
                           action("mu", right, left.dim))


def load_o_operator(path: str, max_dim: Optional[int] = None) -> OOperator:
    doc = _load_json(path)
    rep_ref = _need(doc, "rep", path)
    if isinstance(rep_ref, str):
        base_dir = os.path.dirname(path) if path else "."
        rep = load_rep(os.path.join(base_dir, rep_ref), max_dim)
    else:
        raise InputError(f"{_ctx(path, 'rep')}: expected a representation file path")
    T = _parse_matrix(_need(doc, "T", path), _ctx(path, "T"),
                      rep.base.dim, rep.vdim)
    return OOperator(rep, T)


def dump(doc: dict, path: str) -> None:
    """Atomic, canonical write: sorted keys, two-space indent, newline."""
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    tmp = path + ".tmp"
    with open(tmp, "w") as fh:
        fh.write(text)
    os.replace(tmp, path)


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"
