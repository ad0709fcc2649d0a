"""JSON formats for algebras, triples, s-pairs and representations.

Scalars are canonical rational strings.  Structure constants are sparse index
lists (``[i, j, k, "p/q"]``), everything else is a dense nested list.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from . import exactlin as xl
from .errors import LycasError
from .liealg import LieAlgebra, LocalRegularSPair, ReductiveTriple
from .lyalg import InfSManifold, LieYamagutiAlgebra
from .reps.lyrep import ISMRep, LYRep
from .reps.triplerep import SPairRep, TripleRep

KINDS = ("ly", "lie", "triple", "spair", "ism", "lyrep", "ismrep", "triplerep", "spairrep")


class FormatError(LycasError, ValueError):
    """Malformed input; ``path`` names the offending field."""

    def __init__(self, path: str, message: str):
        self.path = path
        self.message = message
        super().__init__(f"{path}: {message}" if path else message)


# ----------------------------------------------------------------- writing

def _sparse(t: np.ndarray) -> list:
    return [[int(i) for i in idx] + [xl.format_rational(t[idx])] for idx in zip(*np.nonzero(t != 0))]


def _dense(a: np.ndarray) -> Any:
    a = np.asarray(a, dtype=object)
    if a.ndim == 0:
        return xl.format_rational(a[()])
    return [_dense(x) for x in a]


def _lie_fields(g: LieAlgebra) -> dict:
    d = {"dim": g.dim, "bracket": _sparse(g.bracket)}
    if g.label:
        d["label"] = g.label
    return d


def dump_ly(T: LieYamagutiAlgebra) -> dict:
    d = {"kind": "ly", "dim": T.dim, "binary": _sparse(T.binary), "ternary": _sparse(T.ternary)}
    if T.label:
        d["label"] = T.label
    return d


def dump_lie(g: LieAlgebra) -> dict:
    return {"kind": "lie", **_lie_fields(g)}


def dump_triple(rt: ReductiveTriple) -> dict:
    return {"kind": "triple", **_lie_fields(rt.g), "m_basis": _dense(rt.m_basis), "h_basis": _dense(rt.h_basis)}


def dump_spair(p: LocalRegularSPair) -> dict:
    return {"kind": "spair", **_lie_fields(p.g), "phi": _dense(p.phi)}


def dump_ism(S: InfSManifold) -> dict:
    return {"kind": "ism", "algebra": dump_ly(S.algebra), "sigma": _dense(S.sigma)}


def _rep_fields(r: LYRep) -> dict:
    return {"v_dim": r.v_dim, "rho": _dense(r.rho), "theta": _dense(r.theta), "delta": _dense(r.delta)}


def dump_lyrep(r: LYRep) -> dict:
    return {"kind": "lyrep", "algebra": dump_ly(r.algebra), **_rep_fields(r)}


def dump_ismrep(ir: ISMRep, S: InfSManifold) -> dict:
    return {"kind": "ismrep", "algebra": dump_ly(S.algebra), "sigma": _dense(S.sigma),
            **_rep_fields(ir.rep), "psi": _dense(ir.psi)}


def dump_triplerep(tr: TripleRep) -> dict:
    return {"kind": "triplerep", "triple": dump_triple(tr.triple), "n_dim": tr.n_dim, "action": _dense(tr.action)}


def dump_spairrep(sr: SPairRep, p: LocalRegularSPair) -> dict:
    tr = sr.rep
    return {"kind": "spairrep", "triple": dump_triple(tr.triple), "phi": _dense(p.phi),
            "n_dim": tr.n_dim, "action": _dense(tr.action), "psi_tilde": _dense(sr.psi_tilde)}


def dump(obj) -> dict:
    """Serialize any supported object; pairs (ISMRep, ISM) and (SPairRep, s-pair) are accepted as tuples."""
    if isinstance(obj, tuple) and len(obj) == 2:
        a, b = obj
        if isinstance(a, ISMRep) and isinstance(b, InfSManifold):
            return dump_ismrep(a, b)
        if isinstance(a, SPairRep) and isinstance(b, LocalRegularSPair):
            return dump_spairrep(a, b)
    for cls, fn in ((LieYamagutiAlgebra, dump_ly), (LieAlgebra, dump_lie), (ReductiveTriple, dump_triple),
                    (LocalRegularSPair, dump_spair), (InfSManifold, dump_ism), (LYRep, dump_lyrep),
                    (TripleRep, dump_triplerep)):
        if isinstance(obj, cls):
            return fn(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj) -> str:
    return json.dumps(dump(obj), indent=2, sort_keys=True) + "\n"


# ----------------------------------------------------------------- reading

def _field(d: dict, key: str, path: str):
    if not isinstance(d, dict):
        raise FormatError(path, "expected an object")
    if key not in d:
        raise FormatError(f"{path}.{key}" if path else key, "missing field")
    return d[key]


def _join(path: str, key) -> str:
    if isinstance(key, int):
        return f"{path}[{key}]"
    return f"{path}.{key}" if path else key


def _scalar(x, path: str):
    try:
        return xl.parse_rational(x)
    except xl.RationalFormatError as e:
        raise FormatError(path, f"invalid rational literal {x!r}: {e.reason}") from None


def _int(x, path: str, minimum: int = 0) -> int:
    if not isinstance(x, int) or isinstance(x, bool) or x < minimum:
        raise FormatError(path, f"expected an integer >= {minimum}, got {x!r}")
    return x


def _dense_in(x, shape: tuple, path: str) -> np.ndarray:
    out = xl.zeros(*shape)
    if not shape:
        return _scalar(x, path)

    def walk(node, idx, p):
        depth = len(idx)
        if not isinstance(node, list) or len(node) != shape[depth]:
            raise FormatError(p, f"expected a list of length {shape[depth]}")
        for i, item in enumerate(node):
            q = _join(p, i)
            if depth + 1 == len(shape):
                out[idx + (i,)] = _scalar(item, q)
            else:
                walk(item, idx + (i,), q)

    walk(x, (), path)
    return out


def _sparse_in(entries, shape: tuple, path: str, antisym: bool) -> np.ndarray:
    """Sparse entries; with ``antisym`` an omitted (j, i, ...) entry is filled as minus (i, j, ...)."""
    if not isinstance(entries, list):
        raise FormatError(path, "expected a list of index entries")
    t = xl.zeros(*shape)
    seen = set()
    r = len(shape)
    for a, e in enumerate(entries):
        p = _join(path, a)
        if not isinstance(e, list) or len(e) != r + 1:
            raise FormatError(p, f"expected {r} indices and a rational")
        idx = tuple(_int(e[b], _join(p, b)) for b in range(r))
        for b, (i, n) in enumerate(zip(idx, shape)):
            if i >= n:
                raise FormatError(_join(p, b), f"index {i} out of range for dimension {n}")
        if idx in seen:
            raise FormatError(p, f"duplicate entry for index {list(idx)}")
        seen.add(idx)
        t[idx] = _scalar(e[r], _join(p, r))
    if antisym:
        for idx in list(seen):
            mirror = (idx[1], idx[0]) + idx[2:]
            if mirror not in seen:
                t[mirror] = -t[idx]
    return t


def _label(d: dict, path: str):
    lab = d.get("label")
    if lab is not None and not isinstance(lab, str):
        raise FormatError(_join(path, "label"), "expected a string")
    return lab


def _kind(d, path: str, expected: str):
    k = _field(d, "kind", path)
    if k != expected:
        raise FormatError(_join(path, "kind"), f"expected {expected!r}, got {k!r}")


def _load_ly(d: dict, path: str = "") -> LieYamagutiAlgebra:
    _kind(d, path, "ly")
    n = _int(_field(d, "dim", path), _join(path, "dim"))
    b = _sparse_in(_field(d, "binary", path), (n, n, n), _join(path, "binary"), True)
    t = _sparse_in(_field(d, "ternary", path), (n, n, n, n), _join(path, "ternary"), True)
    return LieYamagutiAlgebra(b, t, label=_label(d, path))


def _lie_in(d: dict, path: str) -> LieAlgebra:
    n = _int(_field(d, "dim", path), _join(path, "dim"))
    c = _sparse_in(_field(d, "bracket", path), (n, n, n), _join(path, "bracket"), True)
    return LieAlgebra(c, _label(d, path))


def _rows_in(x, n: int, path: str) -> np.ndarray:
    if not isinstance(x, list):
        raise FormatError(path, "expected a list of rows")
    return _dense_in(x, (len(x), n), path) if x else xl.zeros(0, n)


def _load_lie(d: dict, path: str = "") -> LieAlgebra:
    _kind(d, path, "lie")
    return _lie_in(d, path)


def _load_triple(d: dict, path: str = "") -> ReductiveTriple:
    _kind(d, path, "triple")
    g = _lie_in(d, path)
    m = _rows_in(_field(d, "m_basis", path), g.dim, _join(path, "m_basis"))
    h = _rows_in(_field(d, "h_basis", path), g.dim, _join(path, "h_basis"))
    return ReductiveTriple(g, m, h)


def _load_spair(d: dict, path: str = "") -> LocalRegularSPair:
    _kind(d, path, "spair")
    g = _lie_in(d, path)
    return LocalRegularSPair(g, _dense_in(_field(d, "phi", path), (g.dim, g.dim), _join(path, "phi")))


def _load_ism(d: dict, path: str = "") -> InfSManifold:
    _kind(d, path, "ism")
    T = _load_ly(_field(d, "algebra", path), _join(path, "algebra"))
    return InfSManifold(T, _dense_in(_field(d, "sigma", path), (T.dim, T.dim), _join(path, "sigma")))


def _rep_in(d: dict, T: LieYamagutiAlgebra, path: str) -> LYRep:
    n = T.dim
    m = _int(_field(d, "v_dim", path), _join(path, "v_dim"))
    rho = _dense_in(_field(d, "rho", path), (n, m, m), _join(path, "rho"))
    theta = _dense_in(_field(d, "theta", path), (n, n, m, m), _join(path, "theta"))
    delta = _dense_in(_field(d, "delta", path), (n, n, m, m), _join(path, "delta"))
    return LYRep(T, rho, theta, delta)


def _load_lyrep(d: dict, path: str = "") -> LYRep:
    _kind(d, path, "lyrep")
    T = _load_ly(_field(d, "algebra", path), _join(path, "algebra"))
    return _rep_in(d, T, path)


def _load_ismrep(d: dict, path: str = "") -> tuple:
    _kind(d, path, "ismrep")
    T = _load_ly(_field(d, "algebra", path), _join(path, "algebra"))
    S = InfSManifold(T, _dense_in(_field(d, "sigma", path), (T.dim, T.dim), _join(path, "sigma")))
    r = _rep_in(d, T, path)
    psi = _dense_in(_field(d, "psi", path), (r.v_dim, r.v_dim), _join(path, "psi"))
    return ISMRep(r, psi), S


def _triplerep_in(d: dict, rt: ReductiveTriple, path: str) -> TripleRep:
    k = _int(_field(d, "n_dim", path), _join(path, "n_dim"))
    action = _field(d, "action", path)
    if not isinstance(action, list) or len(action) != rt.g.dim:
        raise FormatError(_join(path, "action"), f"expected {rt.g.dim} matrices")
    size = len(action[0]) if action and isinstance(action[0], list) else k
    if size < k:
        raise FormatError(_join(path, "n_dim"), f"n_dim {k} exceeds module dimension {size}")
    A = _dense_in(action, (rt.g.dim, size, size), _join(path, "action"))
    return TripleRep(rt, k, A)


def _load_triplerep(d: dict, path: str = "") -> TripleRep:
    _kind(d, path, "triplerep")
    rt = _load_triple(_field(d, "triple", path), _join(path, "triple"))
    return _triplerep_in(d, rt, path)


def _load_spairrep(d: dict, path: str = "") -> tuple:
    _kind(d, path, "spairrep")
    rt = _load_triple(_field(d, "triple", path), _join(path, "triple"))
    n = rt.g.dim
    phi = _dense_in(_field(d, "phi", path), (n, n), _join(path, "phi"))
    tr = _triplerep_in(d, rt, path)
    psi = _dense_in(_field(d, "psi_tilde", path), (tr.dim, tr.dim), _join(path, "psi_tilde"))
    return SPairRep(tr, psi), LocalRegularSPair(rt.g, phi)


_LOADERS = {
    "ly": _load_ly, "lie": _load_lie, "triple": _load_triple, "spair": _load_spair, "ism": _load_ism,
    "lyrep": _load_lyrep, "ismrep": _load_ismrep, "triplerep": _load_triplerep, "spairrep": _load_spairrep,
}


def load(d: dict):
    """Build the object described by a parsed JSON document (dispatch on ``kind``)."""
    kind = _field(d, "kind", "")
    if kind not in _LOADERS:
        raise FormatError("kind", f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    try:
        return _LOADERS[kind](d)
    except FormatError:
        raise
    except ValueError as e:
        raise FormatError("", str(e)) from None


def loads(text: str):
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise FormatError(f"line {e.lineno}, column {e.colno}", e.msg) from None
    return load(d)


def load_file(path) -> Any:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        return loads(text)
    except FormatError as e:
        raise FormatError(f"{path}: {e.path}" if e.path else str(path), e.message) from None
