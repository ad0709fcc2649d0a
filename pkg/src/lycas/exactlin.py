"""Exact rational dense linear algebra.

Matrices and tensors are numpy object arrays whose entries are ``flint.fmpq``
rationals.  Row reduction is delegated to FLINT's ``fmpq_mat``; everything
else (tensor contractions, slicing) stays in numpy.

Subspaces are stored by the reduced row-echelon form of a spanning set, so two
subspaces are equal exactly when their basis arrays agree entry-wise.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Optional, Sequence

import numpy as np
from flint import fmpq, fmpq_mat, fmpz

__all__ = [
    "Q",
    "RationalFormatError",
    "q",
    "qarray",
    "zeros",
    "eye",
    "is_zero",
    "parse_rational",
    "format_rational",
    "rref",
    "rank",
    "kernel",
    "solve",
    "invert",
    "column_space",
    "stabilized_kernel",
    "independent_subfamily",
    "Subspace",
    "Basis",
]

Q = fmpq

_RATIONAL_RE = re.compile(r"^(-?)(0|[1-9][0-9]*)(?:/([1-9][0-9]*))?$")


class RationalFormatError(ValueError):
    """A rational literal is malformed or not in canonical lowest terms."""

    def __init__(self, literal, reason: str):
        self.literal = literal
        self.reason = reason
        super().__init__(f"invalid rational literal {literal!r}: {reason}")


def parse_rational(text: str) -> fmpq:
    """Parse ``"p/q"`` or ``"p"``; only the canonical lowest-terms spelling is accepted."""
    if not isinstance(text, str):
        raise RationalFormatError(text, "expected a string")
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise RationalFormatError(text, "expected 'p/q' or 'p' with decimal integers")
    sign, num, den = match.groups()
    p, d = int(num), int(den) if den is not None else 1
    if den is not None and d == 1:
        raise RationalFormatError(text, "denominator 1 must be omitted")
    if p == 0 and (sign or den is not None):
        raise RationalFormatError(text, "zero must be written as '0'")
    if math.gcd(p, d) != 1:
        raise RationalFormatError(text, "not in lowest terms")
    return fmpq(-p if sign else p, d)


def format_rational(x) -> str:
    return str(q(x))


def q(x) -> fmpq:
    """Coerce an exact scalar (int, Fraction, fmpq, canonical string) to ``fmpq``."""
    if isinstance(x, fmpq):
        return x
    if isinstance(x, (bool, np.bool_)):
        raise TypeError("booleans are not scalars")
    if isinstance(x, (int, np.integer, fmpz)):
        return fmpq(int(x))
    if isinstance(x, Fraction):
        return fmpq(x.numerator, x.denominator)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


_to_q = np.frompyfunc(q, 1, 1)


def qarray(data) -> np.ndarray:
    """Object array of ``fmpq`` built from nested sequences or another array."""
    a = np.asarray(data, dtype=object)
    if a.size == 0:
        return a.astype(object)
    out = _to_q(a)
    if not isinstance(out, np.ndarray):
        return np.asarray(out, dtype=object)
    return out.astype(object)


def zeros(*shape: int) -> np.ndarray:
    return np.full(shape, fmpq(0), dtype=object)


def eye(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = fmpq(1)
    return out


def is_zero(a) -> bool:
    a = np.asarray(a, dtype=object)
    return bool(np.all(a == 0)) if a.size else True


def _to_flint(m: np.ndarray) -> fmpq_mat:
    r, c = m.shape
    return fmpq_mat(r, c, [q(x) for x in m.flat])


def _from_flint(m: fmpq_mat) -> np.ndarray:
    r, c = m.nrows(), m.ncols()
    if r == 0 or c == 0:
        return zeros(r, c)
    return np.array(m.entries(), dtype=object).reshape(r, c)


def _as_matrix(m) -> np.ndarray:
    m = np.asarray(m, dtype=object)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {m.shape}")
    return m


def rref(m) -> tuple[np.ndarray, tuple[int, ...], int]:
    """Reduced row-echelon form, pivot columns and rank."""
    m = _as_matrix(m)
    if m.size == 0:
        return zeros(*m.shape), (), 0
    r_flint, rk = _to_flint(m).rref()
    r = _from_flint(r_flint)
    pivots = []
    for i in range(rk):
        row = r[i]
        pivots.append(next(j for j in range(r.shape[1]) if row[j] != 0))
    return r, tuple(pivots), rk


def rank(m) -> int:
    m = _as_matrix(m)
    if m.size == 0:
        return 0
    return _to_flint(m).rank()


def kernel(m) -> "Subspace":
    """Right kernel ``{x : m x = 0}`` as a canonical subspace of the column space."""
    m = _as_matrix(m)
    cols = m.shape[1]
    if m.shape[0] == 0:
        return Subspace.full(cols)
    r, pivots, rk = rref(m)
    free = [j for j in range(cols) if j not in pivots]
    vectors = zeros(len(free), cols)
    for row, f in enumerate(free):
        vectors[row, f] = fmpq(1)
        for i, p in enumerate(pivots):
            vectors[row, p] = -r[i, f]
    return Subspace.span(vectors, cols)


def solve(a, b) -> Optional[np.ndarray]:
    """Some ``x`` with ``a x = b``, or ``None`` when the system is inconsistent."""
    a = _as_matrix(a)
    b = np.asarray(b, dtype=object)
    if b.ndim != 1 or b.shape[0] != a.shape[0]:
        raise ValueError(f"shape mismatch: {a.shape} against right-hand side {b.shape}")
    cols = a.shape[1]
    aug = np.concatenate([a, b.reshape(-1, 1)], axis=1)
    r, pivots, _ = rref(aug)
    if cols in pivots:
        return None
    x = zeros(cols)
    for i, p in enumerate(pivots):
        x[p] = r[i, cols]
    return x


def invert(m) -> Optional[np.ndarray]:
    m = _as_matrix(m)
    if m.shape[0] != m.shape[1]:
        raise ValueError(f"cannot invert a non-square {m.shape} matrix")
    if m.shape[0] == 0:
        return zeros(0, 0)
    try:
        return _from_flint(_to_flint(m).inv())
    except ZeroDivisionError:
        return None


def column_space(m) -> "Subspace":
    m = _as_matrix(m)
    return Subspace.span(m.T, m.shape[0])


def stabilized_kernel(f) -> "Subspace":
    """``Ker f^k`` for the least ``k`` where the kernel chain stops growing."""
    f = _as_matrix(f)
    if f.shape[0] != f.shape[1]:
        raise ValueError("stabilized kernel needs a square map")
    current = kernel(f)
    power = f
    while True:
        power = power.dot(f)
        nxt = kernel(power)
        if nxt.dim == current.dim:
            return current
        current = nxt


def independent_subfamily(vectors) -> tuple[int, ...]:
    """Indices of the lexicographically first maximal independent subfamily of rows."""
    vectors = _as_matrix(vectors)
    if vectors.shape[0] == 0:
        return ()
    _, pivots, _ = rref(vectors.T)
    return pivots


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of ``Q^ambient_dim`` held as canonical RREF basis rows."""

    ambient_dim: int
    basis: np.ndarray

    @classmethod
    def span(cls, vectors, ambient_dim: Optional[int] = None) -> "Subspace":
        vectors = np.asarray(vectors, dtype=object)
        if vectors.ndim == 1:
            vectors = vectors.reshape(1, -1) if vectors.size else vectors.reshape(0, ambient_dim or 0)
        if ambient_dim is None:
            ambient_dim = vectors.shape[1]
        if vectors.shape[0] == 0:
            return cls.zero(ambient_dim)
        if vectors.shape[1] != ambient_dim:
            raise ValueError(f"vectors of length {vectors.shape[1]} in ambient dimension {ambient_dim}")
        r, _, rk = rref(vectors)
        return cls(ambient_dim, r[:rk].copy())

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(n, zeros(0, n))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, eye(n))

    @classmethod
    def coordinate(cls, n: int, indices: Iterable[int]) -> "Subspace":
        """Span of the standard basis vectors with the given indices."""
        idx = sorted(set(indices))
        vectors = zeros(len(idx), n)
        for row, i in enumerate(idx):
            vectors[row, i] = fmpq(1)
        return cls(n, vectors)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @cached_property
    def pivots(self) -> tuple[int, ...]:
        return tuple(next(j for j in range(self.ambient_dim) if row[j] != 0) for row in self.basis)

    def _check_ambient(self, other: "Subspace") -> None:
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(f"ambient dimension mismatch: {self.ambient_dim} vs {other.ambient_dim}")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return (
            self.ambient_dim == other.ambient_dim
            and self.basis.shape == other.basis.shape
            and is_zero(self.basis - other.basis)
        )

    __hash__ = None

    def __repr__(self) -> str:
        rows = ", ".join("(" + ", ".join(str(x) for x in row) + ")" for row in self.basis)
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, basis=[{rows}])"

    def coordinates(self, v) -> Optional[np.ndarray]:
        """Coordinates of ``v`` against the RREF basis, ``None`` if ``v`` lies outside."""
        v = np.asarray(v, dtype=object)
        c = v[list(self.pivots)] if self.dim else zeros(0)
        residual = v - (c.dot(self.basis) if self.dim else 0)
        return c if is_zero(residual) else None

    def contains_vector(self, v) -> bool:
        return self.coordinates(v) is not None

    def contains(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        return all(self.contains_vector(row) for row in other.basis)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        return Subspace.span(np.concatenate([self.basis, other.basis]), self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        self._check_ambient(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim)
        stacked = np.concatenate([self.basis, other.basis])
        rel = kernel(stacked.T)
        if rel.dim == 0:
            return Subspace.zero(self.ambient_dim)
        return Subspace.span(rel.basis[:, : self.dim].dot(self.basis), self.ambient_dim)

    def is_complement(self, other: "Subspace") -> bool:
        self._check_ambient(other)
        return self.dim + other.dim == self.ambient_dim and (self + other).dim == self.ambient_dim

    def image(self, f) -> "Subspace":
        """Image under the linear map with matrix ``f`` (acting on column vectors)."""
        f = _as_matrix(f)
        if f.shape[1] != self.ambient_dim:
            raise ValueError("map domain does not match the ambient space")
        if self.dim == 0:
            return Subspace.zero(f.shape[0])
        return Subspace.span(self.basis.dot(f.T), f.shape[0])

    def is_invariant(self, f) -> bool:
        return self.contains(self.image(f))


class Basis:
    """Coordinates against a fixed linearly independent family of row vectors."""

    def __init__(self, vectors, ambient_dim: Optional[int] = None):
        vectors = np.asarray(vectors, dtype=object)
        if vectors.ndim == 1 or vectors.shape[0] == 0:
            vectors = vectors.reshape(0, ambient_dim if ambient_dim is not None else vectors.shape[-1])
        self.vectors = vectors
        k, n = vectors.shape
        self.ambient_dim = n
        if k:
            r, pivots, rk = rref(np.concatenate([vectors, eye(k)], axis=1))
            if rk != k or any(p >= n for p in pivots):
                raise ValueError("basis vectors are linearly dependent")
            self._pivots = list(pivots)
            self._transform = r[:, n:]
        else:
            self._pivots = []
            self._transform = zeros(0, 0)

    def __len__(self) -> int:
        return self.vectors.shape[0]

    def coordinates(self, v, check: bool = True) -> np.ndarray:
        v = np.asarray(v, dtype=object)
        c = v[self._pivots].dot(self._transform) if len(self) else zeros(0)
        if check:
            back = c.dot(self.vectors) if len(self) else zeros(self.ambient_dim)
            if not is_zero(v - back):
                raise ValueError("vector does not lie in the span of the basis")
        return c

    def try_coordinates(self, v) -> Optional[np.ndarray]:
        try:
            return self.coordinates(v)
        except ValueError:
            return None

    def coordinate_matrix(self, rows, check: bool = True) -> np.ndarray:
        """Coordinates of every row of ``rows`` (one output row per input row)."""
        rows = np.asarray(rows, dtype=object)
        if not len(self):
            if check and not is_zero(rows):
                raise ValueError("vectors do not lie in the zero span")
            return zeros(rows.shape[0], 0)
        c = rows[:, self._pivots].dot(self._transform)
        if check and not is_zero(rows - c.dot(self.vectors)):
            raise ValueError("vectors do not lie in the span of the basis")
        return c

    @property
    def span(self) -> Subspace:
        return Subspace.span(self.vectors, self.ambient_dim)


def stack_rows(rows: Sequence, width: int) -> np.ndarray:
    """Stack 1-d vectors into a matrix, keeping the width for empty input."""
    if not len(rows):
        return zeros(0, width)
    return np.array([np.asarray(r, dtype=object) for r in rows], dtype=object).reshape(len(rows), width)


def matmul(a, b) -> np.ndarray:
    """Exact matrix product computed by FLINT."""
    a, b = _as_matrix(a), _as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"cannot multiply {a.shape} by {b.shape}")
    if a.size == 0 or b.size == 0:
        return zeros(a.shape[0], b.shape[1])
    return _from_flint(_to_flint(a) * _to_flint(b))


def einsum(subscripts: str, *operands) -> np.ndarray:
    """``numpy.einsum`` for exact arrays, with two-operand contractions done by FLINT.

    Only the two-operand case without batch indices takes the fast path;
    anything else falls back to numpy's object-dtype einsum.
    """
    if len(operands) != 2 or "..." in subscripts:
        return np.einsum(subscripts, *operands)
    lhs, out = subscripts.replace(" ", "").split("->")
    sa, sb = lhs.split(",")
    a, b = (np.asarray(x, dtype=object) for x in operands)
    if len(set(sa)) != len(sa) or len(set(sb)) != len(sb) or set(sa) & set(sb) & set(out):
        return np.einsum(subscripts, a, b)
    if any(c not in sa and c not in sb for c in out) or any(c not in out and c not in sb for c in sa) \
            or any(c not in out and c not in sa for c in sb):
        return np.einsum(subscripts, a, b)
    shared = [c for c in sa if c in sb]
    free_a = [c for c in sa if c not in sb]
    free_b = [c for c in sb if c not in sa]
    size = {}
    for s, arr in ((sa, a), (sb, b)):
        for c, d in zip(s, arr.shape):
            if size.setdefault(c, d) != d:
                raise ValueError(f"index {c!r} has inconsistent sizes")
    at = a.transpose([sa.index(c) for c in free_a + shared])
    bt = b.transpose([sb.index(c) for c in shared + free_b])
    ra = math.prod(size[c] for c in free_a)
    rk = math.prod(size[c] for c in shared)
    rb = math.prod(size[c] for c in free_b)
    prod = matmul(at.reshape(ra, rk), bt.reshape(rk, rb))
    prod = prod.reshape([size[c] for c in free_a + free_b])
    order = free_a + free_b
    return prod.transpose([order.index(c) for c in out])
