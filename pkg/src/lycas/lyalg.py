"""Lie-Yamaguti algebras as structure-constant tensors.

Conventions: ``e_i * e_j = sum_k binary[i, j, k] e_k`` and
``[e_i, e_j, e_k] = sum_l ternary[i, j, k, l] e_l``.  Linear maps are matrices
acting on column vectors, so the inner derivation ``D_{e_i, e_j}`` has matrix
``ternary[i, j].T``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from . import exactlin as xl
from .checks import CheckReport
from .errors import PreconditionError, ShapeError, ValidationError
from .exactlin import Basis, Subspace, einsum


def _cyclic3(a: np.ndarray, axes: str) -> np.ndarray:
    """Sum of ``a`` over cyclic permutations of its first three axes."""
    rest = axes[3:]
    return (
        a
        + np.einsum(f"yzx{rest}->xyz{rest}", a)
        + np.einsum(f"zxy{rest}->xyz{rest}", a)
    )


@dataclass(frozen=True, eq=False)
class LieYamagutiAlgebra:
    binary: np.ndarray
    ternary: np.ndarray
    label: Optional[str] = None

    def __post_init__(self):
        b = xl.qarray(self.binary)
        t = xl.qarray(self.ternary)
        n = b.shape[0] if b.ndim else 0
        if b.shape != (n, n, n) or t.shape != (n, n, n, n):
            raise ShapeError(f"structure tensors of shapes {b.shape} and {t.shape} do not match")
        object.__setattr__(self, "binary", b)
        object.__setattr__(self, "ternary", t)

    @classmethod
    def zero(cls, n: int, label: Optional[str] = None) -> "LieYamagutiAlgebra":
        return cls(xl.zeros(n, n, n), xl.zeros(n, n, n, n), label)

    @property
    def dim(self) -> int:
        return self.binary.shape[0]

    def product(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.binary)

    def triple(self, x, y, z) -> np.ndarray:
        return np.einsum("i,j,k,ijkl->l", x, y, z, self.ternary)

    def d_matrix(self, i: int, j: int) -> np.ndarray:
        return self.ternary[i, j].T.copy()

    @cached_property
    def axiom_report(self) -> CheckReport:
        return check_ly_axioms(self)

    @property
    def validated(self) -> bool:
        return self.axiom_report.ok

    def require_valid(self) -> "LieYamagutiAlgebra":
        self.axiom_report.require(f"Lie-Yamaguti algebra {self.label or ''}".strip())
        return self

    @cached_property
    def inner_derivations(self) -> "InnerDerivations":
        return inner_derivation_space(self)

    def same_structure(self, other: "LieYamagutiAlgebra") -> bool:
        return (
            self.dim == other.dim
            and xl.is_zero(self.binary - other.binary)
            and xl.is_zero(self.ternary - other.ternary)
        )


def check_ly_axioms(T: LieYamagutiAlgebra) -> CheckReport:
    """LY1-LY6 on all basis tuples; each entry records the first failing tuple."""
    b, t = T.binary, T.ternary
    rep = CheckReport()
    rep.add_residual("LY1", b + b.transpose(1, 0, 2), 2, "x*x = 0")
    rep.add_residual("LY2", t + t.transpose(1, 0, 2, 3), 2, "[x,x,y] = 0")
    s = t + einsum("xyk,kzl->xyzl", b, b)
    rep.add_residual("LY3", _cyclic3(s, "xyzl"), 3, "cyclic [x,y,z] + (x*y)*z")
    a = einsum("xyk,kzwl->xyzwl", b, t)
    rep.add_residual("LY4", _cyclic3(a, "xyzwl"), 4, "cyclic [x*y,z,w]")
    ly5 = (
        einsum("zwk,xykl->xyzwl", b, t)
        - einsum("xyzk,kwl->xyzwl", t, b)
        - einsum("xywk,zkl->xyzwl", t, b)
    )
    rep.add_residual("LY5", ly5, 4, "[x,y,z*w] = [x,y,z]*w + z*[x,y,w]")
    ly6 = (
        einsum("zvwk,xykl->xyzvwl", t, t)
        - einsum("xyzk,kvwl->xyzvwl", t, t)
        - einsum("xyvk,zkwl->xyzvwl", t, t)
        - einsum("xywk,zvkl->xyzvwl", t, t)
    )
    rep.add_residual("LY6", ly6, 5, "D_{x,y} derives the triple product")
    return rep


def d_map(T: LieYamagutiAlgebra, x, y) -> np.ndarray:
    """Matrix of ``z -> [x, y, z]``."""
    return np.einsum("i,j,ijkl->lk", xl.qarray(x), xl.qarray(y), T.ternary)


@dataclass(frozen=True, eq=False)
class InnerDerivations:
    """The span D(T) of the maps D_{e_i,e_j} (i < j) with its generating data.

    ``family`` has one flattened matrix per pair; ``basis_pairs`` index the
    lexicographically first independent subfamily, which is the basis used for
    D(T) inside enveloping algebras.  ``relations`` is the kernel of the map
    from formal pair combinations to End(T).
    """

    n: int
    pairs: tuple
    family: np.ndarray
    basis_pairs: tuple
    span: Subspace
    relations: Subspace

    @property
    def dim(self) -> int:
        return len(self.basis_pairs)

    @cached_property
    def basis_matrices(self) -> np.ndarray:
        n = self.n
        return self.family[list(self.basis_pairs)].reshape(len(self.basis_pairs), n, n)

    @cached_property
    def _coords(self) -> Basis:
        return Basis(self.family[list(self.basis_pairs)], self.n * self.n)

    def coordinates(self, ops) -> np.ndarray:
        """Coordinates of endomorphisms (shape (..., n, n)) in the chosen basis of D(T)."""
        ops = np.asarray(ops, dtype=object)
        lead = ops.shape[:-2]
        flat = ops.reshape(-1, self.n * self.n)
        c = self._coords.coordinate_matrix(flat)
        return c.reshape(lead + (self.dim,))

    def pair_index(self, i: int, j: int) -> int:
        return self.pairs.index((i, j))


def derivation_family(ops: np.ndarray):
    """Shared bookkeeping for a family of operators indexed by pairs i < j.

    ``ops`` has shape (n, n, a, a): ops[i, j] is the operator attached to the
    pair.  Returns the pair list, the flattened family, its independent
    subfamily, span and relation kernel.
    """
    n = ops.shape[0]
    size = ops.shape[2] * ops.shape[3]
    pairs = tuple((i, j) for i in range(n) for j in range(i + 1, n))
    family = xl.stack_rows([ops[i, j].reshape(-1) for i, j in pairs], size)
    basis_pairs = xl.independent_subfamily(family)
    span = Subspace.span(family, size)
    relations = xl.kernel(family.T) if pairs else Subspace.zero(0)
    return pairs, family, basis_pairs, span, relations


def inner_derivation_space(T: LieYamagutiAlgebra) -> InnerDerivations:
    n = T.dim
    ops = T.ternary.transpose(0, 1, 3, 2)
    pairs, family, basis_pairs, span, relations = derivation_family(ops)
    return InnerDerivations(n, pairs, family, basis_pairs, span, relations)


def d_sub(T: LieYamagutiAlgebra, V: Subspace, W: Subspace) -> Subspace:
    """Span of D_{x,y} for x in V and y in W, inside End(T) flattened."""
    n = T.dim
    if V.ambient_dim != n or W.ambient_dim != n:
        raise ShapeError("subspaces must live in the algebra")
    ops = einsum("ai,ijkl->ajlk", V.basis, T.ternary)
    ops = einsum("bj,ajlk->ablk", W.basis, ops)
    return Subspace.span(ops.reshape(-1, n * n), n * n)


def triple_product_span(T: LieYamagutiAlgebra) -> Subspace:
    n = T.dim
    return Subspace.span(T.ternary.reshape(-1, n), n)


def _products(T: LieYamagutiAlgebra, U: Subspace):
    # U-basis rows multiplied against standard basis vectors
    b, t = T.binary, T.ternary
    ut = einsum("ai,ijk->ajk", U.basis, b)
    ttt = einsum("ai,ijkl->ajkl", U.basis, t)
    return ut, ttt


def _outside(U: Subspace, vectors: np.ndarray, lead: int) -> Optional[tuple]:
    flat = vectors.reshape(-1, U.ambient_dim)
    shape = vectors.shape[:lead]
    for idx, v in enumerate(flat):
        if not U.contains_vector(v):
            return tuple(int(i) for i in np.unravel_index(idx, shape))
    return None


def is_subalgebra(T: LieYamagutiAlgebra, U: Subspace) -> CheckReport:
    if U.ambient_dim != T.dim:
        raise ShapeError("subspace must live in the algebra")
    B = U.basis
    prod = einsum("bj,ajk->abk", B, einsum("ai,ijk->ajk", B, T.binary))
    trip = einsum("ai,ijkl->ajkl", B, T.ternary)
    trip = einsum("bj,ajkl->abkl", B, trip)
    trip = einsum("ck,abkl->abcl", B, trip)
    rep = CheckReport()
    w = _outside(U, prod, 2)
    rep.add("closed under *", w is None, w)
    w = _outside(U, trip, 3)
    rep.add("closed under [,,]", w is None, w)
    return rep


def is_ideal(T: LieYamagutiAlgebra, U: Subspace) -> CheckReport:
    """U*T in U and [U,T,T] in U; witnesses index (U-basis, standard basis...)."""
    if U.ambient_dim != T.dim:
        raise ShapeError("subspace must live in the algebra")
    ut, utt = _products(T, U)
    rep = CheckReport()
    w = _outside(U, ut, 2)
    rep.add("U*T in U", w is None, w)
    w = _outside(U, utt, 3)
    rep.add("[U,T,T] in U", w is None, w)
    return rep


def is_abelian_ideal(T: LieYamagutiAlgebra, U: Subspace) -> CheckReport:
    rep = is_ideal(T, U)
    B = U.basis
    uu = einsum("bj,ajk->abk", B, einsum("ai,ijk->ajk", B, T.binary))
    rep.add_residual("U*U = 0", uu, 2)
    tuu = einsum("aj,ijkl->iakl", B, T.ternary)
    tuu = einsum("bk,iakl->iabl", B, tuu)
    rep.add_residual("[T,U,U] = 0", tuu, 3)
    return rep


@dataclass(frozen=True, eq=False)
class LYHom:
    source: LieYamagutiAlgebra
    target: LieYamagutiAlgebra
    map: np.ndarray

    def __post_init__(self):
        f = xl.qarray(self.map)
        if f.shape != (self.target.dim, self.source.dim):
            raise ShapeError(f"map of shape {f.shape} between dims {self.source.dim} -> {self.target.dim}")
        object.__setattr__(self, "map", f)


def check_hom(h: LYHom) -> CheckReport:
    f = h.map
    s, t = h.source, h.target
    rep = CheckReport()
    lhs = einsum("ijk,lk->ijl", s.binary, f)
    rhs = einsum("bj,ibl->ijl", f, einsum("ai,abl->ibl", f, t.binary))
    rep.add_residual("f(x*y) = f(x)*f(y)", lhs - rhs, 2)
    lhs = einsum("ijkm,lm->ijkl", s.ternary, f)
    rhs = einsum("ai,abcl->ibcl", f, t.ternary)
    rhs = einsum("bj,ibcl->ijcl", f, rhs)
    rhs = einsum("ck,ijcl->ijkl", f, rhs)
    rep.add_residual("f[x,y,z] = [fx,fy,fz]", lhs - rhs, 3)
    return rep


@dataclass(frozen=True, eq=False)
class InfSManifold:
    algebra: LieYamagutiAlgebra
    sigma: np.ndarray

    def __post_init__(self):
        s = xl.qarray(self.sigma)
        n = self.algebra.dim
        if s.shape != (n, n):
            raise ShapeError(f"sigma must be {n}x{n}, got {s.shape}")
        object.__setattr__(self, "sigma", s)

    @cached_property
    def report(self) -> CheckReport:
        return check_ism(self)


def check_ism(S: InfSManifold) -> CheckReport:
    T, s = S.algebra, S.sigma
    n = T.dim
    rep = CheckReport()
    inv_s = xl.invert(s)
    inv_1s = xl.invert(xl.eye(n) - s)
    rep.add("ISM0", inv_s is not None and inv_1s is not None,
            detail="sigma and id - sigma invertible")
    # sigma applied to products versus products of sigma-images
    b_s = einsum("ijk,lk->ijl", T.binary, s)
    sb = einsum("bj,ibl->ijl", s, einsum("ai,abl->ibl", s, T.binary))
    rep.add_residual("ISM1", b_s - sb, 2, "sigma(x*y) = sigma x * sigma y")
    t_s = einsum("ijkm,lm->ijkl", T.ternary, s)
    st = einsum("ai,abcl->ibcl", s, T.ternary)
    st = einsum("bj,ibcl->ijcl", s, st)
    st = einsum("ck,ijcl->ijkl", s, st)
    rep.add_residual("ISM2", t_s - st, 3, "sigma[x,y,z] = [sigma x, sigma y, sigma z]")
    tz = einsum("ck,ijcl->ijkl", s, T.ternary)
    rep.add_residual("ISM3", t_s - tz, 3, "sigma[x,y,z] = [x,y,sigma z]")
    return rep


def induced_L_pi(pi: LYHom):
    """The Lie homomorphism L(pi): L(source) -> L(target) of a surjective LY map.

    Returns ``(matrix, source_envelope, target_envelope)`` where the matrix is
    written in the enveloping bases (algebra basis followed by the D-basis).
    """
    from .liealg import check_lie_hom, enveloping

    f = pi.map
    src, tgt = pi.source, pi.target
    if xl.rank(f) != tgt.dim:
        raise PreconditionError("L(pi) needs a surjective homomorphism")
    hom = check_hom(pi)
    if not hom.ok:
        raise ValidationError("map is not a homomorphism", report=hom)
    env_s, env_t = enveloping(src), enveloping(tgt)
    ds, dt = src.inner_derivations, tgt.inner_derivations
    n, nt = src.dim, tgt.dim
    # D_{pi e_a, pi e_b} for every pair of the source, as target endomorphisms
    ops = einsum("ai,ijkl->ajkl", f.T, tgt.ternary)
    ops = einsum("bj,ajkl->abkl", f.T, ops).transpose(0, 1, 3, 2)
    pair_images = xl.stack_rows([ops[i, j].reshape(-1) for i, j in ds.pairs], nt * nt)
    if ds.relations.dim:
        leak = einsum("ra,ak->rk", ds.relations.basis, pair_images)
        if not xl.is_zero(leak):
            raise ValidationError("L(pi) is not well defined on D(source)")
    d_block = dt.coordinates(pair_images[list(ds.basis_pairs)].reshape(-1, nt, nt)).T if ds.dim else xl.zeros(dt.dim, 0)
    mat = xl.zeros(nt + dt.dim, n + ds.dim)
    mat[:nt, :n] = f
    mat[nt:, n:] = d_block
    check_lie_hom(env_s.g, env_t.g, mat).require("L(pi)")
    return mat, env_s, env_t
