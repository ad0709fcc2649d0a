"""Representations of Lie-Yamaguti algebras and infinitesimal s-manifolds."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .. import exactlin as xl
from ..checks import CheckReport
from ..errors import ShapeError, ValidationError
from ..exactlin import Basis, Subspace, einsum
from ..lyalg import (
    InfSManifold,
    LieYamagutiAlgebra,
    LYHom,
    check_hom,
    is_abelian_ideal,
    is_subalgebra,
)


def delta_default(T: LieYamagutiAlgebra, rho, theta) -> np.ndarray:
    """delta(x,y) = [rho x, rho y] - rho(x*y) - theta(x,y) + theta(y,x)."""
    rho, theta = xl.qarray(rho), xl.qarray(theta)
    rr = einsum("xab,ybc->xyac", rho, rho)
    return (
        rr - rr.transpose(1, 0, 2, 3)
        - einsum("xyk,kab->xyab", T.binary, rho)
        - theta + theta.transpose(1, 0, 2, 3)
    )


@dataclass(frozen=True, eq=False)
class LYRep:
    """(V, rho, theta, delta): rho[x], theta[x, y], delta[x, y] are v_dim x v_dim matrices."""

    algebra: LieYamagutiAlgebra
    rho: np.ndarray
    theta: np.ndarray
    delta: np.ndarray = None

    def __post_init__(self):
        n = self.algebra.dim
        rho = xl.qarray(self.rho)
        if rho.size == 0:
            m = rho.shape[-1] if rho.ndim == 3 else 0
            rho = xl.zeros(n, m, m)
        m = rho.shape[1]
        theta = xl.qarray(self.theta) if np.asarray(self.theta).size else xl.zeros(n, n, m, m)
        if rho.shape != (n, m, m) or theta.shape != (n, n, m, m):
            raise ShapeError(f"rho {rho.shape} / theta {theta.shape} do not fit dim {n}")
        if self.delta is None:
            delta = delta_default(self.algebra, rho, theta)
        else:
            delta = xl.qarray(self.delta) if np.asarray(self.delta).size else xl.zeros(n, n, m, m)
            if delta.shape != (n, n, m, m):
                raise ShapeError(f"delta {delta.shape} does not fit")
        object.__setattr__(self, "rho", rho)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "delta", delta)

    @property
    def v_dim(self) -> int:
        return self.rho.shape[1]

    @cached_property
    def report(self) -> CheckReport:
        return check_rly(self)

    def require_valid(self) -> "LYRep":
        self.algebra.require_valid()
        self.report.require("representation")
        return self

    def same_data(self, other: "LYRep") -> bool:
        return (
            self.v_dim == other.v_dim
            and self.algebra.same_structure(other.algebra)
            and xl.is_zero(self.rho - other.rho)
            and xl.is_zero(self.theta - other.theta)
            and xl.is_zero(self.delta - other.delta)
        )


def check_rly(r: LYRep) -> CheckReport:
    b, t = r.algebra.binary, r.algebra.ternary
    rho, th, de = r.rho, r.theta, r.delta
    rep = CheckReport()
    rep.add_residual("RLY1", de - delta_default(r.algebra, rho, th), 2,
                     "delta + theta(x,y) - theta(y,x) = [rho x, rho y] - rho(x*y)")
    rly2 = (
        einsum("yzk,xkab->xyzab", b, th)
        - einsum("yac,xzcb->xyzab", rho, th)
        + einsum("zac,xycb->xyzab", rho, th)
    )
    rep.add_residual("RLY2", rly2, 3, "theta(x,y*z) - rho(y)theta(x,z) + rho(z)theta(x,y) = 0")
    rly3 = (
        einsum("xyk,kzab->xyzab", b, th)
        - einsum("xzac,ycb->xyzab", th, rho)
        + einsum("yzac,xcb->xyzab", th, rho)
    )
    rep.add_residual("RLY3", rly3, 3, "theta(x*y,z) - theta(x,z)rho(y) + theta(y,z)rho(x) = 0")
    rly4 = (
        einsum("zwac,xycb->xyzwab", th, th)
        - einsum("ywac,xzcb->xyzwab", th, th)
        - einsum("yzwk,xkab->xyzwab", t, th)
        + einsum("yzac,xwcb->xyzwab", de, th)
    )
    rep.add_residual("RLY4", rly4, 4,
                     "theta(z,w)theta(x,y) - theta(y,w)theta(x,z) - theta(x,[y,z,w]) + delta(y,z)theta(x,w) = 0")
    rly5 = (
        einsum("xyac,zcb->xyzab", de, rho)
        - einsum("zac,xycb->xyzab", rho, de)
        - einsum("xyzk,kab->xyzab", t, rho)
    )
    rep.add_residual("RLY5", rly5, 3, "[delta(x,y), rho(z)] = rho([x,y,z])")
    rly6 = (
        einsum("xyac,zwcb->xyzwab", de, th)
        - einsum("zwac,xycb->xyzwab", th, de)
        - einsum("xyzk,kwab->xyzwab", t, th)
        - einsum("xywk,zkab->xyzwab", t, th)
    )
    rep.add_residual("RLY6", rly6, 4, "[delta(x,y), theta(z,w)] = theta([x,y,z],w) + theta(z,[x,y,w])")
    return rep


@dataclass(frozen=True, eq=False)
class Extension:
    algebra: LieYamagutiAlgebra
    pi: LYHom
    iota: LYHom
    n: int
    v_dim: int


def extension_algebra(r: LYRep) -> Extension:
    """T + V with the semidirect products built from (rho, theta, delta)."""
    r.require_valid()
    T = r.algebra
    n, m = T.dim, r.v_dim
    N = n + m
    b = xl.zeros(N, N, N)
    t = xl.zeros(N, N, N, N)
    b[:n, :n, :n] = T.binary
    t[:n, :n, :n, :n] = T.ternary
    rhoT = r.rho.transpose(0, 2, 1)  # [i, a, c] = rho_i[c, a]
    b[:n, n:, n:] = rhoT
    b[n:, :n, n:] = -rhoT.transpose(1, 0, 2)
    thT = r.theta.transpose(0, 1, 3, 2)  # [j, k, a, c] = theta(j,k)[c, a]
    t[n:, :n, :n, n:] = thT.transpose(2, 0, 1, 3)
    t[:n, n:, :n, n:] = -thT.transpose(0, 2, 1, 3)
    t[:n, :n, n:, n:] = r.delta.transpose(0, 1, 3, 2)
    label = f"{T.label}+V{m}" if T.label else None
    Tt = LieYamagutiAlgebra(b, t, label)
    eye = xl.eye(N)
    pi = LYHom(Tt, T, eye[:n])
    iota = LYHom(T, Tt, eye[:, :n])
    ext = Extension(Tt, pi, iota, n, m)
    return ext


def check_extension(ext: Extension) -> CheckReport:
    """Axioms of T + V plus the structural claims about it."""
    n, N = ext.n, ext.algebra.dim
    rep = CheckReport()
    rep.extend(ext.algebra.axiom_report)
    rep.add("T+0 subalgebra", is_subalgebra(ext.algebra, Subspace.coordinate(N, range(n))).ok)
    rep.add("0+V abelian ideal", is_abelian_ideal(ext.algebra, Subspace.coordinate(N, range(n, N))).ok)
    rep.add("pi homomorphism", check_hom(ext.pi).ok)
    rep.add("iota homomorphism", check_hom(ext.iota).ok)
    rep.add("pi iota = id", xl.is_zero(ext.pi.map.dot(ext.iota.map) - xl.eye(n)))
    return rep


def rep_from_extension(Tt: LieYamagutiAlgebra, U: Subspace, complement: Subspace) -> LYRep:
    """Read (rho, theta, delta) off an algebra split as subalgebra + abelian ideal.

    The algebra on the complement is written in the RREF basis of
    ``complement`` and V in the RREF basis of ``U``.
    """
    N = Tt.dim
    rep = CheckReport()
    rep.add("direct sum", complement.is_complement(U))
    sub = is_subalgebra(Tt, complement)
    rep.add("complement subalgebra", sub.ok, sub.failures[0].witness if not sub.ok else None)
    ab = is_abelian_ideal(Tt, U)
    rep.add("U abelian ideal", ab.ok, ab.failures[0].witness if not ab.ok else None)
    rep.require("extension data")
    C, B = complement.basis, U.basis
    n, m = C.shape[0], B.shape[0]
    full = Basis(np.concatenate([C, B]), N)

    def coords(vectors, lead_shape):
        c = full.coordinate_matrix(vectors.reshape(-1, N))
        return c.reshape(lead_shape + (N,))

    prod = lambda X, Y: einsum("bj,ajk->abk", Y, einsum("ai,ijk->ajk", X, Tt.binary))

    def trip(X, Y, Z):
        out = einsum("ai,ijkl->ajkl", X, Tt.ternary)
        out = einsum("bj,ajkl->abkl", Y, out)
        return einsum("ck,abkl->abcl", Z, out)

    cc = coords(prod(C, C), (n, n))
    ccc = coords(trip(C, C, C), (n, n, n))
    T = LieYamagutiAlgebra(cc[..., :n], ccc[..., :n])
    rho = coords(prod(C, B), (n, m))[..., n:]  # [i, a, c] = rho_i[c, a]
    theta = coords(trip(B, C, C), (m, n, n))[..., n:]  # [a, x, y, c] = theta(x,y)[c, a]
    delta = coords(trip(C, C, B), (n, n, m))[..., n:]  # [x, y, a, c]
    return LYRep(
        T,
        rho.transpose(0, 2, 1),
        theta.transpose(1, 2, 3, 0),
        delta.transpose(0, 1, 3, 2),
    )


@dataclass(frozen=True, eq=False)
class ISMRep:
    rep: LYRep
    psi: np.ndarray

    def __post_init__(self):
        p = xl.qarray(self.psi) if np.asarray(self.psi).size else xl.zeros(0, 0)
        m = self.rep.v_dim
        if p.shape != (m, m):
            raise ShapeError(f"psi must be {m}x{m}")
        object.__setattr__(self, "psi", p)

    @property
    def regular(self) -> bool:
        return xl.invert(xl.eye(self.rep.v_dim) - self.psi) is not None


def check_rism(ir: ISMRep, S: InfSManifold) -> CheckReport:
    r = ir.rep
    if not S.algebra.same_structure(r.algebra):
        raise ShapeError("representation and s-manifold have different algebras")
    rep = CheckReport()
    psi = ir.psi
    psi_inv = xl.invert(psi)
    rep.add("psi invertible", psi_inv is not None)
    if psi_inv is None:
        raise ValidationError("psi is singular", report=rep)
    s = S.sigma
    rho_s = einsum("ax,auv->xuv", s, r.rho)
    res = einsum("xuv,vw->xuw", rho_s, psi) - einsum("uv,xvw->xuw", psi, r.rho)
    rep.add_residual("RISM1", res, 1, "rho(sigma x) = psi rho(x) psi^-1")
    th_y = einsum("by,xbuv->xyuv", s, r.theta)
    res_a = th_y - einsum("uv,xyvw->xyuw", psi, r.theta)
    th_x = einsum("ax,ayuv->xyuv", s, r.theta)
    res_b = einsum("xyuv,vw->xyuw", th_x, psi) - r.theta
    rep.add_residual("RISM2", np.concatenate([res_a, res_b], axis=-1), 2,
                     "theta(x, sigma y) = psi theta(x,y), theta(sigma x, y) = theta(x,y) psi^-1")
    res = einsum("xyuv,vw->xyuw", r.delta, psi) - einsum("uv,xyvw->xyuw", psi, r.delta)
    rep.add_residual("RISM3", res, 2, "delta(x,y) = psi delta(x,y) psi^-1")
    rep.info["regular"] = ir.regular
    return rep


def sub_rep(r: LYRep, W: Subspace) -> LYRep:
    """Subrepresentation on an invariant subspace W of V (RREF basis of W)."""
    B = Basis(W.basis, r.v_dim)

    def restrict(ops):
        lead = ops.shape[:-2]
        flat = ops.reshape((-1,) + ops.shape[-2:])
        out = [B.coordinate_matrix(W.basis.dot(o.T)).T for o in flat]
        return np.array(out, dtype=object).reshape(lead + (W.dim, W.dim)) if out else xl.zeros(*lead, W.dim, W.dim)

    return LYRep(r.algebra, restrict(r.rho), restrict(r.theta), restrict(r.delta))


def quotient_rep(r: LYRep, W: Subspace) -> LYRep:
    """Quotient V/W, with basis the standard vectors outside the pivots of W."""
    m = r.v_dim
    comp = [j for j in range(m) if j not in W.pivots]
    C = xl.eye(m)[comp]
    full = Basis(np.concatenate([W.basis, C]), m)
    k = W.dim

    def push(ops):
        lead = ops.shape[:-2]
        flat = ops.reshape((-1,) + ops.shape[-2:])
        out = [full.coordinate_matrix(C.dot(o.T))[:, k:].T for o in flat]
        q = len(comp)
        return np.array(out, dtype=object).reshape(lead + (q, q)) if out else xl.zeros(*lead, q, q)

    return LYRep(r.algebra, push(r.rho), push(r.theta), push(r.delta))


def is_invariant_subspace(r: LYRep, W: Subspace) -> bool:
    ops = np.concatenate([
        r.rho.reshape(-1, r.v_dim, r.v_dim),
        r.theta.reshape(-1, r.v_dim, r.v_dim),
        r.delta.reshape(-1, r.v_dim, r.v_dim),
    ])
    return all(W.is_invariant(o) for o in ops)
