"""The functors between triple representations and LY representations.

``functor_rly`` takes a triple representation to a representation of the
induced LY algebra on M_n; ``functor_rrt`` goes back to a representation of
(L(T), T, D(T)) on V + D_{T~}(T, V), where D_{T~}(T, V) is realised inside
Hom(T, V) through theta_2(x, v)(y) = theta(x, y) v.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .. import exactlin as xl
from ..checks import CheckReport
from ..errors import NotTightError, PreconditionError
from ..exactlin import Basis, einsum
from ..liealg import (
    LocalRegularSPair,
    canonical_hom,
    enveloping,
    induced_L_sigma,
    restrict_map,
)
from ..lyalg import InfSManifold
from .lyrep import ISMRep, LYRep, check_rism
from .tightness import is_tight
from .triplerep import SPairRep, TripleRep, check_spair_rep


def functor_rly(tr: TripleRep) -> LYRep:
    """rho(x) m = (x m)_n, theta(x,y) m = y (x m)_s, delta(x,y) m = [x,y]_h m."""
    tr.require_valid()
    rt = tr.triple
    T = rt.induced
    k, p = tr.n_dim, rt.m_dim
    Am = tr.m_action
    rho = Am[:, :k, :k].copy()
    theta = einsum("yuc,xcv->xyuv", Am[:, :k, k:], Am[:, k:, :k])
    hcoef = rt.adapted_bracket[:p, :p, p:]
    delta = einsum("xyc,cuv->xyuv", hcoef, tr.h_action[:, :k, :k])
    return LYRep(T, rho, theta, delta)


def theta2_family(r: LYRep) -> np.ndarray:
    """theta_2(e_i, v_j) as flattened v_dim x n matrices, one row per (i, j) in lex order."""
    n, m = r.algebra.dim, r.v_dim
    # theta_2(e_i, v_j)[u, y] = theta(e_i, e_y)[u, j]
    fam = r.theta.transpose(0, 3, 2, 1)  # [i, j, u, y]
    return fam.reshape(n * m, m * n)


@dataclass(frozen=True, eq=False)
class RRTResult:
    rep: TripleRep
    s_basis: np.ndarray  # rows: basis of D_{T~}(T, V) inside Hom(T, V), flattened (v_dim x n)
    s_pairs: tuple  # (i, j) indices of theta_2(e_i, v_j) chosen as basis


def functor_rrt_full(r: LYRep) -> RRTResult:
    r.require_valid()
    t = is_tight(r)
    if not t:
        raise NotTightError("representation is not tight", witness=t.witness)
    T = r.algebra
    n, m = T.dim, r.v_dim
    env = enveloping(T)
    fam = theta2_family(r)
    chosen = xl.independent_subfamily(fam)
    S = fam[list(chosen)] if chosen else xl.zeros(0, m * n)
    s = S.shape[0]
    coords = Basis(S, m * n)
    F = S.reshape(s, m, n)  # basis elements as matrices
    p = m + s
    d = env.d_dim
    A = xl.zeros(n + d, p, p)
    # (x) . (v) = (rho(x) v, -theta_2(x, v)) ; (x) . f = (-f(x), 0)
    A[:n, :m, :m] = r.rho
    if s:
        A[:n, m:, :m] = -coords.coordinate_matrix(fam).reshape(n, m, s).transpose(0, 2, 1)
        A[:n, :m, m:] = -F.transpose(2, 1, 0)
    # D_{xy} . v = (delta(x,y) v, 0) ; D_{xy} . f = (0, delta(x,y) f - f D_{xy})
    for a, pair in enumerate(env.basis_pairs):
        i, j = env.pairs[pair]
        A[n + a, :m, :m] = r.delta[i, j]
        if s:
            Dxy = env.ops[a][:n, :n]
            imgs = einsum("uv,svy->suy", r.delta[i, j], F) - einsum("suy,yz->suz", F, Dxy)
            A[n + a, m:, m:] = coords.coordinate_matrix(imgs.reshape(s, m * n)).T
    out = TripleRep(env.triple, m, A)
    return RRTResult(out, S, tuple((c // m, c % m) for c in chosen))


def functor_rrt(r: LYRep) -> TripleRep:
    return functor_rrt_full(r).rep


@dataclass(frozen=True, eq=False)
class AlphaResult:
    ok: bool
    rho_equal: bool
    theta_equal: bool
    delta_equal: bool
    algebra_equal: bool
    image: LYRep


def roundtrip_alpha(r: LYRep) -> AlphaResult:
    back = functor_rly(functor_rrt(r))
    alg = back.algebra.same_structure(r.algebra)
    re_ = xl.is_zero(back.rho - r.rho)
    te = xl.is_zero(back.theta - r.theta)
    de = xl.is_zero(back.delta - r.delta)
    return AlphaResult(alg and re_ and te and de, re_, te, de, alg, back)


@dataclass(frozen=True, eq=False)
class BetaResult:
    ok: bool
    beta: np.ndarray
    bijective: bool
    intertwining: bool
    identity_on_n: bool
    target: TripleRep
    report: CheckReport


def _beta_matrix(tr: TripleRep, rrt: RRTResult) -> Optional[np.ndarray]:
    k = tr.n_dim
    n = tr.triple.m_dim
    s_new = rrt.s_basis.shape[0]
    beta = xl.zeros(k + s_new, tr.dim)
    beta[:k, :k] = xl.eye(k)
    if tr.s_dim:
        # s -> (x -> -(x s)_n) as a k x n matrix
        homs = -tr.m_action[:, :k, k:].transpose(2, 1, 0)  # [s, u, x]
        flat = homs.reshape(tr.s_dim, k * n)
        if s_new == 0:
            return None
        try:
            beta[k:, k:] = Basis(rrt.s_basis, k * n).coordinate_matrix(flat).T
        except ValueError:
            return None
    return beta


def roundtrip_beta(tr: TripleRep, psi_tilde: Optional[np.ndarray] = None,
                   psi_tilde_target: Optional[np.ndarray] = None) -> BetaResult:
    """The canonical map M -> RRT(RLY(M)): identity on M_n and s -> (x -> -(x s)) on M_s."""
    tr.require_valid()
    if not (tr.effective and tr.minimal):
        raise PreconditionError("roundtrip_beta needs an effective and minimal representation")
    ch = canonical_hom(tr.triple)
    if not ch.isomorphism:
        raise PreconditionError("the triple is not isomorphic to its enveloping triple")
    r = functor_rly(tr)
    rrt = functor_rrt_full(r)
    target = rrt.rep
    rep = CheckReport()
    beta = _beta_matrix(tr, rrt)
    if beta is None:
        rep.add("beta lands in D(T, M_n)", False)
        return BetaResult(False, xl.zeros(0, 0), False, False, False, target, rep)
    bij = beta.shape[0] == beta.shape[1] and xl.invert(beta) is not None
    rep.add("beta bijective", bij)
    # beta(x . w) = F(x) . beta(w) for every basis vector x of g
    Ax = einsum("ai,auv->iuv", ch.matrix, target.action)
    res = einsum("iuv,vw->iuw", Ax, beta) - einsum("uv,ivw->iuw", beta, tr.action)
    rep.add_residual("beta intertwines", res, 1)
    ident = xl.is_zero(beta[:tr.n_dim, :tr.n_dim] - xl.eye(tr.n_dim))
    rep.add("identity on M_n", ident)
    if psi_tilde is not None and psi_tilde_target is not None:
        res = psi_tilde_target.dot(beta) - beta.dot(psi_tilde)
        rep.add_residual("beta intertwines psi_tilde", res, 1)
    inter = rep["beta intertwines"].ok
    return BetaResult(rep.ok, beta, bij, inter, ident, target, rep)


def ism_of_triple(sr_triple, p: LocalRegularSPair) -> InfSManifold:
    """(induced algebra on m, phi|_m) for a triple whose m is phi-stable."""
    sigma = restrict_map(p.phi, sr_triple.m_basis)
    return InfSManifold(sr_triple.induced, sigma)


def functor_rism(sr: SPairRep, p: LocalRegularSPair) -> tuple[ISMRep, InfSManifold]:
    """(M_n, psi_tilde|_{M_n}) as a representation of the induced s-manifold."""
    check_spair_rep(sr, p).require("s-pair representation")
    S = ism_of_triple(sr.rep.triple, p)
    k = sr.rep.n_dim
    ir = ISMRep(functor_rly(sr.rep), sr.psi_tilde[:k, :k])
    check_rism(ir, S).require("functor_rism output")
    return ir, S


def functor_rlrs(ir: ISMRep, S: InfSManifold) -> tuple[SPairRep, LocalRegularSPair]:
    """(V + D_{T~}(T, V), psi x id) over (L(T), L(sigma))."""
    check_rism(ir, S).require("ISM representation")
    tr = functor_rrt(ir.rep)
    m = ir.rep.v_dim
    psi = xl.eye(tr.dim)
    psi[:m, :m] = ir.psi
    pair = LocalRegularSPair(tr.triple.g, induced_L_sigma(S))
    sr = SPairRep(tr, psi)
    check_spair_rep(sr, pair).require("functor_rlrs output")
    return sr, pair


@dataclass(frozen=True, eq=False)
class SPairRoundTrip:
    alpha: Optional[AlphaResult]
    psi_equal: Optional[bool]
    beta: Optional[BetaResult]

    @property
    def ok(self) -> bool:
        a = self.alpha is None or (self.alpha.ok and bool(self.psi_equal))
        b = self.beta is None or self.beta.ok
        return a and b


def spair_roundtrip_alpha(ir: ISMRep, S: InfSManifold) -> SPairRoundTrip:
    sr, pair = functor_rlrs(ir, S)
    back, _ = functor_rism(sr, pair)
    alpha = roundtrip_alpha(ir.rep)
    return SPairRoundTrip(alpha, xl.is_zero(back.psi - ir.psi), None)


def spair_roundtrip_beta(sr: SPairRep, p: LocalRegularSPair) -> SPairRoundTrip:
    ir, S = functor_rism(sr, p)
    sr2, _ = functor_rlrs(ir, S)
    beta = roundtrip_beta(sr.rep, sr.psi_tilde, sr2.psi_tilde)
    return SPairRoundTrip(None, None, beta)
