"""Representations of reductive triples and local regular s-pairs.

A ``TripleRep`` is a g-module M with basis ordered so that the first
``n_dim`` vectors span M_n and the rest span M_s.  ``action[i]`` is the
matrix of the standard basis vector e_i of g.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .. import exactlin as xl
from ..checks import CheckReport
from ..errors import ShapeError, ValidationError
from ..exactlin import Basis, Subspace, einsum
from ..liealg import LocalRegularSPair, ReductiveTriple


@dataclass(frozen=True, eq=False)
class TripleRep:
    triple: ReductiveTriple
    n_dim: int
    action: np.ndarray

    def __post_init__(self):
        N = self.triple.g.dim
        a = xl.qarray(self.action) if np.asarray(self.action).size else xl.zeros(N, 0, 0)
        if a.ndim != 3 or a.shape[0] != N or a.shape[1] != a.shape[2]:
            raise ShapeError(f"action must have shape ({N}, p, p), got {a.shape}")
        if not 0 <= self.n_dim <= a.shape[1]:
            raise ShapeError("n_dim out of range")
        object.__setattr__(self, "action", a)

    @property
    def dim(self) -> int:
        return self.action.shape[1]

    @property
    def s_dim(self) -> int:
        return self.dim - self.n_dim

    def act(self, x) -> np.ndarray:
        return einsum("i,iab->ab", xl.qarray(x), self.action)

    @cached_property
    def m_action(self) -> np.ndarray:
        """Action of the m basis rows, shape (dim m, p, p)."""
        return einsum("ai,iuv->auv", self.triple.m_basis, self.action)

    @cached_property
    def h_action(self) -> np.ndarray:
        return einsum("ai,iuv->auv", self.triple.h_basis, self.action)

    @cached_property
    def report(self) -> CheckReport:
        return check_triple_rep(self)

    def require_valid(self) -> "TripleRep":
        self.triple.report.require("reductive triple")
        self.report.require("triple representation")
        return self

    @cached_property
    def s_to_hom(self) -> np.ndarray:
        """Matrix of M_s -> Hom(m, M_n), s -> (x -> (x s)_n), rows indexed (x, n-index)."""
        k = self.n_dim
        return self.m_action[:, :k, k:].reshape(self.triple.m_dim * k, self.s_dim)

    @property
    def effective(self) -> bool:
        return xl.rank(self.s_to_hom) == self.s_dim if self.s_dim else True

    @cached_property
    def ms_span(self) -> Subspace:
        """(m M_n)_s as a subspace of M_s coordinates."""
        k = self.n_dim
        blocks = self.m_action[:, k:, :k]
        cols = blocks.transpose(1, 0, 2).reshape(self.s_dim, self.triple.m_dim * k)
        return xl.column_space(cols) if cols.size else Subspace.zero(self.s_dim)

    @property
    def minimal(self) -> bool:
        return self.ms_span.dim == self.s_dim


def check_triple_rep(tr: TripleRep) -> CheckReport:
    g = tr.triple.g
    A = tr.action
    k = tr.n_dim
    rep = CheckReport()
    lhs = einsum("ijk,kab->ijab", g.bracket, A)
    aa = einsum("iab,jbc->ijac", A, A)
    rep.add_residual("module", lhs - (aa - aa.transpose(1, 0, 2, 3)), 2, "[x,y] acts as the commutator")
    ha = tr.h_action
    q, s = ha.shape[0], tr.s_dim
    blocks = np.concatenate([ha[:, :k, k:].reshape(q, k * s), ha[:, k:, :k].reshape(q, s * k)], axis=1)
    rep.add_residual("h preserves M_n and M_s", blocks, 1)
    rep.add_residual("m M_s in M_n", tr.m_action[:, k:, k:], 1)
    return rep


def _conjugate(tr: TripleRep, basis: np.ndarray, n_new: int, coords: Basis, take: slice) -> TripleRep:
    """Action on the span of ``basis`` rows, read through ``coords``."""
    imgs = einsum("iuv,av->iau", tr.action, basis)
    N, p = imgs.shape[0], basis.shape[0]
    c = coords.coordinate_matrix(imgs.reshape(-1, tr.dim))[:, take]
    new = c.reshape(N, p, -1).transpose(0, 2, 1)
    return TripleRep(tr.triple, n_new, new)


def sub_triple_rep(tr: TripleRep, Nn: Subspace, Ns: Subspace) -> TripleRep:
    """Subrepresentation N_n + N_s (subspaces of M_n and M_s coordinates)."""
    k = tr.n_dim
    B = xl.zeros(Nn.dim + Ns.dim, tr.dim)
    B[:Nn.dim, :k] = Nn.basis
    B[Nn.dim:, k:] = Ns.basis
    coords = Basis(B, tr.dim)
    try:
        return _conjugate(tr, B, Nn.dim, coords, slice(None))
    except ValueError as exc:
        raise ValidationError("subspace is not invariant") from exc


def _complement_indices(W: Subspace) -> list:
    return [j for j in range(W.ambient_dim) if j not in W.pivots]


def quotient_triple_rep(tr: TripleRep, Nn: Subspace, Ns: Subspace) -> TripleRep:
    """M / (N_n + N_s); the quotient basis is the standard vectors outside the pivots."""
    k = tr.n_dim
    cn = _complement_indices(Nn)
    cs = [k + j for j in _complement_indices(Ns)]
    B = xl.zeros(Nn.dim + Ns.dim, tr.dim)
    B[:Nn.dim, :k] = Nn.basis
    B[Nn.dim:, k:] = Ns.basis
    C = xl.eye(tr.dim)[cn + cs]
    sub_check = sub_triple_rep(tr, Nn, Ns)  # raises if not invariant
    del sub_check
    coords = Basis(np.concatenate([B, C]), tr.dim)
    return _conjugate(tr, C, len(cn), coords, slice(B.shape[0], None))


def effectivize(tr: TripleRep) -> TripleRep:
    """Quotient of M_s by the kernel of M_s -> Hom(m, M_n)."""
    tr.require_valid()
    if tr.s_dim == 0:
        return tr
    K = xl.kernel(tr.s_to_hom)
    if K.dim == 0:
        return tr
    h_ok = all(K.is_invariant(a[tr.n_dim:, tr.n_dim:]) for a in tr.h_action)
    if not h_ok:
        raise ValidationError("kernel of M_s -> Hom(m, M_n) is not h-stable")
    return quotient_triple_rep(tr, Subspace.zero(tr.n_dim), K)


def minimalize(tr: TripleRep) -> TripleRep:
    """Replace M_s by (m M_n)_s."""
    tr.require_valid()
    S = tr.ms_span
    if S.dim == tr.s_dim:
        return tr
    return sub_triple_rep(tr, Subspace.full(tr.n_dim), S)


def direct_sum(*reps: TripleRep) -> TripleRep:
    """Block sum, reordering so all n-parts come first."""
    triple = reps[0].triple
    N = triple.g.dim
    n_tot = sum(r.n_dim for r in reps)
    p = sum(r.dim for r in reps)
    A = xl.zeros(N, p, p)
    on, os_ = 0, n_tot
    for r in reps:
        k, s = r.n_dim, r.s_dim
        idx = list(range(on, on + k)) + list(range(os_, os_ + s))
        A[np.ix_(range(N), idx, idx)] = r.action
        on += k
        os_ += s
    return TripleRep(triple, n_tot, A)


def tensor_product(a: TripleRep, b: TripleRep) -> TripleRep:
    """a (x) b with M_s = s(x)s and M_n spanned by the other three blocks."""
    N = a.triple.g.dim
    pa, pb = a.dim, b.dim
    Ia, Ib = xl.eye(pa), xl.eye(pb)
    A = np.array([np.kron(a.action[i], Ib) + np.kron(Ia, b.action[i]) for i in range(N)], dtype=object)
    pairs = [(u, v) for u in range(pa) for v in range(pb)]
    s_pairs = [(u, v) for u, v in pairs if u >= a.n_dim and v >= b.n_dim]
    order = [u * pb + v for u, v in pairs if (u, v) not in s_pairs] + [u * pb + v for u, v in s_pairs]
    A = A[:, order][:, :, order]
    return TripleRep(a.triple, pa * pb - len(s_pairs), A)


def conjugate(tr: TripleRep, P: np.ndarray) -> TripleRep:
    """Change of basis by a block-diagonal invertible P (columns are the new basis)."""
    Pinv = xl.invert(P)
    A = einsum("uv,ivw->iuw", Pinv, einsum("ivw,wx->ivx", tr.action, P))
    return TripleRep(tr.triple, tr.n_dim, A)


def same_rep(a: TripleRep, b: TripleRep) -> bool:
    return a.n_dim == b.n_dim and a.action.shape == b.action.shape and xl.is_zero(a.action - b.action)


@dataclass(frozen=True, eq=False)
class SPairRep:
    rep: TripleRep
    psi_tilde: np.ndarray

    def __post_init__(self):
        p = xl.qarray(self.psi_tilde) if np.asarray(self.psi_tilde).size else xl.zeros(0, 0)
        if p.shape != (self.rep.dim, self.rep.dim):
            raise ShapeError("psi_tilde must be square of the module dimension")
        object.__setattr__(self, "psi_tilde", p)

    @property
    def regular(self) -> bool:
        k = self.rep.n_dim
        return xl.invert(xl.eye(k) - self.psi_tilde[:k, :k]) is not None


def check_spair_rep(sr: SPairRep, p: LocalRegularSPair) -> CheckReport:
    tr = sr.rep
    if not p.g.same_structure(tr.triple.g):
        raise ShapeError("s-pair and representation have different Lie algebras")
    rep = CheckReport()
    rep.extend(tr.report)
    k = tr.n_dim
    psi = sr.psi_tilde
    rep.add_residual("psi_tilde(M_n) in M_n", psi[k:, :k], 1)
    rep.add_residual("psi_tilde = id on M_s", psi[:, k:] - xl.eye(tr.dim)[:, k:], 1)
    rep.add("psi_tilde invertible", xl.invert(psi) is not None)
    a_phi = einsum("ai,auv->iuv", p.phi, tr.action)
    res = einsum("iuv,vw->iuw", a_phi, psi) - einsum("uv,ivw->iuw", psi, tr.action)
    rep.add_residual("phi(x) psi_tilde = psi_tilde x", res, 1)
    rep.info["regular"] = sr.regular
    return rep


def conjugate_spair(sr: SPairRep, P: np.ndarray) -> SPairRep:
    Pinv = xl.invert(P)
    return SPairRep(conjugate(sr.rep, P), Pinv.dot(sr.psi_tilde).dot(P))


def direct_sum_spair(*reps: SPairRep) -> SPairRep:
    tot = direct_sum(*(r.rep for r in reps))
    n_tot = tot.n_dim
    psi = xl.zeros(tot.dim, tot.dim)
    on, os_ = 0, n_tot
    for r in reps:
        k, s = r.rep.n_dim, r.rep.s_dim
        idx = list(range(on, on + k)) + list(range(os_, os_ + s))
        psi[np.ix_(idx, idx)] = r.psi_tilde
        on += k
        os_ += s
    return SPairRep(tot, psi)


def adjoint_rep(rt: ReductiveTriple, split: str = "mh") -> TripleRep:
    """g acting on itself; ``split`` is "mh" (M_n = m, M_s = h) or "g" (M_n = g)."""
    g = rt.g
    ad = np.array([g.ad(row) for row in xl.eye(g.dim)], dtype=object).reshape(g.dim, g.dim, g.dim)
    if split == "g":
        return TripleRep(rt, g.dim, ad)
    P = rt.adapted.T  # columns: m basis then h basis
    return conjugate(TripleRep(rt, rt.m_dim, ad), P)


def trivial_rep(rt: ReductiveTriple, n_dim: int, s_dim: int = 0) -> TripleRep:
    p = n_dim + s_dim
    return TripleRep(rt, n_dim, xl.zeros(rt.g.dim, p, p))
