"""Lie algebras, reductive triples, standard enveloping algebras and s-pairs.

``[e_i, e_j] = sum_k bracket[i, j, k] e_k``; ``ad(e_i)`` has matrix ``bracket[i].T``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Optional

import numpy as np

from . import exactlin as xl
from .checks import CheckReport
from .errors import ShapeError, ValidationError
from .exactlin import Basis, Subspace, einsum
from .lyalg import InfSManifold, LieYamagutiAlgebra, check_ism, derivation_family, is_ideal, is_subalgebra


@dataclass(frozen=True, eq=False)
class LieAlgebra:
    bracket: np.ndarray
    label: Optional[str] = None

    def __post_init__(self):
        c = xl.qarray(self.bracket)
        n = c.shape[0] if c.ndim else 0
        if c.shape != (n, n, n):
            raise ShapeError(f"bracket tensor of shape {c.shape} is not cubic")
        object.__setattr__(self, "bracket", c)

    @property
    def dim(self) -> int:
        return self.bracket.shape[0]

    def br(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", x, y, self.bracket)

    def ad(self, x) -> np.ndarray:
        return np.einsum("i,ijk->kj", xl.qarray(x), self.bracket)

    @cached_property
    def jacobi_report(self) -> CheckReport:
        return check_jacobi(self)

    @property
    def validated(self) -> bool:
        return self.jacobi_report.ok

    def require_valid(self) -> "LieAlgebra":
        self.jacobi_report.require(f"Lie algebra {self.label or ''}".strip())
        return self

    def bracket_matrix(self, rows_a: np.ndarray, rows_b: np.ndarray) -> np.ndarray:
        """All brackets ``[a_p, b_q]`` of two families of vectors, shape (p, q, dim)."""
        return einsum("bj,ajk->abk", rows_b, einsum("ai,ijk->ajk", rows_a, self.bracket))

    def same_structure(self, other: "LieAlgebra") -> bool:
        return self.dim == other.dim and xl.is_zero(self.bracket - other.bracket)


def check_jacobi(g: LieAlgebra) -> CheckReport:
    c = g.bracket
    rep = CheckReport()
    rep.add_residual("antisymmetry", c + c.transpose(1, 0, 2), 2)
    a = einsum("xyk,kzl->xyzl", c, c)
    jac = a + np.einsum("yzxl->xyzl", a) + np.einsum("zxyl->xyzl", a)
    rep.add_residual("Jacobi", jac, 3, "[[x,y],z] + [[y,z],x] + [[z,x],y] = 0")
    return rep


def check_lie_hom(src: LieAlgebra, tgt: LieAlgebra, f) -> CheckReport:
    f = xl.qarray(f)
    if f.shape != (tgt.dim, src.dim):
        raise ShapeError(f"map of shape {f.shape} between dims {src.dim} -> {tgt.dim}")
    lhs = einsum("ijk,lk->ijl", src.bracket, f)
    rhs = einsum("bj,ibl->ijl", f, einsum("ai,abl->ibl", f, tgt.bracket))
    return CheckReport().add_residual("f[x,y] = [fx,fy]", lhs - rhs, 2)


def killing_form(g: LieAlgebra) -> np.ndarray:
    return einsum("ilk,jkl->ij", g.bracket, g.bracket)


def is_semisimple(g: LieAlgebra) -> bool:
    return xl.rank(killing_form(g)) == g.dim


def derived_subalgebra(g: LieAlgebra) -> Subspace:
    n = g.dim
    return Subspace.span(g.bracket.reshape(-1, n), n)


def center(g: LieAlgebra) -> Subspace:
    n = g.dim
    if n == 0:
        return Subspace.zero(0)
    return xl.kernel(g.bracket.reshape(n, n * n).T)


def is_lie_subalgebra(g: LieAlgebra, U: Subspace) -> bool:
    br = g.bracket_matrix(U.basis, U.basis).reshape(-1, g.dim)
    return all(U.contains_vector(v) for v in br)


def is_lie_ideal(g: LieAlgebra, U: Subspace) -> bool:
    br = g.bracket_matrix(U.basis, xl.eye(g.dim)).reshape(-1, g.dim)
    return all(U.contains_vector(v) for v in br)


def direct_sum(*algebras: LieAlgebra, label: Optional[str] = None) -> LieAlgebra:
    n = sum(a.dim for a in algebras)
    c = xl.zeros(n, n, n)
    off = 0
    for a in algebras:
        d = a.dim
        c[off:off + d, off:off + d, off:off + d] = a.bracket
        off += d
    return LieAlgebra(c, label)


@dataclass(frozen=True, eq=False)
class ReductiveTriple:
    """A Lie algebra with a splitting g = m + h given by explicit basis rows.

    The rows of ``m_basis`` form the basis used for the induced LY algebra on m.
    """

    g: LieAlgebra
    m_basis: np.ndarray
    h_basis: np.ndarray

    def __post_init__(self):
        n = self.g.dim
        for name in ("m_basis", "h_basis"):
            rows = np.asarray(getattr(self, name), dtype=object)
            rows = xl.qarray(rows) if rows.size else xl.zeros(0, n)
            rows = rows.reshape(-1, n) if rows.size else xl.zeros(0, n)
            object.__setattr__(self, name, rows)

    @classmethod
    def from_subspaces(cls, g: LieAlgebra, m: Subspace, h: Subspace) -> "ReductiveTriple":
        return cls(g, m.basis, h.basis)

    @property
    def m_dim(self) -> int:
        return self.m_basis.shape[0]

    @property
    def h_dim(self) -> int:
        return self.h_basis.shape[0]

    @property
    def m(self) -> Subspace:
        return Subspace.span(self.m_basis, self.g.dim)

    @property
    def h(self) -> Subspace:
        return Subspace.span(self.h_basis, self.g.dim)

    @cached_property
    def adapted(self) -> np.ndarray:
        return np.concatenate([self.m_basis, self.h_basis])

    @cached_property
    def split(self) -> Basis:
        return Basis(self.adapted, self.g.dim)

    @cached_property
    def change_to_adapted(self) -> np.ndarray:
        """Matrix taking standard coordinates to adapted (m, h) coordinates."""
        return self.split.coordinate_matrix(xl.eye(self.g.dim)).T

    @cached_property
    def adapted_bracket(self) -> np.ndarray:
        """Bracket constants in the adapted basis (m rows first, then h rows)."""
        br = self.g.bracket_matrix(self.adapted, self.adapted)
        n = self.g.dim
        return self.split.coordinate_matrix(br.reshape(-1, n)).reshape(n, n, n)

    @cached_property
    def report(self) -> CheckReport:
        return check_reductive_triple(self)

    @cached_property
    def induced(self) -> LieYamagutiAlgebra:
        return induced_ly(self)


def check_reductive_triple(rt: ReductiveTriple) -> CheckReport:
    n = rt.g.dim
    rep = CheckReport()
    stacked = rt.adapted
    ok = stacked.shape[0] == n and xl.rank(stacked) == n if n else stacked.shape[0] == 0
    rep.add("g = m + h direct", ok, detail=f"dim m = {rt.m_dim}, dim h = {rt.h_dim}, dim g = {n}")
    if not ok:
        return rep
    h, m = rt.h, rt.m
    hh = rt.g.bracket_matrix(rt.h_basis, rt.h_basis)
    w = next(((a, b) for a in range(rt.h_dim) for b in range(rt.h_dim) if not h.contains_vector(hh[a, b])), None)
    rep.add("h subalgebra", w is None, w)
    hm = rt.g.bracket_matrix(rt.h_basis, rt.m_basis)
    w = next(((a, b) for a in range(rt.h_dim) for b in range(rt.m_dim) if not m.contains_vector(hm[a, b])), None)
    rep.add("[h,m] in m", w is None, w)
    return rep


def _require_triple(rt: ReductiveTriple) -> None:
    rt.report.require("reductive triple")


def induced_ly(rt: ReductiveTriple) -> LieYamagutiAlgebra:
    """x*y = [x,y]_m and [x,y,z] = [[x,y]_h, z] in the basis ``rt.m_basis``."""
    _require_triple(rt)
    p = rt.m_dim
    c = rt.adapted_bracket
    b = c[:p, :p, :p].copy()
    t = einsum("xyk,kzl->xyzl", c[:p, :p, p:], c[p:, :p, :p])
    return LieYamagutiAlgebra(b, t, label=f"induced({rt.g.label})" if rt.g.label else None)


@dataclass(frozen=True, eq=False)
class Envelope:
    """A standard enveloping construction: the Lie algebra, its triple and the D-part data.

    Basis of ``g``: the algebra basis followed by ``ops[k]`` for the chosen
    pairs ``derivations.basis_pairs``.
    """

    g: LieAlgebra
    triple: ReductiveTriple
    n: int
    pairs: tuple
    basis_pairs: tuple
    ops: np.ndarray
    relations: Subspace

    @property
    def d_dim(self) -> int:
        return len(self.basis_pairs)


def envelope_from_operators(binary: np.ndarray, pair_ops: np.ndarray, n: int, label=None) -> Envelope:
    """Lie algebra U + span{O_{ij}} for U = first ``n`` coordinates of an ambient space.

    ``pair_ops[i, j]`` (shape (n, n, a, a), a >= n) act on the ambient space and
    preserve U; the bracket is
    [(x1,H1),(x2,H2)] = (x1*x2 + H1 x2 - H2 x1, O_{x1,x2} + [H1,H2]).
    """
    a = pair_ops.shape[2]
    pairs, family, basis_pairs, span, relations = derivation_family(pair_ops)
    d = len(basis_pairs)
    ops = family[list(basis_pairs)].reshape(d, a, a) if d else xl.zeros(0, a, a)
    coords = Basis(family[list(basis_pairs)], a * a) if d else None
    N = n + d
    c = xl.zeros(N, N, N)
    c[:n, :n, :n] = binary
    if d:
        all_ops = pair_ops.reshape(n * n, a * a)
        c[:n, :n, n:] = coords.coordinate_matrix(all_ops).reshape(n, n, d)
        act = ops[:, :n, :n]  # H_k restricted to U, column j is H_k e_j
        c[n:, :n, :n] = act.transpose(0, 2, 1)
        c[:n, n:, :n] = -act.transpose(2, 0, 1)
        comm = einsum("kab,lbc->klac", ops, ops)
        comm = comm - comm.transpose(1, 0, 2, 3)
        try:
            c[n:, n:, n:] = coords.coordinate_matrix(comm.reshape(d * d, a * a)).reshape(d, d, d)
        except ValueError as exc:
            raise ValidationError("operator span is not closed under commutators") from exc
    g = LieAlgebra(c, label)
    if not g.jacobi_report.ok:
        raise ValidationError("enveloping bracket violates the Jacobi identity", report=g.jacobi_report)
    eye = xl.eye(N)
    triple = ReductiveTriple(g, eye[:n], eye[n:])
    return Envelope(g, triple, n, pairs, tuple(basis_pairs), ops, relations)


_ENVELOPE_CACHE_ATTR = "_envelope"


def enveloping(T: LieYamagutiAlgebra) -> Envelope:
    """Standard enveloping Lie algebra L(T) = T + D(T) with its reductive triple."""
    cached = T.__dict__.get(_ENVELOPE_CACHE_ATTR)
    if cached is not None:
        return cached
    T.require_valid()
    env = envelope_from_operators(
        T.binary, T.ternary.transpose(0, 1, 3, 2), T.dim,
        label=f"L({T.label})" if T.label else None,
    )
    T.__dict__[_ENVELOPE_CACHE_ATTR] = env
    return env


def is_L_semisimple(T: LieYamagutiAlgebra) -> bool:
    return is_semisimple(enveloping(T).g)


@dataclass(frozen=True)
class LSub:
    subspace: Subspace
    is_subalgebra: bool
    ideal: Optional[Subspace] = None
    ideal_is_ideal: Optional[bool] = None
    note: str = ""


def l_sub(rt: ReductiveTriple, m_prime: Subspace) -> LSub:
    """L_g(m') = m' + [m', m'] for an LY subalgebra m' (coordinates relative to ``m_basis``)."""
    _require_triple(rt)
    T = rt.induced
    if m_prime.ambient_dim != rt.m_dim:
        raise ShapeError("m' must be given in coordinates of m")
    sub = is_subalgebra(T, m_prime)
    if not sub.ok:
        raise ValidationError("m' is not a subalgebra of m", report=sub)
    mp = m_prime.basis.dot(rt.m_basis) if m_prime.dim else xl.zeros(0, rt.g.dim)
    brs = rt.g.bracket_matrix(mp, mp).reshape(-1, rt.g.dim)
    L = Subspace.span(np.concatenate([mp, brs]), rt.g.dim)
    closed = is_lie_subalgebra(rt.g, L)
    if not is_ideal(T, m_prime).ok:
        return LSub(L, closed, note="m' is not an ideal of m")
    if not is_minimal_triple(rt):
        return LSub(L, closed, note="not claimed: triple is not minimal")
    brs = rt.g.bracket_matrix(rt.m_basis, mp).reshape(-1, rt.g.dim)
    ideal = Subspace.span(np.concatenate([mp, brs]), rt.g.dim)
    return LSub(L, closed, ideal, is_lie_ideal(rt.g, ideal))


def is_minimal_triple(rt: ReductiveTriple) -> bool:
    _require_triple(rt)
    p = rt.m_dim
    if rt.h_dim == 0:
        return True
    hpart = rt.adapted_bracket[:p, :p, p:].reshape(p * p, rt.h_dim)
    return xl.rank(hpart) == rt.h_dim


def h_action_on_m(rt: ReductiveTriple) -> np.ndarray:
    """ad(h_k)|_m as matrices in the m basis, shape (dim h, dim m, dim m)."""
    p = rt.m_dim
    return rt.adapted_bracket[p:, :p, :p].transpose(0, 2, 1)


def is_effective_triple(rt: ReductiveTriple) -> bool:
    _require_triple(rt)
    if rt.h_dim == 0:
        return True
    return xl.rank(h_action_on_m(rt).reshape(rt.h_dim, -1)) == rt.h_dim


@dataclass(frozen=True, eq=False)
class CanonicalHom:
    """f: g -> m + End(m), x + h -> (x, ad(h)|_m), and its comparison with L(m)."""

    full_matrix: np.ndarray
    matrix: Optional[np.ndarray]
    envelope: Envelope
    image_in_lm: bool
    injective: bool
    surjective: bool
    is_hom: bool
    minimal: bool
    effective: bool

    @property
    def isomorphism(self) -> bool:
        return self.image_in_lm and self.injective and self.surjective and self.is_hom


def canonical_hom(rt: ReductiveTriple) -> CanonicalHom:
    _require_triple(rt)
    T = rt.induced
    env = enveloping(T)
    p, q, N = rt.m_dim, rt.h_dim, rt.g.dim
    adapted_img = xl.zeros(p + p * p, p + q)
    adapted_img[:p, :p] = xl.eye(p)
    if q:
        adapted_img[p:, p:] = h_action_on_m(rt).reshape(q, p * p).T
    full = adapted_img.dot(rt.change_to_adapted) if N else xl.zeros(p + p * p, 0)
    injective = xl.rank(full) == N
    # L(m) inside m + End(m)
    lm_cols = xl.zeros(p + p * p, env.g.dim)
    lm_cols[:p, :p] = xl.eye(p)
    if env.d_dim:
        lm_cols[p:, p:] = env.ops.reshape(env.d_dim, p * p).T
    lm = xl.column_space(lm_cols)
    img = xl.column_space(full) if N else Subspace.zero(p + p * p)
    image_in_lm = lm.contains(img)
    surjective = image_in_lm and img.dim == lm.dim
    matrix = None
    is_hom = False
    if image_in_lm:
        coords = Basis(lm_cols.T, p + p * p)
        matrix = coords.coordinate_matrix(full.T).T
        is_hom = check_lie_hom(rt.g, env.g, matrix).ok
    return CanonicalHom(full, matrix, env, image_in_lm, injective, surjective, is_hom,
                        is_minimal_triple(rt), is_effective_triple(rt))


def check_triple_hom(src: ReductiveTriple, tgt: ReductiveTriple, f) -> CheckReport:
    """Lie homomorphism mapping m into m and h into h."""
    f = xl.qarray(f)
    rep = check_lie_hom(src.g, tgt.g, f)
    img_m = Subspace.span(src.m_basis.dot(f.T), tgt.g.dim) if src.m_dim else Subspace.zero(tgt.g.dim)
    img_h = Subspace.span(src.h_basis.dot(f.T), tgt.g.dim) if src.h_dim else Subspace.zero(tgt.g.dim)
    rep.add("f(m) in m", tgt.m.contains(img_m))
    rep.add("f(h) in h", tgt.h.contains(img_h))
    return rep


@dataclass(frozen=True, eq=False)
class LocalRegularSPair:
    g: LieAlgebra
    phi: np.ndarray

    def __post_init__(self):
        f = xl.qarray(self.phi)
        if f.shape != (self.g.dim, self.g.dim):
            raise ShapeError(f"phi must be square of size {self.g.dim}")
        object.__setattr__(self, "phi", f)

    @cached_property
    def report(self) -> CheckReport:
        return check_lrsp(self)


def check_lrsp(p: LocalRegularSPair) -> CheckReport:
    n = p.g.dim
    rep = CheckReport()
    rep.add("phi invertible", xl.invert(p.phi) is not None)
    rep.extend(check_lie_hom(p.g, p.g, p.phi))
    f = p.phi - xl.eye(n)
    fixed, gen = xl.kernel(f), xl.stabilized_kernel(f)
    rep.add("Ker(phi - 1) = generalized 1-eigenspace", fixed == gen,
            detail=f"dims {fixed.dim} vs {gen.dim}")
    return rep


def restrict_map(f: np.ndarray, basis: np.ndarray) -> np.ndarray:
    """Matrix of ``f`` on the span of ``basis`` rows (which must be f-invariant)."""
    if basis.shape[0] == 0:
        return xl.zeros(0, 0)
    return Basis(basis).coordinate_matrix(basis.dot(f.T)).T


def associated_triple(p: LocalRegularSPair) -> tuple[ReductiveTriple, InfSManifold]:
    """m = Im(phi - 1), h = Ker(phi - 1), sigma = phi|_m."""
    p.report.require("local regular s-pair")
    f = p.phi - xl.eye(p.g.dim)
    m = xl.column_space(f)
    h = xl.kernel(f)
    rt = ReductiveTriple.from_subspaces(p.g, m, h)
    _require_triple(rt)
    sigma = restrict_map(p.phi, rt.m_basis)
    S = InfSManifold(rt.induced, sigma)
    check_ism(S).require("associated infinitesimal s-manifold")
    return rt, S


def induced_L_sigma(S: InfSManifold) -> np.ndarray:
    """L(sigma) on L(T): sigma on T and the identity on D(T)."""
    S.report.require("infinitesimal s-manifold")
    env = enveloping(S.algebra)
    n = S.algebra.dim
    mat = xl.eye(env.g.dim)
    mat[:n, :n] = S.sigma
    check_lie_hom(env.g, env.g, mat).require("L(sigma)")
    return mat


def enveloping_pair(S: InfSManifold) -> LocalRegularSPair:
    return LocalRegularSPair(enveloping(S.algebra).g, induced_L_sigma(S))
