"""Tightness of representations and the Levi section of L(pi, iota)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .. import exactlin as xl
from ..errors import NotTightError, PreconditionError, ValidationError
from ..exactlin import Subspace
from ..liealg import (
    Envelope,
    center,
    derived_subalgebra,
    enveloping,
    envelope_from_operators,
    is_L_semisimple,
)
from ..lyalg import InfSManifold, check_ism, triple_product_span
from .lyrep import ISMRep, LYRep, check_rism


@dataclass(frozen=True, eq=False)
class Relation:
    """A relation sum c_(i,j) D_{e_i,e_j} = 0 and the matching sum of deltas."""

    coefficients: dict
    delta_value: np.ndarray

    def describe(self, names=None) -> str:
        def nm(i):
            return names[i] if names else f"e{i}"

        terms = " + ".join(f"{c}*D_{{{nm(i)},{nm(j)}}}" for (i, j), c in self.coefficients.items())
        dterms = " + ".join(f"{c}*delta({nm(i)},{nm(j)})" for (i, j), c in self.coefficients.items())
        return f"{terms} = 0 but {dterms} != 0"


@dataclass(frozen=True, eq=False)
class Tightness:
    tight: bool
    witness: Optional[Relation] = None

    def __bool__(self) -> bool:
        return self.tight


def _delta_family(r: LYRep) -> np.ndarray:
    d = r.algebra.inner_derivations
    m = r.v_dim
    return xl.stack_rows([r.delta[i, j].reshape(-1) for i, j in d.pairs], m * m)


def is_tight(r: LYRep) -> Tightness:
    """D_{x,y} -> delta(x,y) is well defined iff delta kills every relation among the D's."""
    r.require_valid()
    d = r.algebra.inner_derivations
    if not d.pairs or d.relations.dim == 0:
        return Tightness(True)
    fam = _delta_family(r)
    values = d.relations.basis.dot(fam) if fam.size else xl.zeros(d.relations.dim, 0)
    failing = [k for k in range(d.relations.dim) if not xl.is_zero(values[k])]
    if not failing:
        return Tightness(True)
    support = lambda k: sum(1 for c in d.relations.basis[k] if c != 0)
    best = min(failing, key=lambda k: (support(k), k))
    row = d.relations.basis[best]
    coeffs = {d.pairs[p]: c for p, c in enumerate(row) if c != 0}
    m = r.v_dim
    return Tightness(False, Relation(coeffs, values[best].reshape(m, m)))


def delta_bar(r: LYRep) -> np.ndarray:
    """delta on the chosen basis of D(T): one v_dim x v_dim matrix per basis pair."""
    t = is_tight(r)
    if not t:
        raise NotTightError("representation is not tight", witness=t.witness)
    d = r.algebra.inner_derivations
    m = r.v_dim
    return np.array([r.delta[d.pairs[p]] for p in d.basis_pairs], dtype=object).reshape(d.dim, m, m)


@dataclass(frozen=True, eq=False)
class LPiIota:
    """L' = iota(T) + D_{T~}(iota(T)) with L(pi, iota): L' -> L(T)."""

    sub: Envelope
    target: Envelope
    map: np.ndarray
    kernel: Subspace
    kernel_central: bool
    kernel_in_d_part: bool
    surjective: bool

    @property
    def d_operators(self) -> np.ndarray:
        """Basis operators of the D-part acting on T + V."""
        return self.sub.ops


def l_pi_iota(r: LYRep) -> LPiIota:
    r.require_valid()
    T = r.algebra
    n, m = T.dim, r.v_dim
    a = n + m
    ops = xl.zeros(n, n, a, a)
    ops[:, :, :n, :n] = T.ternary.transpose(0, 1, 3, 2)
    ops[:, :, n:, n:] = r.delta
    sub = envelope_from_operators(T.binary, ops, n)
    env = enveloping(T)
    d = T.inner_derivations
    mat = xl.zeros(env.g.dim, sub.g.dim)
    mat[:n, :n] = xl.eye(n)
    if sub.d_dim:
        tops = xl.qarray([T.ternary[p].T for p in (sub.pairs[k] for k in sub.basis_pairs)])
        mat[n:, n:] = d.coordinates(tops).T
    K = xl.kernel(mat)
    Z = center(sub.g)
    return LPiIota(
        sub, env, mat, K,
        kernel_central=Z.contains(K),
        kernel_in_d_part=Subspace.coordinate(sub.g.dim, range(n, sub.g.dim)).contains(K),
        surjective=xl.rank(mat) == env.g.dim,
    )


@dataclass(frozen=True, eq=False)
class LeviSection:
    lpi: LPiIota
    section_image: Subspace
    section: np.ndarray  # L(T) -> L', columns are images of the L(T) basis
    flags: dict

    @property
    def consistent(self) -> bool:
        return len(set(self.flags.values())) == 1


def levi_section(r: LYRep) -> LeviSection:
    """Section of L(pi, iota) given by the derived subalgebra, with the six equivalent conditions."""
    T = r.algebra
    if not is_L_semisimple(T):
        raise PreconditionError("T is not L-semisimple")
    lp = l_pi_iota(r)
    g = derived_subalgebra(lp.sub.g)
    Ldim = lp.target.g.dim
    restricted = lp.map.dot(g.basis.T) if g.dim else xl.zeros(Ldim, 0)
    if g.dim != Ldim or xl.rank(restricted) != Ldim:
        raise ValidationError("derived subalgebra is not complementary to the kernel")
    inv = xl.invert(restricted)
    section = g.basis.T.dot(inv)
    n = T.dim
    Ndim = lp.sub.g.dim
    iota_T = Subspace.coordinate(Ndim, range(n))
    d_part = Subspace.coordinate(Ndim, range(n, Ndim))
    fT = xl.column_space(section[:, :n]) if n else Subspace.zero(Ndim)
    flags = {
        "a": lp.kernel.dim == 0,
        "b": g.dim == Ndim,
        "c": (g & iota_T).dim + (g & d_part).dim == g.dim,
        "d": fT.contains(iota_T),
        "e": g.contains(iota_T),
        "f": iota_T.contains(fT),
    }
    return LeviSection(lp, g, section, flags)


@dataclass(frozen=True)
class Sufficiency:
    mode: str
    hypothesis: bool
    conclusion: Optional[bool]
    details: dict

    @property
    def consistent(self) -> bool:
        return not self.hypothesis or bool(self.conclusion)


def tight_sufficient(r: LYRep, mode: str = "ttt", ism_rep: Optional[ISMRep] = None,
                     ism: Optional[InfSManifold] = None) -> Sufficiency:
    """Evaluate a sufficient condition for tightness and, when it holds, the conclusion.

    ``ttt``: [T,T,T] = T.  ``perfect+ism``: [L(T), L(T)] = L(T) with sigma and psi
    making T and T + V infinitesimal s-manifold data compatible with pi and iota.
    """
    T = r.algebra
    details = {}
    if mode == "ttt":
        span = triple_product_span(T)
        hyp = span.dim == T.dim
        details["dim [T,T,T]"] = span.dim
    elif mode == "perfect+ism":
        if ism_rep is None or ism is None:
            raise PreconditionError("perfect+ism mode needs an ISM representation and its s-manifold")
        if ism_rep.rep is not r:
            raise PreconditionError("ISM representation must wrap the given representation")
        L = enveloping(T).g
        perfect = derived_subalgebra(L).dim == L.dim
        ism_ok = check_ism(ism).ok
        rism = check_rism(ism_rep, ism)
        details.update({"perfect": perfect, "ism": ism_ok, "rism": rism.ok, "regular": ism_rep.regular})
        hyp = perfect and ism_ok and rism.ok
    else:
        raise ValueError(f"unknown mode {mode!r}")
    conclusion = bool(is_tight(r)) if hyp else None
    return Sufficiency(mode, hyp, conclusion, details)
