"""Worked examples with frozen bases.

Basis conventions:

* ``make_sl(n)``: off-diagonal E_ij in lexicographic (i, j) order, then
  H_i = E_ii - E_{i+1,i+1}.  For n = 2 this is (e, f, h) with [e, f] = h.
* ``make_sl2_ef_triple``: m = <e, f>, h = <h> inside sl2.
* ``make_core_quandle_pair(g)``: g + g with the first copy first; phi swaps.
* ``make_matrix_example``: g = Q acting on M = Q^3 by [[0,0,1],[0,0,0],[0,1,0]],
  M_n = <n1, n2>, M_s = <s>.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Callable, Optional

import numpy as np

from . import exactlin as xl
from .errors import PreconditionError
from .exactlin import Subspace
from .liealg import LieAlgebra, LocalRegularSPair, ReductiveTriple, direct_sum
from .lyalg import InfSManifold, LieYamagutiAlgebra
from .reps.lyrep import ISMRep, LYRep
from .reps.triplerep import SPairRep, TripleRep, adjoint_rep, quotient_triple_rep, sub_triple_rep


@dataclass(frozen=True)
class LinearFunctional:
    coefficients: tuple

    @classmethod
    def of(cls, coeffs) -> "LinearFunctional":
        return cls(tuple(xl.q(c) for c in coeffs))

    @property
    def ambient_dim(self) -> int:
        return len(self.coefficients)

    def __call__(self, x) -> Any:
        return sum((c * xl.q(v) for c, v in zip(self.coefficients, x)), xl.q(0))

    @property
    def vector(self) -> np.ndarray:
        return xl.qarray(list(self.coefficients))


def sl_matrix_basis(n: int) -> list:
    """The n x n matrices behind the basis of ``make_sl(n)``."""
    out = []
    for i in range(n):
        for j in range(n):
            if i != j:
                E = xl.zeros(n, n)
                E[i, j] = xl.q(1)
                out.append(E)
    for i in range(n - 1):
        H = xl.zeros(n, n)
        H[i, i], H[i + 1, i + 1] = xl.q(1), xl.q(-1)
        out.append(H)
    return out


def make_sl(n: int) -> LieAlgebra:
    if n < 2:
        raise PreconditionError("sl_n needs n >= 2")
    basis = sl_matrix_basis(n)
    coords = xl.Basis(xl.stack_rows([b.reshape(-1) for b in basis], n * n), n * n)
    d = len(basis)
    comms = [basis[a].dot(basis[b]) - basis[b].dot(basis[a]) for a in range(d) for b in range(d)]
    c = coords.coordinate_matrix(xl.stack_rows([x.reshape(-1) for x in comms], n * n)).reshape(d, d, d)
    return LieAlgebra(c, f"sl{n}")


def make_g_alpha_beta(g: LieAlgebra, alpha, beta) -> LieYamagutiAlgebra:
    """x * y = alpha [x, y] and [x, y, z] = beta [[x, y], z]."""
    a, b = xl.q(alpha), xl.q(beta)
    c = g.bracket
    t = xl.einsum("xyk,kzl->xyzl", c, c)
    return LieYamagutiAlgebra(c * a, t * b, label=f"g_{{{a},{b}}}({g.label})")


def make_sl2_ef_triple() -> ReductiveTriple:
    g = make_sl(2)
    I = xl.eye(3)
    return ReductiveTriple(g, I[:2], I[2:])


def make_sln_diag_split(n: int) -> ReductiveTriple:
    g = make_sl(n)
    off = n * (n - 1)
    I = xl.eye(g.dim)
    return ReductiveTriple(g, I[:off], I[off:])


def make_abelian(n: int) -> LieAlgebra:
    return LieAlgebra(xl.zeros(n, n, n), f"ab{n}")


def h_star() -> LinearFunctional:
    """The functional on sl2 (basis e, f, h) with h -> 1."""
    return LinearFunctional.of([0, 0, 1])


def make_nontight_rep(g: LieAlgebra, lam: LinearFunctional, v_dim: int = 1) -> LYRep:
    """rho(x) = lambda(x) id, theta = 0, delta(x, y) = -lambda([x, y]) id over g_{1,0}."""
    T = make_g_alpha_beta(g, 1, 0)
    n = g.dim
    I = xl.eye(v_dim)
    lv = lam.vector
    rho = np.array([I * lv[i] for i in range(n)], dtype=object).reshape(n, v_dim, v_dim)
    lb = xl.einsum("ijk,k->ij", g.bracket, lv)
    delta = np.array([[-I * lb[i, j] for j in range(n)] for i in range(n)], dtype=object).reshape(n, n, v_dim, v_dim)
    return LYRep(T, rho, xl.zeros(n, n, v_dim, v_dim), delta)


def make_rank2_nontight_rep(g: LieAlgebra, lam: LinearFunctional) -> LYRep:
    """rho(x) = [[0, lambda(x)], [0, 0]], theta = 0 and delta from the defining identity."""
    T = make_g_alpha_beta(g, 1, 0)
    n = g.dim
    lv = lam.vector
    rho = xl.zeros(n, 2, 2)
    for i in range(n):
        rho[i, 0, 1] = lv[i]
    return LYRep(T, rho, xl.zeros(n, n, 2, 2))


def make_matrix_example(part: str = "M") -> TripleRep:
    """The 3-dim representation of (Q, Q, 0) and its named sub/quotients M1, M2, M/M1, M/M2."""
    g = make_abelian(1)
    rt = ReductiveTriple(g, xl.eye(1), xl.zeros(0, 1))
    A = xl.qarray([[[0, 0, 1], [0, 0, 0], [0, 1, 0]]])
    M = TripleRep(rt, 2, A)
    n1 = Subspace.coordinate(2, [0])
    if part == "M":
        return M
    if part == "M1":
        return sub_triple_rep(M, n1, Subspace.zero(1))
    if part == "M2":
        return sub_triple_rep(M, n1, Subspace.full(1))
    if part == "M/M1":
        return quotient_triple_rep(M, n1, Subspace.zero(1))
    if part == "M/M2":
        return quotient_triple_rep(M, n1, Subspace.full(1))
    raise PreconditionError(f"unknown part {part!r}; expected M, M1, M2, M/M1 or M/M2")


def make_core_quandle_pair(g: LieAlgebra) -> LocalRegularSPair:
    n = g.dim
    gg = direct_sum(g, g, label=f"{g.label}+{g.label}" if g.label else None)
    phi = xl.zeros(2 * n, 2 * n)
    phi[:n, n:] = xl.eye(n)
    phi[n:, :n] = xl.eye(n)
    return LocalRegularSPair(gg, phi)


def make_sl2_ad_diag() -> LocalRegularSPair:
    """sl2 with phi = Ad(diag(2, 1/2)) = diag(4, 1/4, 1) in the basis (e, f, h)."""
    phi = xl.qarray([[4, 0, 0], [0, xl.Q(1, 4), 0], [0, 0, 1]])
    return LocalRegularSPair(make_sl(2), phi)


def make_trivial_line(a) -> InfSManifold:
    a = xl.q(a)
    if a == 0 or a == 1:
        raise PreconditionError("sigma = a needs a != 0, 1")
    return InfSManifold(LieYamagutiAlgebra.zero(1, "line"), xl.qarray([[a]]))


def make_trivial_line_rep() -> tuple[ISMRep, InfSManifold]:
    """V = Q^2 over the trivial line with sigma = 2: rho = [[0,1],[0,0]], psi = diag(-2,-1)."""
    S = make_trivial_line(2)
    rho = xl.qarray([[[0, 1], [0, 0]]])
    r = LYRep(S.algebra, rho, xl.zeros(1, 1, 2, 2))
    return ISMRep(r, xl.qarray([[-2, 0], [0, -1]])), S


def make_ef_adjoint_rep() -> TripleRep:
    return adjoint_rep(make_sl2_ef_triple(), "mh")


def make_core_quandle_adjoint_rep(g: Optional[LieAlgebra] = None) -> tuple[SPairRep, LocalRegularSPair]:
    """Adjoint module of g + g with M_n = m, M_s = h and psi_tilde = phi."""
    from .liealg import associated_triple

    p = make_core_quandle_pair(g or make_sl(2))
    rt, _ = associated_triple(p)
    tr = adjoint_rep(rt, "mh")
    P = rt.adapted.T
    psi = xl.invert(P).dot(p.phi).dot(P)
    return SPairRep(tr, psi), p


# name -> (builder taking string params, kind, description)
@dataclass(frozen=True)
class CatalogEntry:
    name: str
    kind: str
    params: str
    description: str
    build: Callable = field(compare=False)


def _lie_by_name(name: str) -> LieAlgebra:
    if name.startswith("sl") and name[2:].isdigit():
        return make_sl(int(name[2:]))
    raise PreconditionError(f"unknown Lie algebra {name!r}; expected sl<n>")


def _functional(params, n):
    if not params:
        if n != 3:
            raise PreconditionError("default functional is h* on sl2")
        return h_star()
    if len(params) != n:
        raise PreconditionError(f"functional needs {n} coefficients")
    return LinearFunctional.of([xl.parse_rational(p) for p in params])


def _no_params(params):
    if params:
        raise PreconditionError("entry takes no parameters")


def _int_param(params, default: int) -> int:
    if not params:
        return default
    if len(params) != 1 or not params[0].isdigit():
        raise PreconditionError("expected a single positive integer parameter")
    return int(params[0])


def _build_g_alpha_beta(params, seed):
    if len(params) != 3:
        raise PreconditionError("expected: <sl2|sl3> alpha beta")
    return make_g_alpha_beta(_lie_by_name(params[0]), xl.parse_rational(params[1]), xl.parse_rational(params[2]))


def _build_fixed(maker):
    def build(params, seed):
        _no_params(params)
        return maker()
    return build


def _build_random(params, seed):
    from .reps.generate import random_catalog_rep

    if len(params) > 1:
        raise PreconditionError("expected at most one parameter: g11, sl3 or core")
    return random_catalog_rep(params[0] if params else "g11", seed)


ENTRIES = [
    CatalogEntry("sl", "lie", "n", "sl_n with elementary-matrix basis",
                 lambda p, s: make_sl(_int_param(p, 2))),
    CatalogEntry("g-alpha-beta", "ly", "<sl2|sl3> alpha beta",
                 "g with x*y = alpha[x,y] and [x,y,z] = beta[[x,y],z]", _build_g_alpha_beta),
    CatalogEntry("sl2-ef-triple", "triple", "", "(sl2, <e,f>, <h>)", _build_fixed(make_sl2_ef_triple)),
    CatalogEntry("sln-diag-split", "triple", "n", "(sl_n, off-diagonal part, diagonal part)",
                 lambda p, s: make_sln_diag_split(_int_param(p, 3))),
    CatalogEntry("core-quandle", "spair", "[sl2|sl3]", "(g + g, swap), infinitesimal core quandle",
                 lambda p, s: make_core_quandle_pair(_lie_by_name(p[0] if p else "sl2"))),
    CatalogEntry("sl2-ad-diag", "spair", "", "sl2 with phi = Ad diag(2, 1/2) = diag(4, 1/4, 1)",
                 _build_fixed(make_sl2_ad_diag)),
    CatalogEntry("trivial-line", "ism", "[a]", "trivial line with sigma = a (default 2)",
                 lambda p, s: make_trivial_line(xl.parse_rational(p[0]) if p else 2)),
    CatalogEntry("trivial-line-rep", "ismrep", "", "2-dim ISM representation of the trivial line with a = 2",
                 _build_fixed(make_trivial_line_rep)),
    CatalogEntry("nontight-rep", "lyrep", "[lambda coefficients]",
                 "lambda-representation of g_{1,0}(sl2); default lambda = h*",
                 lambda p, s: make_nontight_rep(make_sl(2), _functional(p, 3))),
    CatalogEntry("rank2-nontight-rep", "lyrep", "[lambda coefficients]",
                 "rank-2 extension of the trivial representation by itself over g_{1,0}(sl2)",
                 lambda p, s: make_rank2_nontight_rep(make_sl(2), _functional(p, 3))),
    CatalogEntry("matrix-example", "triplerep", "[M|M1|M2|M/M1|M/M2]",
                 "3-dim representation of (Q, Q, 0) and its sub/quotient representations",
                 lambda p, s: make_matrix_example(p[0] if p else "M")),
    CatalogEntry("ef-adjoint-rep", "triplerep", "", "adjoint representation of (sl2, <e,f>, <h>)",
                 _build_fixed(make_ef_adjoint_rep)),
    CatalogEntry("core-quandle-adjoint-rep", "spairrep", "", "adjoint s-pair representation of (sl2 + sl2, swap)",
                 _build_fixed(make_core_quandle_adjoint_rep)),
    CatalogEntry("random-rep", "triplerep|spairrep", "[g11|sl3|core]",
                 "seeded random representation (effective and minimal)", _build_random),
]

BY_NAME = {e.name: e for e in ENTRIES}


def build(name: str, params=(), seed: Optional[int] = None):
    if name not in BY_NAME:
        raise PreconditionError(f"unknown catalog entry {name!r}")
    return BY_NAME[name].build(list(params), seed)
