"""Seeded random representations.

The module axiom is quadratic in the action, so random representations are
assembled from known building blocks (trivial, adjoint, natural modules and
tensor products of these) and then hidden behind a random unimodular change of
basis that respects the M_n + M_s split.
"""

from __future__ import annotations

import numpy as np

from .. import exactlin as xl
from ..liealg import LocalRegularSPair, ReductiveTriple, associated_triple, enveloping
from .triplerep import (
    SPairRep,
    TripleRep,
    adjoint_rep,
    conjugate,
    conjugate_spair,
    direct_sum,
    direct_sum_spair,
    effectivize,
    minimalize,
    tensor_product,
    trivial_rep,
)

DEFAULT_SEED = 1729


def random_unimodular(k: int, rng: np.random.Generator) -> np.ndarray:
    """Integer matrix of determinant 1 built from random elementary row operations."""
    P = xl.eye(k)
    if k < 2:
        return P
    for _ in range(3 * k):
        i, j = rng.choice(k, size=2, replace=False)
        c = int(rng.choice([-2, -1, 1, 2]))
        P[i] = P[i] + c * P[j]
    return P


def random_split_basis(tr: TripleRep, rng: np.random.Generator) -> TripleRep:
    k, s = tr.n_dim, tr.s_dim
    P = xl.zeros(tr.dim, tr.dim)
    P[:k, :k] = random_unimodular(k, rng)
    P[k:, k:] = random_unimodular(s, rng)
    return conjugate(tr, P)


def natural_rep(rt: ReductiveTriple, matrices, s_index=None) -> TripleRep:
    """The module given by ``matrices[i]`` for g's basis, with M_s = <e_{s_index}> if given."""
    A = xl.qarray(np.array(matrices, dtype=object))
    if s_index is None:
        return TripleRep(rt, A.shape[1], A)
    order = [j for j in range(A.shape[1]) if j != s_index] + [s_index]
    return TripleRep(rt, A.shape[1] - 1, A[:, order][:, :, order])


def dual_rep(tr: TripleRep) -> TripleRep:
    return TripleRep(tr.triple, tr.n_dim, -tr.action.transpose(0, 2, 1))


def _pick(rng, options):
    return options[int(rng.integers(len(options)))]


def random_triple_rep(rt: ReductiveTriple, rng: np.random.Generator, extra_blocks=(),
                      max_dim: int = 14) -> TripleRep:
    """Direct sum of 1-3 random blocks, possibly tensored, in a random split-preserving basis."""
    base = [adjoint_rep(rt, "mh"), adjoint_rep(rt, "g"), trivial_rep(rt, 1), trivial_rep(rt, 1, 1)]
    base += list(extra_blocks)
    small = [b for b in base if b.dim <= 4]
    blocks = [adjoint_rep(rt, "mh")]
    total = blocks[0].dim
    for _ in range(int(rng.integers(0, 3))):
        if small and rng.random() < 0.3:
            b = tensor_product(_pick(rng, base), _pick(rng, small))
        else:
            b = _pick(rng, base)
        if total + b.dim > max_dim:
            continue
        blocks.append(b)
        total += b.dim
    order = rng.permutation(len(blocks))
    tr = direct_sum(*(blocks[i] for i in order))
    return random_split_basis(tr, rng)


def random_em_triple_rep(rt: ReductiveTriple, rng: np.random.Generator, extra_blocks=(),
                         max_dim: int = 14) -> TripleRep:
    """Random representation made effective and minimal (minimalize, then effectivize)."""
    return effectivize(minimalize(random_triple_rep(rt, rng, extra_blocks, max_dim)))


def sl3_natural_blocks(rt: ReductiveTriple) -> list:
    from ..catalog import sl_matrix_basis

    mats = sl_matrix_basis(3)
    out = []
    for s in range(3):
        nat = natural_rep(rt, mats, s)
        out += [nat, dual_rep(nat)]
    return out


def g11_triple() -> ReductiveTriple:
    from ..catalog import make_g_alpha_beta, make_sl

    return enveloping(make_g_alpha_beta(make_sl(2), 1, 1)).triple


def random_g11_rep(seed: int, em: bool = True) -> TripleRep:
    rng = np.random.default_rng(seed)
    rt = g11_triple()
    return (random_em_triple_rep if em else random_triple_rep)(rt, rng)


def random_sl3_rep(seed: int, em: bool = True) -> TripleRep:
    from ..catalog import make_sln_diag_split

    rng = np.random.default_rng(seed)
    rt = make_sln_diag_split(3)
    extra = sl3_natural_blocks(rt)
    return (random_em_triple_rep if em else random_triple_rep)(rt, rng, extra, max_dim=12)


_SCALARS = [xl.Q(2), xl.Q(3), xl.Q(-2), xl.Q(1, 2), xl.Q(-1, 3), xl.Q(5, 2)]


def random_core_spair_rep(seed: int, g=None) -> tuple[SPairRep, LocalRegularSPair]:
    """Random regular s-pair representation of (g + g, swap); every block is effective and minimal."""
    from ..catalog import make_core_quandle_pair, make_sl, sl_matrix_basis

    rng = np.random.default_rng(seed)
    g = g or make_sl(2)
    p = make_core_quandle_pair(g)
    rt, _ = associated_triple(p)
    n = g.dim
    P = rt.adapted.T

    def adjoint_mh():
        return SPairRep(adjoint_rep(rt, "mh"), xl.invert(P).dot(p.phi).dot(P))

    def adjoint_g():
        c = _pick(rng, _SCALARS)
        return SPairRep(adjoint_rep(rt, "g"), p.phi * c)

    def trivial():
        c = _pick(rng, _SCALARS)
        return SPairRep(trivial_rep(rt, 1), xl.qarray([[c]]))

    def natural_pair():
        mats = sl_matrix_basis(int(round(np.sqrt(n + 1))))
        k = mats[0].shape[0]
        A = xl.zeros(2 * n, 2 * k, 2 * k)
        for i in range(n):
            A[i, :k, :k] = mats[i]
            A[n + i, k:, k:] = mats[i]
        swap = xl.zeros(2 * k, 2 * k)
        swap[:k, k:] = xl.eye(k)
        swap[k:, :k] = xl.eye(k)
        c = _pick(rng, [x for x in _SCALARS])
        return SPairRep(TripleRep(rt, 2 * k, A), swap * c)

    makers = [adjoint_mh, adjoint_g, trivial, natural_pair]
    blocks = [adjoint_mh()]
    for _ in range(int(rng.integers(0, 3))):
        blocks.append(_pick(rng, makers)())
    order = rng.permutation(len(blocks))
    sr = direct_sum_spair(*(blocks[i] for i in order))
    k, s = sr.rep.n_dim, sr.rep.s_dim
    Q = xl.zeros(sr.rep.dim, sr.rep.dim)
    Q[:k, :k] = random_unimodular(k, rng)
    Q[k:, k:] = random_unimodular(s, rng)
    return conjugate_spair(sr, Q), p


def random_catalog_rep(target: str, seed=None):
    seed = DEFAULT_SEED if seed is None else seed
    if target == "g11":
        return random_g11_rep(seed)
    if target == "sl3":
        return random_sl3_rep(seed)
    if target == "core":
        return random_core_spair_rep(seed)
    from ..errors import PreconditionError

    raise PreconditionError(f"unknown random target {target!r}; expected g11, sl3 or core")
