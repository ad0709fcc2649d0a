from fractions import Fraction

import pytest

import oracles
from lycas import exactlin as xl
from lycas.catalog import (
    LinearFunctional,
    make_core_quandle_adjoint_rep,
    make_ef_adjoint_rep,
    make_matrix_example,
    make_nontight_rep,
    make_sl,
    make_trivial_line_rep,
)
from lycas.errors import NotTightError, PreconditionError, ValidationError
from lycas.reps.functors import (
    functor_rism,
    functor_rlrs,
    functor_rly,
    functor_rrt,
    functor_rrt_full,
    roundtrip_alpha,
    roundtrip_beta,
    spair_roundtrip_alpha,
    spair_roundtrip_beta,
    theta2_family,
)
from lycas.reps.generate import random_core_spair_rep, random_g11_rep, random_sl3_rep
from lycas.reps.lyrep import check_rism, check_rly
from lycas.reps.triplerep import check_spair_rep, check_triple_rep, trivial_rep

SL2_C = oracles.sl_structure_constants(2)
E, F, H = 0, 1, 2


def fr(a):
    return [[Fraction(int(x.p), int(x.q)) for x in row] for row in a]


def ad_sl2(x):
    """ad(e_x) on column vectors from the plain structure constants."""
    return [[SL2_C[x][j][k] for j in range(3)] for k in range(3)]


def test_rly_of_ef_adjoint_matches_hand_computation():
    r = functor_rly(make_ef_adjoint_rep())
    m, s = [E, F], H
    for a, x in enumerate(m):
        # rho(x) = n-part of ad x restricted to M_n
        want = [[ad_sl2(x)[u][v] for v in m] for u in m]
        assert fr(r.rho[a]) == want
        for b, y in enumerate(m):
            # theta(x, y) v = y . (x . v)_s
            want = [[ad_sl2(x)[s][v] * ad_sl2(y)[u][s] for v in m] for u in m]
            assert fr(r.theta[a, b]) == want
            # delta(x, y) = [x, y]_h acting on M_n
            c = SL2_C[x][y][H]
            want = [[c * ad_sl2(H)[u][v] for v in m] for u in m]
            assert fr(r.delta[a, b]) == want
    assert check_rly(r).ok


def test_rly_of_matrix_example():
    r = functor_rly(make_matrix_example("M"))
    assert r.algebra.dim == 1
    assert xl.is_zero(r.rho) and xl.is_zero(r.delta)
    assert xl.is_zero(r.theta[0, 0] - xl.qarray([[0, 1], [0, 0]]))


def test_rrt_dimensions_follow_theta2_rank():
    for r in (functor_rly(make_ef_adjoint_rep()), functor_rly(make_matrix_example("M")),
              functor_rly(random_g11_rep(2)), make_trivial_line_rep()[0].rep):
        res = functor_rrt_full(r)
        assert res.rep.n_dim == r.v_dim
        assert res.rep.s_dim == xl.rank(theta2_family(r))
        assert check_triple_rep(res.rep).ok
        assert res.rep.effective and res.rep.minimal


def test_rrt_rejects_nontight(lam_rep):
    with pytest.raises(NotTightError) as e:
        functor_rrt(lam_rep)
    assert e.value.witness is not None


def test_alpha_on_examples(lam_rep):
    for r in (functor_rly(make_ef_adjoint_rep()), functor_rly(make_matrix_example("M")),
              make_trivial_line_rep()[0].rep, make_nontight_rep(make_sl(2), LinearFunctional.of([0, 0, 0]))):
        a = roundtrip_alpha(r)
        assert a.ok and a.rho_equal and a.theta_equal and a.delta_equal and a.algebra_equal


def test_beta_on_ef_adjoint():
    b = roundtrip_beta(make_ef_adjoint_rep())
    assert b.ok and b.bijective and b.intertwining and b.identity_on_n
    # s = h goes to x -> -(x . h)_n, i.e. e -> 2e, f -> -2f, which is -1 times the chosen basis theta_2(e, f)
    assert xl.is_zero(b.beta - xl.qarray([[1, 0, 0], [0, 1, 0], [0, 0, -1]]))


def test_beta_on_matrix_example():
    b = roundtrip_beta(make_matrix_example("M"))
    assert b.ok and b.bijective
    assert xl.is_zero(b.beta - xl.qarray([[1, 0, 0], [0, 1, 0], [0, 0, -1]]))


def test_beta_preconditions(ef_triple):
    with pytest.raises(PreconditionError):
        roundtrip_beta(make_matrix_example("M2"))
    with pytest.raises(PreconditionError):
        roundtrip_beta(trivial_rep(ef_triple, 1, 1))


@pytest.mark.parametrize("seed", range(6))
def test_alpha_beta_random_g11(seed):
    tr = random_g11_rep(seed)
    b = roundtrip_beta(tr)
    assert b.ok
    assert roundtrip_alpha(functor_rly(tr)).ok


@pytest.mark.parametrize("seed", range(2))
def test_alpha_beta_random_sl3(seed):
    tr = random_sl3_rep(seed)
    assert roundtrip_beta(tr).ok
    assert roundtrip_alpha(functor_rly(tr)).ok


# ----------------------------------------------------------------- s-pair functors

def test_rism_core_adjoint():
    sr, p = make_core_quandle_adjoint_rep()
    ir, S = functor_rism(sr, p)
    assert check_rism(ir, S).ok
    assert xl.is_zero(S.sigma + xl.eye(3))


def test_rlrs_core_adjoint_roundtrip():
    sr, p = make_core_quandle_adjoint_rep()
    ir, S = functor_rism(sr, p)
    sr2, p2 = functor_rlrs(ir, S)
    assert check_spair_rep(sr2, p2).ok
    assert spair_roundtrip_alpha(ir, S).ok
    assert spair_roundtrip_beta(sr, p).ok


def test_rlrs_trivial_line():
    ir, S = make_trivial_line_rep()
    sr, pair = functor_rlrs(ir, S)
    assert check_spair_rep(sr, pair).ok
    assert spair_roundtrip_alpha(ir, S).ok


def test_rlrs_rejects_lambda(lam_rep):
    from lycas.lyalg import InfSManifold
    from lycas.reps.lyrep import ISMRep

    T = lam_rep.algebra
    # every automorphism of sl2 fixes a line, so g_{1,0} carries no s-manifold structure and the
    # representation gate rejects sigma = -id before tightness is reached
    S = InfSManifold(T, -xl.eye(3))
    with pytest.raises(ValidationError) as e:
        functor_rlrs(ISMRep(lam_rep, xl.qarray([[2]])), S)
    assert "RISM1" in str(e.value)


@pytest.mark.parametrize("seed", range(5))
def test_spair_roundtrips_random_core(seed):
    sr, p = random_core_spair_rep(seed)
    assert check_spair_rep(sr, p).ok
    ir, S = functor_rism(sr, p)
    assert spair_roundtrip_alpha(ir, S).ok
    assert spair_roundtrip_beta(sr, p).ok
