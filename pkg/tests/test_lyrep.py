import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from lycas import exactlin as xl
from lycas.catalog import (
    LinearFunctional,
    h_star,
    make_core_quandle_adjoint_rep,
    make_ef_adjoint_rep,
    make_g_alpha_beta,
    make_rank2_nontight_rep,
    make_sl,
    make_trivial_line,
)
from lycas.errors import ValidationError
from lycas.exactlin import Subspace
from lycas.lyalg import InfSManifold, check_ly_axioms
from lycas.reps.functors import functor_rism, functor_rly
from lycas.reps.lyrep import (
    ISMRep,
    LYRep,
    check_extension,
    check_rism,
    check_rly,
    delta_default,
    extension_algebra,
    is_invariant_subspace,
    quotient_rep,
    rep_from_extension,
    sub_rep,
)

SL2 = make_sl(2)
G10 = make_g_alpha_beta(SL2, 1, 0)
SL2_C = oracles.sl_structure_constants(2)


def test_zero_dimensional_rep_passes():
    r = LYRep(G10, xl.zeros(3, 0, 0), xl.zeros(3, 3, 0, 0))
    assert r.v_dim == 0 and check_rly(r).ok


def test_lambda_rep_passes(lam_rep):
    rep = check_rly(lam_rep)
    assert rep.ok and [c.name for c in rep] == [f"RLY{i}" for i in range(1, 7)]


def test_delta_default_zero():
    assert xl.is_zero(delta_default(G10, xl.zeros(3, 2, 2), xl.zeros(3, 3, 2, 2)))


def test_delta_default_lambda(lam_rep):
    # delta(x, y) = -lambda([x, y]) for lambda = h*
    for i in range(3):
        for j in range(3):
            assert lam_rep.delta[i, j, 0, 0] == -xl.q(SL2_C[i][j][2])


def test_delta_default_matches_h_action_for_adjoint_rep():
    tr = make_ef_adjoint_rep()
    r = functor_rly(tr)
    assert xl.is_zero(r.delta - delta_default(r.algebra, r.rho, r.theta))


def test_broken_theta_fails_with_witness(lam_rep):
    theta = xl.zeros(3, 3, 1, 1)
    theta[0, 2, 0, 0] = xl.Q(1)
    r = LYRep(G10, lam_rep.rho, theta)
    rep = check_rly(r)
    assert not rep.ok and rep.failures[0].witness is not None


def test_extension_of_zero_rep_is_T():
    ext = extension_algebra(LYRep(G10, xl.zeros(3, 0, 0), xl.zeros(3, 3, 0, 0)))
    assert ext.algebra.same_structure(G10)


def test_extension_lambda(lam_rep):
    ext = extension_algebra(lam_rep)
    Tt = ext.algebra
    assert Tt.dim == 4 and check_extension(ext).ok
    pV = xl.zeros(4, 4)
    pV[3, 3] = xl.Q(1)
    for i in range(4):
        for j in range(4):
            lam = xl.q(SL2_C[i][j][2]) if i < 3 and j < 3 else 0
            assert xl.is_zero(Tt.d_matrix(i, j) + lam * pV)


def test_extension_of_adjoint_rly():
    r = functor_rly(make_ef_adjoint_rep())
    ext = extension_algebra(r)
    assert ext.algebra.dim == 4 and check_ly_axioms(ext.algebra).ok


def test_rep_from_extension_roundtrip(lam_rep):
    for r in (lam_rep, functor_rly(make_ef_adjoint_rep()), make_rank2_nontight_rep(SL2, h_star())):
        ext = extension_algebra(r)
        N, n = ext.algebra.dim, ext.n
        back = rep_from_extension(ext.algebra, Subspace.coordinate(N, range(n, N)), Subspace.coordinate(N, range(n)))
        assert back.same_data(r)


def test_rep_from_extension_lambda_values(lam_rep):
    ext = extension_algebra(lam_rep)
    back = rep_from_extension(ext.algebra, Subspace.coordinate(4, [3]), Subspace.coordinate(4, range(3)))
    assert [back.rho[i, 0, 0] for i in range(3)] == [0, 0, 1]
    assert xl.is_zero(back.theta)
    assert back.delta[0, 1, 0, 0] == -1


def test_rep_from_extension_rejects_non_abelian():
    with pytest.raises(ValidationError) as e:
        rep_from_extension(G10, Subspace.coordinate(3, [0, 1]), Subspace.coordinate(3, [2]))
    assert e.value.report is not None


def test_rism_zero_data():
    S = make_trivial_line(2)
    r = LYRep(S.algebra, xl.zeros(1, 2, 2), xl.zeros(1, 1, 2, 2))
    assert check_rism(ISMRep(r, xl.qarray([[3, 1], [0, 5]])), S).ok


def test_rism_lambda_fails_rism1(lam_rep):
    # sigma = 2 id gives rho(sigma h) = 2 while psi rho(h) psi^-1 = 1
    rep = check_rism(ISMRep(lam_rep, xl.eye(1)), InfSManifold(G10, xl.eye(3) * 2))
    assert not rep["RISM1"].ok and rep["RISM1"].witness is not None


def test_rism_core_quandle_adjoint():
    sr, p = make_core_quandle_adjoint_rep()
    ir, S = functor_rism(sr, p)
    rep = check_rism(ir, S)
    assert rep.ok and rep.info["regular"]
    assert xl.is_zero(ir.psi + xl.eye(ir.rep.v_dim))


def test_rism_singular_psi_raises():
    S = make_trivial_line(2)
    r = LYRep(S.algebra, xl.zeros(1, 1, 1), xl.zeros(1, 1, 1, 1))
    with pytest.raises(ValidationError):
        check_rism(ISMRep(r, xl.zeros(1, 1)), S)


def test_sub_and_quotient_of_rank2():
    r = make_rank2_nontight_rep(SL2, h_star())
    W = Subspace.coordinate(2, [0])
    assert is_invariant_subspace(r, W)
    assert not is_invariant_subspace(r, Subspace.coordinate(2, [1]))
    sub = sub_rep(r, W)
    quo = quotient_rep(r, W)
    assert sub.v_dim == 1 and quo.v_dim == 1
    assert check_rly(sub).ok and check_rly(quo).ok
    assert xl.is_zero(sub.rho) and xl.is_zero(quo.rho)


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=3))
def test_lambda_reps_satisfy_axioms(coeffs):
    from lycas.catalog import make_nontight_rep

    lam = LinearFunctional.of(coeffs)
    assert check_rly(make_nontight_rep(SL2, lam)).ok
    assert check_rly(make_rank2_nontight_rep(SL2, lam)).ok
