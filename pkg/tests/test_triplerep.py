from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from lycas import exactlin as xl
from lycas.catalog import (
    make_core_quandle_adjoint_rep,
    make_ef_adjoint_rep,
    make_matrix_example,
    make_sl,
    make_sl2_ef_triple,
)
from lycas.errors import ShapeError, ValidationError
from lycas.exactlin import Subspace
from lycas.reps.generate import random_g11_rep, random_split_basis, random_unimodular
from lycas.reps.triplerep import (
    SPairRep,
    TripleRep,
    adjoint_rep,
    check_spair_rep,
    check_triple_rep,
    conjugate,
    direct_sum,
    effectivize,
    minimalize,
    quotient_triple_rep,
    same_rep,
    sub_triple_rep,
    tensor_product,
    trivial_rep,
)

PARTS = {
    # part: (n_dim, s_dim, effective, minimal)
    "M": (2, 1, True, True),
    "M1": (1, 0, True, True),
    "M2": (1, 1, True, False),
    "M/M1": (1, 1, False, True),
    "M/M2": (1, 0, True, True),
}


@pytest.mark.parametrize("part", list(PARTS))
def test_matrix_example_flags(part):
    tr = make_matrix_example(part)
    assert check_triple_rep(tr).ok
    assert (tr.n_dim, tr.s_dim, tr.effective, tr.minimal) == PARTS[part]


def test_matrix_example_subquotient_matrices():
    assert xl.is_zero(make_matrix_example("M2").action[0] - xl.qarray([[0, 1], [0, 0]]))
    assert xl.is_zero(make_matrix_example("M/M1").action[0] - xl.qarray([[0, 0], [1, 0]]))


def test_minimalize_M2():
    out = minimalize(make_matrix_example("M2"))
    assert out.s_dim == 0 and out.n_dim == 1
    assert out.effective and out.minimal and check_triple_rep(out).ok


def test_effectivize_M_over_M1():
    out = effectivize(make_matrix_example("M/M1"))
    assert (out.n_dim, out.s_dim) == (1, 0)
    assert out.effective and out.minimal and xl.is_zero(out.action)


def test_effectivize_minimalize_identity_on_em():
    M = make_matrix_example("M")
    assert effectivize(M) is M and minimalize(M) is M


def test_matrix_non_invariant_subspace_rejected():
    M = make_matrix_example("M")
    with pytest.raises(ValidationError):
        sub_triple_rep(M, Subspace.coordinate(2, [1]), Subspace.zero(1))


def test_bad_module_fails_with_witness(ef_triple):
    A = adjoint_rep(ef_triple, "g").action.copy()
    A[2] = -A[2]
    rep = check_triple_rep(TripleRep(ef_triple, 3, A))
    assert not rep["module"].ok and rep["module"].witness is not None


def test_split_violations(ef_triple):
    # M_n = <e>, M_s = <f, h>: e . f = h lands in M_s
    ad = adjoint_rep(ef_triple, "g")
    rep = check_triple_rep(TripleRep(ef_triple, 1, ad.action))
    assert not rep["m M_s in M_n"].ok


def test_adjoint_and_trivial(ef_triple):
    for split in ("mh", "g"):
        assert check_triple_rep(adjoint_rep(ef_triple, split)).ok
    ad = adjoint_rep(ef_triple, "mh")
    assert (ad.n_dim, ad.s_dim) == (2, 1) and ad.effective and ad.minimal
    t = trivial_rep(ef_triple, 2, 1)
    assert check_triple_rep(t).ok and not t.effective and not t.minimal
    assert trivial_rep(ef_triple, 2).effective


def test_shape_errors(ef_triple):
    with pytest.raises(ShapeError):
        TripleRep(ef_triple, 1, xl.zeros(2, 2, 2))
    with pytest.raises(ShapeError):
        TripleRep(ef_triple, 3, xl.zeros(3, 2, 2))


def test_direct_sum_orders_n_first(ef_triple):
    a, b = adjoint_rep(ef_triple, "mh"), trivial_rep(ef_triple, 1, 1)
    s = direct_sum(a, b)
    assert (s.n_dim, s.s_dim) == (3, 2) and check_triple_rep(s).ok
    assert xl.is_zero(s.action[:, :2, :2] - a.action[:, :2, :2])
    assert xl.is_zero(s.action[:, 3, 3]) and xl.is_zero(s.action[:, 2, :])


def test_tensor_product_is_rep(ef_triple):
    a = adjoint_rep(ef_triple, "mh")
    t = tensor_product(a, trivial_rep(ef_triple, 1, 1))
    assert t.dim == 6 and t.s_dim == 1 and check_triple_rep(t).ok
    aa = tensor_product(a, a)
    assert aa.dim == 9 and aa.s_dim == 1 and check_triple_rep(aa).ok


def test_sub_and_quotient_of_direct_sum(ef_triple):
    a = adjoint_rep(ef_triple, "mh")
    s = direct_sum(a, trivial_rep(ef_triple, 1))
    sub = sub_triple_rep(s, Subspace.coordinate(3, [0, 1]), Subspace.full(1))
    assert same_rep(sub, a)
    quo = quotient_triple_rep(s, Subspace.coordinate(3, [0, 1]), Subspace.full(1))
    assert quo.dim == 1 and xl.is_zero(quo.action)


def test_spair_rep_checks():
    sr, p = make_core_quandle_adjoint_rep()
    rep = check_spair_rep(sr, p)
    assert rep.ok and rep.info["regular"]
    bad = SPairRep(sr.rep, xl.eye(sr.rep.dim))
    rep = check_spair_rep(bad, p)
    assert not rep["phi(x) psi_tilde = psi_tilde x"].ok
    assert rep["psi_tilde = id on M_s"].ok


def test_spair_rep_shape_check():
    sr, p = make_core_quandle_adjoint_rep()
    with pytest.raises(ShapeError):
        SPairRep(sr.rep, xl.eye(2))
    from lycas.catalog import make_sl2_ad_diag

    with pytest.raises(ShapeError):
        check_spair_rep(sr, make_sl2_ad_diag())


def test_ef_adjoint_catalog_entry():
    tr = make_ef_adjoint_rep()
    assert check_triple_rep(tr).ok and tr.effective and tr.minimal


# ----------------------------------------------------------------- properties

@given(st.integers(0, 10_000))
def test_unimodular_has_det_one(seed):
    P = random_unimodular(4, np.random.default_rng(seed))
    assert oracles.det([[Fraction(int(x.p), int(x.q)) for x in row] for row in P]) == 1


@given(st.integers(0, 10_000))
def test_conjugation_preserves_module_and_flags(seed):
    rt = make_sl2_ef_triple()
    base = direct_sum(adjoint_rep(rt, "mh"), trivial_rep(rt, 1, 1))
    tr = random_split_basis(base, np.random.default_rng(seed))
    assert check_triple_rep(tr).ok
    assert (tr.effective, tr.minimal) == (base.effective, base.minimal)
    assert xl.rank(tr.s_to_hom) == xl.rank(base.s_to_hom)


@pytest.mark.parametrize("seed", range(5))
def test_effectivize_minimalize_random(seed):
    raw = random_g11_rep(seed, em=False)
    assert check_triple_rep(raw).ok
    out = effectivize(minimalize(raw))
    assert out.n_dim == raw.n_dim
    assert out.effective and out.minimal and check_triple_rep(out).ok


def test_conjugate_roundtrip(ef_triple):
    tr = adjoint_rep(ef_triple, "mh")
    P = xl.qarray([[1, 2, 0], [0, 1, 0], [0, 0, 3]])
    back = conjugate(conjugate(tr, P), xl.invert(P))
    assert same_rep(back, tr)


def test_sl2_natural_module_is_rep():
    from lycas.catalog import sl_matrix_basis
    from lycas.liealg import ReductiveTriple
    from lycas.reps.generate import natural_rep

    rt = ReductiveTriple(make_sl(2), xl.eye(3), xl.zeros(0, 3))
    assert check_triple_rep(natural_rep(rt, sl_matrix_basis(2))).ok
