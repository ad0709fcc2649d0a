from fractions import Fraction

import pytest
from flint import fmpq
from hypothesis import given
from hypothesis import strategies as st

import oracles
from lycas import exactlin as xl
from lycas.catalog import (
    make_abelian,
    make_core_quandle_pair,
    make_g_alpha_beta,
    make_sl,
    make_sl2_ad_diag,
    make_sl2_ef_triple,
    make_sln_diag_split,
    make_trivial_line,
)
from lycas.exactlin import Subspace
from lycas.liealg import (
    LieAlgebra,
    LocalRegularSPair,
    ReductiveTriple,
    associated_triple,
    canonical_hom,
    center,
    check_jacobi,
    check_lie_hom,
    check_lrsp,
    check_reductive_triple,
    check_triple_hom,
    derived_subalgebra,
    direct_sum,
    enveloping,
    induced_L_sigma,
    induced_ly,
    is_effective_triple,
    is_L_semisimple,
    is_minimal_triple,
    is_semisimple,
    killing_form,
    l_sub,
)
from lycas.lyalg import InfSManifold, LYHom, check_hom, check_ism, check_ly_axioms

SL2 = make_sl(2)


def to_fractions(a):
    return [[Fraction(int(x.p), int(x.q)) for x in row] for row in a]


def sign_corrupted_sl2():
    c = xl.zeros(3, 3, 3)
    c[0, 1, 2], c[1, 0, 2] = 1, -1
    c[2, 0, 0], c[0, 2, 0] = 2, -2
    c[2, 1, 1], c[1, 2, 1] = 2, -2  # [h, f] = +2f
    return LieAlgebra(c)


# ----------------------------------------------------------------- Lie algebras

def test_sl2_structure_matches_matrix_oracle():
    assert to_fractions(SL2.bracket.reshape(9, 3)) == [row for pair in oracles.sl_structure_constants(2) for row in pair]


def test_jacobi_examples():
    assert check_jacobi(SL2).ok
    assert check_jacobi(make_abelian(3)).ok
    rep = check_jacobi(sign_corrupted_sl2())
    assert rep["antisymmetry"].ok
    assert rep["Jacobi"].witness == (0, 1, 2)


def test_killing_forms():
    assert xl.is_zero(killing_form(make_abelian(2)))
    assert xl.is_zero(killing_form(SL2) - xl.qarray([[0, 4, 0], [4, 0, 0], [0, 0, 8]]))
    assert to_fractions(killing_form(make_sl(3))) == oracles.killing(oracles.sl_structure_constants(3))
    gg = direct_sum(SL2, SL2)
    k = killing_form(SL2)
    want = xl.zeros(6, 6)
    want[:3, :3], want[3:, 3:] = k, k
    assert xl.is_zero(killing_form(gg) - want)


def test_semisimplicity():
    assert oracles.det(oracles.killing(oracles.sl_structure_constants(2))) == -128
    assert is_semisimple(SL2) and is_semisimple(make_sl(3))
    assert not is_semisimple(make_abelian(1))
    assert not is_semisimple(enveloping(make_g_alpha_beta(SL2, 1, fmpq(-1, 4))).g)


def test_derived_and_center():
    ab = make_abelian(2)
    assert derived_subalgebra(ab).dim == 0 and center(ab).dim == 2
    assert derived_subalgebra(SL2).dim == 3 and center(SL2).dim == 0
    g = direct_sum(SL2, make_abelian(1))
    assert derived_subalgebra(g) == Subspace.coordinate(4, range(3))
    assert center(g) == Subspace.coordinate(4, [3])


# ----------------------------------------------------------------- reductive triples

def test_reductive_triple_examples(ef_triple):
    assert check_reductive_triple(ef_triple).ok
    bad = ReductiveTriple(SL2, xl.qarray([[1, 0, 0], [0, 0, 1]]), xl.qarray([[0, 1, 0]]))
    rep = check_reductive_triple(bad)
    assert rep["h subalgebra"].ok and not rep["[h,m] in m"].ok
    assert rep["[h,m] in m"].witness == (0, 1)  # [f, h] = 2f is not in <e, h>
    assert check_reductive_triple(ReductiveTriple(SL2, xl.eye(3), xl.zeros(0, 3))).ok


def test_induced_ly_ef(ef_triple):
    T = induced_ly(ef_triple)
    assert xl.is_zero(T.binary)
    assert list(T.ternary[0, 1, 0]) == [2, 0]
    assert list(T.ternary[0, 1, 1]) == [0, -2]


def test_induced_ly_of_g_g_0_is_g10():
    T = induced_ly(ReductiveTriple(SL2, xl.eye(3), xl.zeros(0, 3)))
    assert T.same_structure(make_g_alpha_beta(SL2, 1, 0))


def test_induced_ly_sl3():
    T = make_sln_diag_split(3).induced
    assert check_ly_axioms(T).ok and not xl.is_zero(T.ternary)


def test_enveloping_examples(ef_triple):
    e10 = enveloping(make_g_alpha_beta(SL2, 1, 0))
    assert e10.g.dim == 3 and is_semisimple(e10.g)
    e11 = enveloping(make_g_alpha_beta(SL2, 1, 1))
    assert e11.g.dim == 6 and is_semisimple(e11.g)
    eef = enveloping(ef_triple.induced)
    assert eef.g.dim == 3 and canonical_hom(ef_triple).isomorphism


def test_is_L_semisimple_g00():
    T = make_g_alpha_beta(SL2, 0, 0)
    assert not is_L_semisimple(T)
    assert xl.is_zero(enveloping(T).g.bracket)


def test_l_sub_examples(ef_triple):
    full = l_sub(ef_triple, Subspace.full(2))
    assert full.subspace == Subspace.full(3) and full.is_subalgebra
    assert full.ideal is not None and full.ideal_is_ideal
    assert l_sub(ef_triple, Subspace.zero(2)).subspace.dim == 0
    rt = make_sln_diag_split(3)
    ls = l_sub(rt, Subspace.full(rt.m_dim))
    assert ls.ideal_is_ideal and ls.subspace == rt.m + Subspace.span(
        rt.g.bracket_matrix(rt.m_basis, rt.m_basis).reshape(-1, 8), 8)


def test_minimal_effective_examples(ef_triple):
    assert is_minimal_triple(ef_triple) and is_effective_triple(ef_triple)
    gg0 = ReductiveTriple(SL2, xl.eye(3), xl.zeros(0, 3))
    assert is_minimal_triple(gg0) and is_effective_triple(gg0)
    gc = ReductiveTriple(direct_sum(SL2, make_abelian(1)), xl.eye(4)[:3], xl.eye(4)[3:])
    assert not is_effective_triple(gc)


def test_canonical_hom_examples(ef_triple):
    assert canonical_hom(ReductiveTriple(SL2, xl.eye(3), xl.zeros(0, 3))).isomorphism
    gc = ReductiveTriple(direct_sum(SL2, make_abelian(1)), xl.eye(4)[:3], xl.eye(4)[3:])
    ch = canonical_hom(gc)
    assert ch.surjective and not ch.injective and ch.is_hom
    assert xl.kernel(ch.matrix) == Subspace.coordinate(4, [3])


@pytest.mark.parametrize("rt", [make_sl2_ef_triple(), make_sln_diag_split(3)], ids=["sl2-ef", "sl3-diag"])
def test_canonical_inverse_is_triple_hom(rt):
    ch = canonical_hom(rt)
    assert ch.isomorphism
    inv = xl.invert(ch.matrix)
    env = ch.envelope
    assert check_triple_hom(env.triple, rt, inv).ok
    assert check_triple_hom(rt, env.triple, ch.matrix).ok


# ----------------------------------------------------------------- s-pairs

def test_lrsp_examples():
    assert check_lrsp(make_core_quandle_pair(SL2)).ok
    assert check_lrsp(LocalRegularSPair(SL2, xl.eye(3))).ok
    rep = check_lrsp(LocalRegularSPair(make_abelian(2), xl.qarray([[1, 1], [0, 1]])))
    assert not rep["Ker(phi - 1) = generalized 1-eigenspace"].ok


def test_associated_triple_core():
    rt, S = associated_triple(make_core_quandle_pair(SL2))
    assert (rt.m_dim, rt.h_dim) == (3, 3)
    assert xl.is_zero(S.sigma + xl.eye(3))
    assert check_ism(S).ok


def test_associated_triple_identity():
    rt, S = associated_triple(LocalRegularSPair(SL2, xl.eye(3)))
    assert rt.m_dim == 0 and rt.h_dim == 3


def test_associated_triple_ad_diag():
    rt, S = associated_triple(make_sl2_ad_diag())
    assert rt.m == Subspace.coordinate(3, [0, 1]) and rt.h == Subspace.coordinate(3, [2])
    assert sorted(S.sigma[i, i] for i in range(2)) == [fmpq(1, 4), 4]


def test_core_quandle_algebra_is_g01():
    rt, S = associated_triple(make_core_quandle_pair(SL2))
    T = rt.induced
    assert xl.is_zero(T.binary)
    assert is_L_semisimple(T) and enveloping(T).g.dim == 6
    # m is the antidiagonal {(x, -x)}; its first component identifies T with g_{0,1}
    P = rt.m_basis[:, :3].T
    assert xl.is_zero(rt.m_basis[:, 3:] + rt.m_basis[:, :3])
    assert xl.invert(P) is not None
    assert check_hom(LYHom(T, make_g_alpha_beta(SL2, 0, 1), P)).ok


def test_induced_L_sigma_examples(ef_triple):
    _, S = associated_triple(make_core_quandle_pair(SL2))
    L = induced_L_sigma(S)
    want = xl.eye(6)
    want[:3, :3] = -xl.eye(3)
    assert xl.is_zero(L - want)
    line = make_trivial_line(3)
    assert xl.is_zero(induced_L_sigma(line) - line.sigma)
    S_ef = InfSManifold(ef_triple.induced, xl.qarray([[4, 0], [0, fmpq(1, 4)]]))
    assert xl.is_zero(induced_L_sigma(S_ef) - xl.qarray([[4, 0, 0], [0, fmpq(1, 4), 0], [0, 0, 1]]))


# ----------------------------------------------------------------- properties

rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4).map(lambda f: fmpq(f.numerator, f.denominator))


@given(rationals, rationals)
def test_enveloping_roundtrip_property(alpha, beta):
    T = make_g_alpha_beta(SL2, alpha, beta)
    rt = enveloping(T).triple
    assert check_reductive_triple(rt).ok
    assert is_minimal_triple(rt) and is_effective_triple(rt)
    assert induced_ly(rt).same_structure(T)


@given(rationals.filter(lambda a: a not in (0, 1, -1)))
def test_ad_diag_spairs(a):
    phi = xl.qarray([[a * a, 0, 0], [0, 1 / (a * a), 0], [0, 0, 1]])
    p = LocalRegularSPair(SL2, phi)
    assert check_lrsp(p).ok
    rt, S = associated_triple(p)
    assert check_reductive_triple(rt).ok and check_ism(S).ok
    assert check_lie_hom(enveloping(S.algebra).g, enveloping(S.algebra).g, induced_L_sigma(S)).ok


@pytest.mark.parametrize("rt", [make_sl2_ef_triple(), associated_triple(make_core_quandle_pair(SL2))[0]],
                         ids=["sl2-ef", "core-quandle"])
def test_L_of_semisimple_triple_is_semisimple(rt):
    assert is_semisimple(rt.g)
    assert is_semisimple(enveloping(rt.induced).g)
