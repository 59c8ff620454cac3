import math
import random
from fractions import Fraction

import numpy as np
import pytest

from teich.graphs import Fusing, GroupoidWord, HalfDehn, Simple
from teich import kz
from teich.kz import (
    FORM_DT_OVER_ONE_MINUS_T,
    FORM_DT_OVER_T,
    ArcSegment,
    FormPath,
    KZError,
    LineSegment,
    NilpotentPair,
    NotNilpotent,
    OneForm,
    PoleProximity,
    UnsupportedMove,
    evaluate_groupoid_word,
    half_dehn_monodromy,
    homotopy_invariance_check,
    mzv,
    nilpotency_index,
    nilpotent_expm,
    nilpotent_transport,
    ode_connection_matrix,
    shuffle_words,
    specialize_associator,
    universal_associator,
)

E12 = np.array([[0, 1, 0], [0, 0, 0], [0, 0, 0]], float)
E23 = np.array([[0, 0, 0], [0, 0, 1], [0, 0, 0]], float)


# -- mzv ----------------------------------------------------------------------


def test_mzv_zeta_values():
    assert abs(mzv(2) - math.pi ** 2 / 6) < 1e-12
    assert abs(mzv(4) - math.pi ** 4 / 90) < 1e-12
    # direct summation oracle
    direct3 = sum(n ** -3.0 for n in range(1, 200000))
    assert abs(mzv(3) - direct3) < 1e-9


def test_mzv_depth_two_identities():
    assert abs(mzv(2, 1) - mzv(3)) < 1e-12
    # Euler: zeta(3,1) = pi^4/360
    assert abs(mzv(3, 1) - math.pi ** 4 / 360) < 1e-11
    # sum rule: zeta(2,1)+zeta(3) = 2 zeta(3) is the same as above; depth-2 weight 4:
    assert abs(mzv(3, 1) + mzv(2, 2) - mzv(4)) < 1e-11


def test_mzv_admissibility():
    with pytest.raises(KZError):
        mzv(1)
    with pytest.raises(KZError):
        mzv(1, 2)
    with pytest.raises(KZError):
        mzv(0)


# -- nilpotency ---------------------------------------------------------------


def test_nilpotency_index():
    assert nilpotency_index([[0, 1], [0, 0]]) == 2
    assert nilpotency_index([[0, 0], [0, 0]]) == 1
    assert nilpotency_index([[0, 1, 1], [0, 0, 2], [0, 0, 0]]) == 3
    with pytest.raises(NotNilpotent):
        nilpotency_index([[1, 0], [0, 1]])


def test_nilpotent_expm():
    N = np.array([[0, 1], [0, 0]], float)
    out = nilpotent_expm(N, 3.0)
    assert np.allclose(out, [[1, 3], [0, 1]])


# -- connection matrix --------------------------------------------------------


def test_phi_e12_e23_entry():
    cm = ode_connection_matrix(NilpotentPair(E12, E23))
    assert cm.error_estimate < 1e-7
    assert abs(cm.matrix[0, 2] + math.pi ** 2 / 6) < 1e-9
    assert np.allclose(np.diag(cm.matrix), 1.0)


def test_phi_commuting_pair_trivial():
    # A and B commuting (equal) => solutions are powers, Phi = I
    A = np.array([[0, 1], [0, 0]], float)
    cm = ode_connection_matrix(NilpotentPair(A, A))
    assert np.abs(cm.matrix - np.eye(2)).max() < 1e-8


def test_phi_unipotent():
    rng = random.Random(3)
    a = np.triu(np.array([[0, 2, -1, 0], [0, 0, 1, 1], [0, 0, 0, -2], [0, 0, 0, 0]], float))
    b = np.triu(np.array([[0, -1, 0, 2], [0, 0, 2, 0], [0, 0, 0, 1], [0, 0, 0, 0]], float))
    cm = ode_connection_matrix(NilpotentPair(a, b))
    eig = np.linalg.eigvals(cm.matrix)
    assert np.abs(eig - 1).max() < 1e-5


def test_universal_vs_ode_routes():
    U = universal_associator(6)
    rng = random.Random(12)
    for _ in range(5):
        size = rng.choice([3, 4])
        a = np.zeros((size, size))
        b = np.zeros((size, size))
        for i in range(size):
            for j in range(i + 1, size):
                a[i, j] = rng.randint(-2, 2)
                b[i, j] = rng.randint(-2, 2)
        pair = NilpotentPair(a, b)
        m1 = ode_connection_matrix(pair).matrix
        m2 = specialize_associator(U, pair).matrix
        assert np.abs(m1 - m2).max() < 1e-6


def test_universal_coefficients_are_mzvs():
    U = universal_associator(5)
    assert abs(U.coeff("") - 1) < 1e-9
    assert abs(U.coeff("a")) < 1e-8 and abs(U.coeff("b")) < 1e-8
    assert abs(U.coeff("ab") + mzv(2)) < 1e-8
    assert abs(U.coeff("ba") - mzv(2)) < 1e-8
    assert abs(U.coeff("aab") + mzv(3)) < 1e-8
    assert abs(U.coeff("abb") - mzv(3)) < 1e-8


def test_shuffle_relations():
    U = universal_associator(4)
    for u, v in (("a", "b"), ("ab", "b"), ("a", "ab")):
        lhs = U.coeff(u) * U.coeff(v)
        rhs = sum(U.coeff(w) for w in shuffle_words(u, v))
        assert abs(lhs - rhs) < 1e-8


def test_specialization_truncation_warning():
    U = universal_associator(4)
    big = np.triu(np.ones((5, 5)), 1)    # nilpotency index 5; 5 + 5 > 4
    cm = specialize_associator(U, NilpotentPair(big, big))
    assert cm.truncation_warning


# -- half-Dehn ----------------------------------------------------------------


def test_half_dehn_square_free_case():
    hd = half_dehn_monodromy([[0, Fraction(1, 2)], [0, 0]])
    assert set(hd.pi_coeffs) == {0, 1}
    assert hd.pi_coeffs[1] == ((Fraction(0), Fraction(1, 2)), (Fraction(0), Fraction(0)))
    sq = hd.numeric @ hd.numeric
    full = nilpotent_expm(np.array([[0, 0.5], [0, 0]]), 2j * math.pi)
    assert np.abs(sq - full).max() < 1e-14


def test_half_dehn_rejects_non_nilpotent():
    with pytest.raises(NotNilpotent):
        half_dehn_monodromy([[1, 0], [0, 1]])


# -- transport ----------------------------------------------------------------


def test_transport_log2():
    fp = FormPath((LineSegment(0.5, 1.0),), (FORM_DT_OVER_T,), margin=0.05)
    T = nilpotent_transport(fp)
    assert abs(T[0, 1] - math.log(2)) < 1e-10
    assert abs(T[0, 0] - 1) < 1e-12 and abs(T[1, 1] - 1) < 1e-12


def test_transport_empty_forms():
    fp = FormPath((LineSegment(0.25, 0.75),), (), margin=0.05)
    assert nilpotent_transport(fp).shape == (1, 1)


def test_transport_zeta2_regularized_limit():
    # forms (dt/t, dt/(1-t)) are the connection A/t + B/(t-1) with A = E12,
    # B = -E23; stripping the normalized boundary behavior from the raw
    # transport must reproduce Phi(A, B), whose (1,3) entry is zeta(2)
    A = np.zeros((3, 3)); A[0, 1] = 1.0
    B = np.zeros((3, 3)); B[1, 2] = -1.0
    us = kz._boundary_series(A, B, 8)
    vs = kz._boundary_series(B, A, 8)
    errs = []
    for eps in (1e-3, 1e-4):
        fp = FormPath((LineSegment(eps, 1 - eps),),
                      (FORM_DT_OVER_T, FORM_DT_OVER_ONE_MINUS_T), margin=eps / 2)
        F = nilpotent_transport(fp)
        reg = nilpotent_expm(B, -math.log(eps)) @ np.linalg.inv(kz._eval_series(vs, eps)) \
            @ F @ kz._eval_series(us, eps) @ nilpotent_expm(A, math.log(eps))
        errs.append(abs(reg[0, 2].real - math.pi ** 2 / 6))
    assert errs[1] < 1e-8
    # raw entry also tends to zeta(2), just slowly (eps log eps)
    raw = nilpotent_transport(FormPath((LineSegment(1e-4, 1 - 1e-4),),
                                       (FORM_DT_OVER_T, FORM_DT_OVER_ONE_MINUS_T),
                                       margin=5e-5))
    assert abs(raw[0, 2].real - math.pi ** 2 / 6) < 5e-3


def test_transport_concatenation():
    forms = (FORM_DT_OVER_T,)
    whole = FormPath((LineSegment(1.0, 3.0),), forms)
    split = FormPath((LineSegment(1.0, 2.0), LineSegment(2.0, 3.0)), forms)
    assert np.abs(nilpotent_transport(whole) - nilpotent_transport(split)).max() < 1e-10


def test_homotopy_invariance_and_monodromy():
    forms = (FORM_DT_OVER_T,)
    upper = FormPath((ArcSegment(0.0, 1.0, 0.0, math.pi),), forms)
    polyline = FormPath((LineSegment(1.0, 1 + 1j), LineSegment(1 + 1j, -1 + 1j),
                         LineSegment(-1 + 1j, -1.0)), forms)
    assert homotopy_invariance_check(upper, polyline) < 1e-10
    lower = FormPath((ArcSegment(0.0, 1.0, 0.0, -math.pi),), forms)
    Tup = nilpotent_transport(upper)
    Tdn = nilpotent_transport(lower)
    assert abs((Tup - Tdn)[0, 1] - 2j * math.pi) < 1e-10


def test_form_path_validation():
    with pytest.raises(KZError):
        FormPath((LineSegment(0.5, 1.0), LineSegment(2.0, 3.0)), (FORM_DT_OVER_T,))
    with pytest.raises(PoleProximity):
        FormPath((LineSegment(-0.5, 0.5),), (FORM_DT_OVER_T,), margin=0.01)


# -- groupoid -----------------------------------------------------------------


def _word(*moves):
    return GroupoidWord(moves=tuple(moves), source=None, target=None)


def test_groupoid_half_dehn_square():
    U = universal_associator(4)
    word = _word(HalfDehn(edge="e", graph=None), HalfDehn(edge="e", graph=None))
    R = np.array([[0, 1], [0, 0]], float)
    M = evaluate_groupoid_word(word, {"e": R}, U)
    assert np.abs(M - nilpotent_expm(R, 2j * math.pi)).max() < 1e-12


def test_groupoid_fusing_zero_residues():
    U = universal_associator(4)
    word = _word(Fusing(edge="e", new_edge="f", source=None, target=None))
    M = evaluate_groupoid_word(word, {"e": np.zeros((2, 2)), "f": np.zeros((2, 2))}, U)
    assert np.abs(M - np.eye(2)).max() < 1e-9


def test_groupoid_fusing_round_trip():
    U = universal_associator(6)
    word = _word(Fusing(edge="e", new_edge="f", source=None, target=None),
                 Fusing(edge="f", new_edge="e", source=None, target=None))
    M = evaluate_groupoid_word(word, {"e": E12, "f": E23}, U)
    assert np.abs(M - np.eye(3)).max() < 1e-5


def test_groupoid_simple_move_unsupported():
    U = universal_associator(4)
    word = _word(Simple(loop="l", graph=None))
    with pytest.raises(UnsupportedMove):
        evaluate_groupoid_word(word, {"l": np.zeros((2, 2))}, U)


def test_groupoid_missing_residue():
    U = universal_associator(4)
    word = _word(HalfDehn(edge="missing", graph=None))
    with pytest.raises(KZError):
        evaluate_groupoid_word(word, {"e": np.zeros((2, 2))}, U)
