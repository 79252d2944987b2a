import pytest

from helpers import grid_points, ruling_points, with_special_fiber
from virtres.biring import BiDegree, variables
from virtres.gb import intersect, irrelevant_ideal, power
from virtres.points import diff2, generic_hf, ideal_of_points, partition_info, random_points
from virtres.resolve import FreeComplex, betti, min_free_resolution
from virtres.virtual import (conjectural_trim, default_conjectural_degree,
                             expected_delta2_submatrix, expected_trim_counts, formula_shape,
                             in_generic_reg, is_virtual, keylemma_check, min_sat_exponent,
                             mirrored_points, regularity_minimal_elements, trim, trim_points,
                             vres_saturation)


@pytest.fixture(scope="module")
def six():
    X = random_points(6, 7, 1000)
    I = ideal_of_points(X)
    return X, I, min_free_resolution(I)


def test_regularity_region():
    assert regularity_minimal_elements(6) == [(0, 5), (1, 2), (2, 1), (5, 0)]
    assert regularity_minimal_elements(1) == [(0, 0)]
    assert in_generic_reg(6, (1, 2)) and not in_generic_reg(6, (1, 1))
    assert default_conjectural_degree(10) == (2, 3)


def test_formula_shape_six_points():
    F = formula_shape(6, 1, 2)
    assert F.middle == {BiDegree(1, 3): 2, BiDegree(2, 2): 3}
    assert F.top == {BiDegree(2, 3): 4}
    assert F.lines() == ["top S(-2,-3)^4", "middle S(-2,-2)^3 + S(-1,-3)^2"]
    assert formula_shape(6, 2, 1) == F.transpose()


@pytest.mark.parametrize("n, i, j", [(1, 0, 0), (6, 1, 1), (6, 1, 3), (4, 1, 1), (6, -1, 2)])
def test_formula_shape_rejects(n, i, j):
    with pytest.raises(ValueError):
        formula_shape(n, i, j)


def test_delta2_submatrix_against_generic_hf():
    # the closed-form generic Hilbert function is the oracle here
    for i in range(6):
        for j in range(i + 1, 9):
            n = (i + 1) * (j + 1)
            D = diff2(generic_hf(n, i + 2, j + 2))
            assert expected_delta2_submatrix(n, i, j) == D, (i, j)
            assert expected_delta2_submatrix(n, j, i) == [list(r) for r in zip(*D)]


def test_trim_counts_single_row_case():
    alpha, beta, gamma = expected_trim_counts(4, 0, 3)
    assert alpha == {BiDegree(0, 4): 1, BiDegree(1, 2): 2}
    assert beta == {BiDegree(1, 4): 2} and gamma == {}
    alpha, _, _ = expected_trim_counts(5, 0, 4)
    assert alpha == {BiDegree(0, 5): 1, BiDegree(1, 2): 1, BiDegree(1, 3): 1}
    alpha, _, _ = expected_trim_counts(5, 4, 0)
    assert alpha == {BiDegree(5, 0): 1, BiDegree(2, 1): 1, BiDegree(3, 1): 1}


def test_trim_six_points(six):
    X, I, C = six
    T = trim(C, (1, 2), X)
    assert betti(T) == formula_shape(6, 1, 2).betti()
    assert is_virtual(T, I).virtual
    with pytest.raises(ValueError, match="reg_B"):
        trim(C, (1, 1), X)
    with pytest.raises(ValueError):
        trim(C, (1, 2))


def test_mfr_is_virtual(six):
    _, I, C = six
    cert = is_virtual(C, I, assume_saturated=True)
    assert cert.to_json() == {"torsion": [True, True, True], "h0_saturation": True,
                              "virtual": True}


def test_is_virtual_rejections(six):
    X, I, _ = six
    x0, x1, y0, y1 = variables()
    B = [x0 * y0, x0 * y1, x1 * y0, x1 * y1]
    wrong_h0 = FreeComplex([[(0, 0)], [(1, 1)] * 4], [[B]])
    cert = is_virtual(wrong_h0, I)
    assert not cert.h0_saturation and not cert.virtual
    with pytest.raises(ValueError, match="not B-saturated"):
        is_virtual(wrong_h0, intersect(I, power(irrelevant_ideal(), 2)))
    with pytest.raises(ValueError, match="H₀"):
        is_virtual(FreeComplex([[(1, 0)]], []), I)


def test_trim_points_returns_certificate():
    X = random_points(4, 2, 100)
    C, cert = trim_points(X, (0, 3))
    assert cert.virtual and C.length == 2


def test_saturation_construction(six):
    X, I, _ = six
    C = vres_saturation(X, None, I)
    assert C.length == 2
    assert min_sat_exponent(X, 2, I) is None
    with pytest.raises(ValueError):
        vres_saturation(X, -1, I)


def test_saturation_on_ruling():
    X = ruling_points(7, 3, 5)
    ell = len(partition_info(X).pi1)
    C = vres_saturation(X)
    assert C.length == 2
    a = min_sat_exponent(X, ell - 1)
    assert a is not None and a <= ell - 1


def test_keylemma_needs_convention():
    X = with_special_fiber(ruling_points(5, 2, 3))
    with pytest.raises(ValueError, match="zero-divisor"):
        keylemma_check(X, 3)
    Y = ruling_points(5, 2, 3)
    with pytest.raises(ValueError):
        keylemma_check(Y, 0)
    assert keylemma_check(Y, 1)


def test_conjectural_trim_six_points(six):
    X, I, _ = six
    R = conjectural_trim(X, I=I)
    assert R.at == (1, 2) and R.cert.virtual and R.matches_prediction and R.formula_case
    M = conjectural_trim(mirrored_points(X), at=(2, 1))
    assert betti(M.complex) == betti(R.complex).transpose()
    with pytest.raises(ValueError):
        conjectural_trim(X, at=(1, 3), I=I)


def test_formula_shape_small_and_large():
    F = formula_shape(4, 0, 3)
    assert (F.q, F.r) == (2, 0)
    assert F.top == {BiDegree(1, 4): 2}
    assert F.middle == {BiDegree(0, 4): 1, BiDegree(1, 2): 2}
    G = formula_shape(12, 2, 3)
    assert (G.q, G.r) == (3, 0)
    assert G.top == {BiDegree(3, 4): 6}
    assert G.middle == {BiDegree(2, 4): 3, BiDegree(3, 3): 4}


def test_delta2_submatrix_small_cases():
    # the -2 of the single-row case sits at column q
    assert expected_delta2_submatrix(4, 0, 3) == [[1, 0, 0, 0, -1], [0, 0, -2, 0, 2]]
    assert expected_delta2_submatrix(2, 0, 1) == diff2(generic_hf(2, 2, 3))


def test_trim_trivial_cases():
    X = random_points(5, 8, 200)
    C = min_free_resolution(ideal_of_points(X))
    T = trim(C, (40, 40), X)
    assert T.modules == C.modules and T.maps == C.maps
    P = random_points(1, 2, 9)
    K = min_free_resolution(ideal_of_points(P))
    assert trim(K, (0, 0), P).ranks() == [1, 2, 1]


def test_min_sat_exponent_grid_is_zero():
    assert min_sat_exponent(grid_points(2, 3, 4), 1) == 0


def test_keylemma_single_fiber():
    X = ruling_points(2, 1, 6)
    assert len(partition_info(X).pi1) == 1
    assert keylemma_check(X, 0)


def test_conjectural_trim_rejects_non_generic():
    X = ruling_points(6, 2, 9)
    with pytest.raises(ValueError, match="sufficiently general"):
        conjectural_trim(X)
