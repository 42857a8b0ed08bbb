"""
Tests for F2[U] Arithmetic, Smith Normal Form and Homology
"""

import pytest

from exceptions import InvalidInputError, NonMonomialTorsionError
from fumod import (
    ChainComplex,
    FUMatrix,
    UPoly,
    determinant,
    fraction_free_rank,
    homology,
    invariant_factors,
    smith_normal_form,
    torsion_order,
    unknot_complex,
    upoly_divmod,
    upoly_gcd,
)

U = UPoly.monomial(1)
ONE = UPoly(1)


def test_upoly_arithmetic():
    """Test characteristic-two sums and carry-less products"""
    assert (U + ONE) * (U + ONE) == UPoly.from_exponents([2, 0])
    assert U + U == UPoly(0)
    assert UPoly.from_exponents([3, 1]).exponents() == [1, 3]
    assert str(UPoly.from_exponents([2, 0])) == "U^2 + 1"
    assert UPoly(0).degree == -1
    assert UPoly.monomial(4).is_monomial()
    assert not (U + ONE).is_monomial()


def test_upoly_division_and_gcd():
    """Test Euclidean division and gcd"""
    a = UPoly.from_exponents([3, 0])          # U^3 + 1 = (U + 1)(U^2 + U + 1)
    q, r = upoly_divmod(a, U + ONE)
    assert q == UPoly.from_exponents([2, 1, 0])
    assert r == UPoly(0)
    assert divmod(UPoly.monomial(3), UPoly.monomial(2)) == (U, UPoly(0))
    assert upoly_gcd(UPoly.monomial(5), UPoly.from_exponents([3, 2])) == UPoly.monomial(2)
    with pytest.raises(InvalidInputError):
        upoly_divmod(U, UPoly(0))


def test_matrix_basics():
    """Test shape checks, transpose and products"""
    m = FUMatrix.from_rows([[1, 2], [0, 4], [2, 0]])
    assert m.shape == (3, 2)
    assert m.transpose().shape == (2, 3)
    assert m.transpose().transpose() == m
    assert FUMatrix.identity(3) @ m == m
    assert FUMatrix.zeros(0, 2).transpose().shape == (2, 0)
    with pytest.raises(InvalidInputError):
        m @ m


def test_smith_normal_form_divisibility_chain():
    """Test diag(U^2, U) reorders to the chain (U, U^2)"""
    form = smith_normal_form(FUMatrix.from_rows([[4, 0], [0, 2]]))
    assert form.invariant_factors == (U, UPoly.monomial(2))
    assert form.rank == 2
    assert form.left_transform @ FUMatrix.from_rows([[4, 0], [0, 2]]) @ form.right_transform == form.diagonal()


def test_smith_normal_form_non_divisible_pivot():
    """Test a pivot that does not divide the rest of the matrix"""
    # diag(U, U + 1): gcd is 1, product U^2 + U
    m = FUMatrix.from_rows([[2, 0], [0, 3]])
    assert invariant_factors(m) == (ONE, UPoly.from_exponents([2, 1]))


def test_smith_normal_form_rank_deficient():
    """Test a zero row and column"""
    m = FUMatrix.from_rows([[2, 4], [4, 8]])
    form = smith_normal_form(m)
    assert form.invariant_factors == (U,)
    assert fraction_free_rank(m) == 1
    assert invariant_factors(FUMatrix.zeros(2, 3)) == ()


def test_smith_normal_form_random_matrices(rng):
    """Test transforms, rank oracle and invertibility on matrices up to 6x6 with entries of degree <= 4"""
    for _ in range(200):
        rows, cols = (int(x) for x in rng.integers(1, 7, size=2))
        m = FUMatrix.from_rows(rng.integers(0, 32, size=(rows, cols)).tolist(), cols)
        form = smith_normal_form(m)
        assert form.left_transform @ m @ form.right_transform == form.diagonal()
        for f, g in zip(form.invariant_factors, form.invariant_factors[1:]):
            assert (g % f).is_zero()
        assert form.rank == fraction_free_rank(m)
        assert determinant(form.left_transform) == ONE
        assert determinant(form.right_transform) == ONE


def test_determinant():
    """Test Bareiss determinant"""
    assert determinant(FUMatrix.from_rows([[2, 1], [1, 2]])) == UPoly.from_exponents([2, 0])
    assert determinant(FUMatrix.from_rows([[0, 1], [1, 0]])) == ONE
    assert determinant(FUMatrix.from_rows([[2, 4], [1, 2]])) == UPoly(0)
    with pytest.raises(InvalidInputError):
        determinant(FUMatrix.zeros(2, 3))


def test_unknot_homology():
    """Test the rank-one complex"""
    h = homology(unknot_complex())
    assert h.free_rank == 1
    assert h.torsion_exponents == ()
    assert torsion_order(h) == 0


def test_homology_of_two_term_complex():
    """Test F2[U] --U^2--> F2[U] plus a free generator"""
    c = ChainComplex(
        groups={0: ("a", "b"), 1: ("c",)},
        differentials={1: FUMatrix.from_rows([[4], [0]])},
    )
    h = homology(c)
    assert h.free_rank == 1
    assert h.torsion_exponents == (2,)
    assert torsion_order(h) == 2
    assert [(d.degree, d.free_rank, d.torsion_exponents) for d in h.per_degree] == [(0, 1, (2,)), (1, 0, ())]


def test_zero_differential_homology_is_free():
    """Test a complex with no differentials is the free module of its total rank"""
    c = ChainComplex(groups={0: ("a", "b"), 1: ("c",), 2: ("d", "e")}, differentials={})
    h = homology(c)
    assert h.free_rank == c.total_rank() == 5
    assert h.torsion_exponents == ()
    assert [(d.degree, d.free_rank) for d in h.per_degree] == [(0, 2), (1, 1), (2, 2)]


def test_homology_rejects_non_monomial_torsion():
    """Test torsion F2[U]/(U + 1)"""
    c = ChainComplex(groups={0: ("a",), 1: ("b",)}, differentials={1: FUMatrix.from_rows([[3]])})
    with pytest.raises(NonMonomialTorsionError):
        homology(c)


def test_chain_complex_validation():
    """Test shape mismatches and d^2 != 0"""
    with pytest.raises(InvalidInputError):
        ChainComplex(groups={0: ("a",), 1: ("b",)}, differentials={1: FUMatrix.from_rows([[1, 1]])})

    bad = ChainComplex(
        groups={0: ("a",), 1: ("b",), 2: ("c",)},
        differentials={1: FUMatrix.from_rows([[1]]), 2: FUMatrix.from_rows([[1]])},
    )
    assert not bad.square_is_zero()
    with pytest.raises(InvalidInputError):
        homology(bad)
