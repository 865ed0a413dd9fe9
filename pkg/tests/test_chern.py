from __future__ import annotations

import pytest

from hodgecalc.chern import (
    chern_generator, grothendieck_defect, schur_polynomial, segre_polynomial,
)
from hodgecalc.errors import InvalidPartition
from hodgecalc.polynomials import MultiPoly


def c(r, i):
    return chern_generator(r, i).poly


def test_schur_single_box():
    assert schur_polynomial([1], 3).poly == c(3, 1)


def test_schur_column():
    assert schur_polynomial([1, 1], 3).poly == c(3, 1) * c(3, 1) - c(3, 2)


def test_schur_row():
    assert schur_polynomial([2], 3).poly == c(3, 2)


def test_schur_invalid():
    with pytest.raises(InvalidPartition):
        schur_polynomial([1, 2], 3)
    with pytest.raises(InvalidPartition):
        schur_polynomial([4], 3)


def test_schur_alternate_expansion_agrees():
    # cross-check the determinant by expanding along a different row
    for partition in ([1, 1], [2, 1], [2, 2], [1, 1, 1], [3, 2, 1]):
        for rank in (3, 4):
            a = schur_polynomial(partition, rank)
            b = schur_polynomial(partition, rank, pivot_row=1)
            assert a == b


def test_schur_single_columns_match_dual_identity():
    # s_(1^h) satisfies the dual recursion s_(1^h) = c_1 s_(1^(h-1)) -
    # c_2 s_(1^(h-2)) + ..., the Jacobi-Trudi dual in terms of the c_i
    for rank in (2, 3, 4):
        table = [MultiPoly.const(rank, 1)]
        for h in range(1, rank + 1):
            acc = MultiPoly.zero(rank)
            for i in range(1, min(h, rank) + 1):
                term = c(rank, i) * table[h - i]
                acc = acc + (term if i % 2 == 1 else -term)
            table.append(acc)
            assert schur_polynomial([1] * h, rank).poly == acc


def test_segre_first_values():
    assert segre_polynomial(0, 3).poly == MultiPoly.const(3, 1)
    assert segre_polynomial(1, 3).poly == c(3, 1)
    assert segre_polynomial(2, 3).poly == c(3, 1) * c(3, 1) - c(3, 2)
    expected3 = (c(3, 1) * c(3, 1) * c(3, 1)
                 - (c(3, 1) * c(3, 2)).scale(2) + c(3, 3))
    assert segre_polynomial(3, 3).poly == expected3


def test_segre_rank_truncation():
    # for rank 2 there is no c_3: s_3 = c1^3 - 2 c1 c2
    expected = c(2, 1) * c(2, 1) * c(2, 1) - (c(2, 1) * c(2, 2)).scale(2)
    assert segre_polynomial(3, 2).poly == expected


def test_grothendieck_identity():
    for rank in range(1, 5):
        for q in range(1, 7):
            assert grothendieck_defect(q, rank).poly.is_zero()


def test_weighted_homogeneity():
    for rank in (2, 3, 4):
        for d in range(0, 6):
            sym = segre_polynomial(d, rank)
            assert sym.is_weighted_homogeneous()
            if sym.poly:
                assert sym.weighted_degree() == d


def test_printing():
    assert str(schur_polynomial([1, 1], 3)) == "c1^2 - c2"
    assert str(segre_polynomial(1, 3)) == "c1"
