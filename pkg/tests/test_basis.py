from fractions import Fraction

import numpy as np
import pytest

from lmg3 import (
    GtPattern,
    IrrepShape,
    SectorProportions,
    catalan_series,
    dimension,
    enumerate_basis,
    enumerate_shapes,
    hw_pattern,
    lw_pattern,
    multiplicity,
    weight_of,
)
from lmg3.basis import dominates, shape_for_proportions

from helpers import count_patterns_brute


def test_dimension_examples():
    assert dimension(IrrepShape(3, 1, 0)) == 15
    assert dimension(IrrepShape(2, 2, 0)) == 6
    assert dimension(IrrepShape(4, 0, 0)) == 15
    for h in (1, 2, 5):
        assert dimension(IrrepShape(h, h, h)) == 1
    # product form of the dimension, checked against the raw triple loop
    assert dimension(IrrepShape(24, 12, 0)) == count_patterns_brute(24, 12, 0) == 2197


@pytest.mark.parametrize("rows", [(4, 0, 0), (2, 1, 0), (3, 3, 0), (3, 2, 1), (6, 2, 1)])
def test_enumeration_matches_dimension(rows):
    shape = IrrepShape(*rows)
    pats = enumerate_basis(shape)
    assert len(pats) == dimension(shape) == count_patterns_brute(*rows)
    assert len(set(p.key() for p in pats)) == len(pats)


def test_enumeration_counts():
    assert len(enumerate_basis(IrrepShape(4, 0, 0))) == 15
    assert len(enumerate_basis(IrrepShape(2, 1, 0))) == 8
    for n in (1, 3):
        assert len(enumerate_basis(IrrepShape(n, n, n))) == 1


def test_enumeration_order_is_descending_lex():
    shape = IrrepShape(3, 2, 1)
    keys = [p.key() for p in enumerate_basis(shape)]
    assert keys == sorted(keys, reverse=True)
    assert keys[0] == hw_pattern(shape).key()
    assert keys[-1] == lw_pattern(shape).key()


def test_invalid_shapes_rejected():
    with pytest.raises(ValueError):
        IrrepShape(1, 2, 0)
    with pytest.raises(ValueError):
        IrrepShape(3, 2, -1)
    with pytest.raises(ValueError):
        IrrepShape(3, 1, 1, L=2)
    with pytest.raises(ValueError):
        GtPattern(2, 1, 0, 2, 2, 1)  # m22 > h2 breaks interlacing


def test_multiplicity_examples():
    assert multiplicity(IrrepShape(3, 1, 0)) == 3
    assert multiplicity(IrrepShape(2, 2, 0)) == 2
    assert multiplicity(IrrepShape(2, 1, 1)) == 3
    for n in (1, 4, 9):
        assert multiplicity(IrrepShape(n, 0, 0)) == 1


@pytest.mark.parametrize("N", range(1, 9))
def test_decomposition_sum_rule(N):
    total = sum(multiplicity(s) * dimension(s) for s in enumerate_shapes(N, L=3))
    assert total == 3**N


def test_shape_table_four_atoms():
    shapes = enumerate_shapes(4, L=3)
    assert [s.rows for s in shapes] == [(4, 0, 0), (3, 1, 0), (2, 2, 0), (2, 1, 1)]
    assert [dimension(s) for s in shapes] == [15, 15, 6, 3]
    assert [multiplicity(s) for s in shapes] == [1, 3, 2, 3]


def test_catalan_series():
    assert catalan_series(3) == [(Fraction(3, 2), 1), (Fraction(1, 2), 2)]
    assert catalan_series(1) == [(Fraction(1, 2), 1)]
    assert catalan_series(4) == [(Fraction(2), 1), (Fraction(1), 3), (Fraction(0), 2)]
    for N in range(1, 11):
        series = catalan_series(N)
        assert sum(m * (2 * j + 1) for j, m in series) == 2**N
        # the same counts come from the tableau rule on two-row frames
        for k, (j, m) in enumerate(series):
            assert m == multiplicity(IrrepShape(N - k, k, 0, L=2))


def test_weights():
    p = GtPattern(3, 2, 1, 3, 1, 2)
    assert weight_of(p).astuple() == (2, 2, 2)
    shape = IrrepShape(5, 3, 1)
    assert weight_of(hw_pattern(shape)).astuple() == (5, 3, 1)
    assert weight_of(lw_pattern(shape)).astuple() == (1, 3, 5)
    for q in enumerate_basis(shape):
        assert weight_of(q).N == shape.N


def test_weight_dominance_of_extremal_patterns():
    shape = IrrepShape(4, 2, 0)
    whw, wlw = weight_of(hw_pattern(shape)), weight_of(lw_pattern(shape))
    for p in enumerate_basis(shape):
        w = weight_of(p)
        if p.key() not in (hw_pattern(shape).key(), lw_pattern(shape).key()):
            assert dominates(whw, w)
            assert dominates(w, wlw)


def test_hw_lw_patterns():
    n = 5
    sym = IrrepShape(n, 0, 0)
    assert hw_pattern(sym).key() == (n, 0, n)
    assert lw_pattern(sym).key() == (0, 0, 0)
    assert hw_pattern(IrrepShape(1, 1, 1)) == lw_pattern(IrrepShape(1, 1, 1))


def test_su3_equivalence_of_dimensions():
    for rows in ((3, 2, 1), (4, 4, 2), (5, 3, 3)):
        h1, h2, h3 = rows
        assert dimension(IrrepShape(*rows)) == dimension(IrrepShape(h1 - h3, h2 - h3, 0))


def test_two_level_shapes():
    shape = IrrepShape(5, 2, 0, L=2)
    assert dimension(shape) == 4
    pats = enumerate_basis(shape)
    assert len(pats) == 4
    assert pats[0].m11 == 5 and pats[-1].m11 == 2
    assert weight_of(hw_pattern(shape)).astuple() == (5, 2, 0)


def test_sector_proportions():
    sp = SectorProportions.from_shape(IrrepShape(24, 12, 0))
    assert sp.mu == pytest.approx(2 / 3)
    assert sp.nu == 0.0
    sp = SectorProportions.from_shape(IrrepShape(2, 2, 2))
    assert sp.mu == pytest.approx(0.5)
    assert sp.nu == pytest.approx(1 / 3)
    with pytest.raises(ValueError):
        SectorProportions(0.3, 0.0)
    with pytest.raises(ValueError):
        SectorProportions(0.9, 0.3)  # above (1-2nu)/(1-nu)
    assert shape_for_proportions(2 / 3, 0.0, 36).rows == (24, 12, 0)
    w = SectorProportions(0.8, 0.1).weights()
    assert sum(w) == pytest.approx(1.0)
