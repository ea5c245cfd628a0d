import pytest
import random
import sys
import os
from fractions import Fraction

# Add project root to path so we can import the package
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from wallx.errors import NotInvertible, OrderUnderflow, OutOfOrder
from wallx.qseries import (
    QSeries,
    constant,
    dt21_series,
    euler_product,
    extract_dt,
    goettsche_series,
    indefinite_theta_21,
    series_for,
    vartheta,
)

F = Fraction
ORDER = 20


def _three_coloured_partitions(n_max):
    """Partitions of n with parts in three colours, by a knapsack recursion."""
    counts = [1] + [0] * n_max
    for part in range(1, n_max + 1):
        for _ in range(3):
            for total in range(part, n_max + 1):
                counts[total] += counts[total - part]
    return counts


def _random_series(rng, den=1, order=ORDER):
    """A random series with a nonzero constant term on the 1/den grid."""
    terms = {0: rng.choice((-3, -2, -1, 1, 2, 3))}
    for _ in range(rng.randint(1, 8)):
        terms[F(rng.randint(1, order * den), den)] = rng.randint(-5, 5)
    return QSeries(terms, order, den)


class TestQSeriesArithmetic:
    def test_product(self):
        a = QSeries({0: 1, 1: 1}, 5)
        b = QSeries({0: 1, 1: -1}, 5)
        assert (a * b).items() == [(0, 1), (2, -1)]

    def test_unit(self):
        a = QSeries({0: 1, 1: 3, 2: 9}, 5)
        assert a * constant(1, 5) == a

    def test_cancellation(self):
        a = QSeries({0: 1, 1: 1}, 5)
        assert (a + a.neg()).is_zero()

    def test_product_order_tracks_valuation(self):
        a = QSeries({1: 1}, 4)
        b = QSeries({0: 1}, 3)
        assert (a * b).order == 4

    def test_coefficient_past_order(self):
        with pytest.raises(OutOfOrder):
            QSeries({0: 1}, 2).coefficient(3)

    def test_truncate_cannot_raise_order(self):
        with pytest.raises(OrderUnderflow):
            QSeries({0: 1}, 2).truncate(3)

    def test_ring_laws(self):
        rng = random.Random(31)
        for _ in range(20):
            a, b, c = (_random_series(rng) for _ in range(3))
            assert a + b == b + a
            assert a * b == b * a
            assert ((a * b) * c).truncate(ORDER) == (a * (b * c)).truncate(ORDER)
            assert (a * (b + c)).truncate(ORDER) == (a * b + a * c).truncate(ORDER)
            assert (a - a).is_zero()

    def test_off_grid_exponent(self):
        with pytest.raises(ValueError):
            QSeries({F(1, 2): 1}, 2)


class TestInvert:
    def test_geometric(self):
        inv = QSeries({0: 1, 1: -1}, 3).invert()
        assert inv.items() == [(k, 1) for k in range(4)]

    def test_theta_inverse(self):
        inv = QSeries({0: 1, 1: 2, 4: 2}, 4).invert()
        assert [inv.coefficient(k) for k in range(5)] == [1, -2, 4, -8, 14]

    def test_unit(self):
        assert constant(1, 4).invert() == constant(1, 4)

    @pytest.mark.parametrize("den", [1, 4])
    def test_two_sided_inverse(self, den):
        rng = random.Random(37 + den)
        one = constant(1, ORDER)
        for _ in range(10):
            a = _random_series(rng, den)
            inv = a.invert()
            assert a * inv == one
            assert inv * a == one

    def test_no_constant_term(self):
        with pytest.raises(NotInvertible):
            QSeries({1: 1}, 4).invert()


class TestGenerators:
    def test_goettsche_low_terms(self):
        g = goettsche_series(3)
        assert [g.coefficient(k) for k in range(4)] == [1, 3, 9, 22]

    def test_goettsche_matches_partition_oracle(self):
        g = goettsche_series(12)
        assert [g.coefficient(k) for k in range(13)] == _three_coloured_partitions(12)

    def test_pentagonal(self):
        p = euler_product(1, 7)
        assert [p.coefficient(k) for k in range(8)] == [1, -1, -1, 0, 0, 1, 0, 1]

    def test_vartheta_rank_one(self):
        assert vartheta(1, 5, 3) == constant(1, 3)

    def test_vartheta_integer_lattice(self):
        assert vartheta(2, 0, 4).items() == [(0, 1), (1, 2), (4, 2)]

    def test_vartheta_half_lattice(self):
        assert vartheta(2, 1, F(9, 4)).items() == [(F(1, 4), 2), (F(9, 4), 2)]

    def test_vartheta_depends_on_residue(self):
        for a in (0, 1):
            assert vartheta(2, a + 2, 9) == vartheta(2, a, 9)
            assert vartheta(2, a - 2, 9) == vartheta(2, a, 9)

    def test_indefinite_theta_lowest(self):
        assert indefinite_theta_21(F(3, 4)).items() == [(F(3, 4), -1)]

    def test_dt21_lowest_term(self):
        assert dt21_series(F(3, 4)).items() == [(F(3, 4), -1)]

    def test_dt21_support(self):
        series = dt21_series(10)
        assert series.terms
        assert all((e - F(3, 4)).denominator == 1 for e in series.terms)

    def test_dt21_truncations_agree(self):
        assert dt21_series(12).truncate(10) == dt21_series(10)

    def test_series_for_dispatch(self):
        assert series_for("eta3", 3) == goettsche_series(3)
        assert series_for("theta", 4, 2, 0) == vartheta(2, 0, 4)
        with pytest.raises(ValueError):
            series_for("eta6", 3)


class TestExtractDT:
    def test_rank_one(self):
        g = goettsche_series(3)
        assert extract_dt(1, 0, 0, g) == 1
        assert extract_dt(1, 0, -1, g) == 3

    def test_rank_two_odd_degree(self):
        assert extract_dt(2, 1, F(-1, 2), dt21_series(2)) == 1

    def test_rank_three_rejected(self):
        with pytest.raises(ValueError):
            extract_dt(3, 0, 0, goettsche_series(2))
