import pytest
import random
import sys
import os
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

# Add project root to path so we can import the package
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from wallx.dtstore import (
    BUILTIN,
    RANKZERO,
    SERIES,
    SUPPLEMENT,
    USER,
    DTTable,
    bogomolov_nonzero,
    n_min,
    normalize,
    rankzero_dt,
    rankzero_single_coefficient,
    static_pair_source,
)
from wallx.errors import (
    MissingPairValue,
    NotAvailable,
    TableFrozen,
    TableLoadError,
    TableNotFrozen,
    ZeroClass,
)
from wallx.lattice import P2Class

F = Fraction
CONIC = {(2, 1): F(-6), (2, 2): F(15), (2, 3): F(-36), (2, 4): F(66)}


def _line_pairs(extra=None):
    values = {(1, n): F(3 * (-1) ** (n - 1) * n) for n in range(1, 9)}
    values.update(extra or {})
    return static_pair_source(values)


@pytest.fixture
def table():
    return DTTable().freeze()


class TestNormalize:
    def test_negative_rank(self):
        assert normalize(P2Class(-1, 1, F(-1, 2))) == P2Class(1, 0, 0)

    def test_point_class_canonical(self):
        assert normalize(P2Class(0, 0, 5)) == P2Class(0, 0, 5)

    def test_rank_two_orbit(self):
        assert normalize(P2Class(-2, 2, 1)) == P2Class(2, 0, -2)

    def test_rank_zero_reduces_m(self):
        assert normalize(P2Class(0, 2, 3)) == P2Class(0, 2, 1)

    def test_zero_class(self):
        with pytest.raises(ZeroClass):
            normalize(P2Class(0, 0, 0))

    def test_idempotent_and_orbit_invariant(self):
        rng = random.Random(17)
        for _ in range(300):
            r, c, m2 = rng.randint(-4, 4), rng.randint(-6, 6), rng.randint(-10, 10)
            if (m2 - c) % 2 or (r == 0 and c == 0 and m2 == 0):
                continue
            cls = P2Class.from_m2(r, c, m2)
            key = normalize(cls)
            assert normalize(key) == key
            assert normalize(-cls) == key
            assert normalize(cls.dual()) == key
            assert normalize(cls.shift(rng.randint(-3, 3))) == key
            if key.r > 0:
                assert 0 <= key.c <= key.r // 2 + key.r % 2


class TestBogomolov:
    def test_examples(self):
        assert bogomolov_nonzero(P2Class(1, 0, 0))
        assert not bogomolov_nonzero(P2Class(1, 0, 1))
        assert bogomolov_nonzero(P2Class(-1, 1, F(-1, 2)))

    def test_lookup_vanishes(self, table):
        assert table.lookup_with_source(P2Class(1, 0, 1)) == (0, "bogomolov")


class TestLookup:
    def test_builtin_rank_zero_degree_one(self, table):
        assert table.lookup_with_source(P2Class(0, 1, F(7, 2))) == (3, BUILTIN)

    def test_builtin_rank_zero_degree_two(self, table):
        assert table.lookup_with_source(P2Class(0, 2, 0)) == (-6, BUILTIN)
        assert table.lookup_with_source(P2Class(0, -2, 1)) == (F(-21, 4), BUILTIN)
        assert table.lookup(P2Class(0, 2, 5)) == F(-21, 4)
        assert table.lookup(P2Class(0, 2, -4)) == -6

    def test_builtin_rigid_sum(self, table):
        assert table.lookup_with_source(P2Class(2, 0, 0)) == (F(1, 4), BUILTIN)
        assert table.lookup_with_source(P2Class(3, 0, 0)) == (F(1, 9), SUPPLEMENT)

    def test_degree_three_needs_user_values(self, table):
        with pytest.raises(NotAvailable) as exc:
            table.lookup(P2Class(0, 3, F(-1, 2)))
        assert exc.value.key == P2Class(0, 3, F(1, 2))

    def test_series_rank_one(self, table):
        assert table.lookup_with_source(P2Class(1, 0, -1)) == (3, SERIES)
        assert table.lookup(P2Class(-1, 1, F(-1, 2))) == 1

    def test_series_rank_two(self, table):
        assert table.lookup_with_source(P2Class(2, 1, F(-1, 2))) == (1, SERIES)

    def test_symmetries(self, table):
        rng = random.Random(23)
        for _ in range(200):
            r = rng.choice((-1, 1, -2, 2))
            c = rng.choice(range(-5, 6, 2)) if abs(r) == 2 else rng.randint(-5, 5)
            m2 = rng.randint(-10, 10)
            if (m2 - c) % 2:
                continue
            cls = P2Class.from_m2(r, c, m2)
            if cls.discriminant() > 10:
                continue
            value = table.lookup(cls)
            assert table.lookup(cls.shift(rng.randint(-3, 3))) == value
            assert table.lookup(cls.dual()) == value
            assert table.lookup(-cls) == value

    def test_rank_zero_symmetries(self, table):
        for c in (-2, -1, 1, 2):
            for m2 in range(-9, 10):
                if (m2 - c) % 2:
                    continue
                cls = P2Class.from_m2(0, c, m2)
                value = table.lookup(cls)
                for image in (cls.shift(2), cls.shift(-1), cls.dual(), -cls):
                    assert table.lookup(image) == value

    def test_unavailable(self, table):
        with pytest.raises(NotAvailable) as exc:
            table.lookup(P2Class(3, 1, F(-1, 2)))
        assert exc.value.key == P2Class(3, 1, F(-1, 2))

    def test_zero_class(self, table):
        with pytest.raises(ZeroClass):
            table.lookup(P2Class(0, 0, 0))

    def test_requires_freeze(self):
        with pytest.raises(TableNotFrozen):
            DTTable().lookup(P2Class(0, 1, F(1, 2)))

    def test_provenance_records_source(self, table):
        table.lookup(P2Class(0, 1, F(1, 2)))
        assert table.provenance()[P2Class(0, 1, F(1, 2))] == (3, BUILTIN)

    def test_concurrent_lookups_share_memo(self):
        t = DTTable().freeze()
        classes = [P2Class(1, 0, -k) for k in range(6)] * 8
        with ThreadPoolExecutor(max_workers=4) as pool:
            values = list(pool.map(t.lookup, classes))
        assert values == [DTTable().freeze().lookup(cls) for cls in classes]
        assert set(t.provenance()) == {normalize(cls) for cls in classes}


class TestUserEntries:
    def test_user_fills_gap(self):
        t = DTTable()
        t.add_user(P2Class(-3, -1, F(1, 2)), F(5, 3))
        t.freeze()
        assert t.lookup_with_source(P2Class(3, 1, F(-1, 2))) == (F(5, 3), USER)

    def test_conflict(self):
        t = DTTable()
        t.add_user(P2Class(0, 2, 0), 1)
        with pytest.raises(TableLoadError):
            t.add_user(P2Class(0, 2, 2), 2)

    def test_frozen(self):
        t = DTTable().freeze()
        with pytest.raises(TableFrozen):
            t.add_user(P2Class(0, 2, 0), 1)

    def test_user_wins_over_supplement(self):
        t = DTTable()
        t.add_user(P2Class(3, 0, 0), F(2, 9))
        t.freeze()
        assert t.lookup_with_source(P2Class(-3, 0, 0)) == (F(2, 9), USER)

    def test_prefer_user_overrides_builtin(self):
        t = DTTable((USER, BUILTIN, SERIES, RANKZERO))
        t.add_user(P2Class(0, 1, F(-1, 2)), 2)
        t.freeze()
        assert t.lookup_with_source(P2Class(0, 1, F(1, 2))) == (2, USER)


class TestRankZero:
    def test_degree_one(self):
        for m in (F(-1, 2), F(1, 2), F(3, 2)):
            assert rankzero_dt(1, m, _line_pairs()) == 3

    def test_degree_two(self):
        pairs = _line_pairs(CONIC)
        assert rankzero_dt(2, 0, pairs) == -6
        assert rankzero_dt(2, 1, pairs) == F(-21, 4)

    def test_skip_single(self):
        pairs = _line_pairs(CONIC)
        full = rankzero_dt(2, 0, pairs)
        rest = rankzero_dt(2, 0, pairs, skip_single=True)
        assert full - rest == rankzero_single_coefficient(2, 0) * F(-36)

    def test_shift_when_denominator_vanishes(self):
        pairs = _line_pairs()
        assert rankzero_dt(1, F(-3, 2), pairs) == rankzero_dt(1, F(-1, 2), pairs)

    def test_invariant_under_tensor_shift(self):
        line = _line_pairs()
        for m2 in range(-5, 6, 2):
            m = F(m2, 2)
            assert rankzero_dt(1, m, line) == rankzero_dt(1, m + 1, line) == 3
        conic = _line_pairs(CONIC)
        assert rankzero_dt(2, -2, conic) == rankzero_dt(2, 0, conic) == -6
        assert rankzero_dt(2, -1, conic) == rankzero_dt(2, 1, conic) == F(-21, 4)

    def test_missing_pair_value(self):
        with pytest.raises(MissingPairValue):
            rankzero_dt(2, 0, _line_pairs())

    def test_table_bootstraps_through_pairs(self):
        t = DTTable((RANKZERO, USER))
        t.attach_pairs(_line_pairs(CONIC))
        t.freeze()
        assert t.lookup_with_source(P2Class(0, 2, 0)) == (-6, RANKZERO)


class TestSupport:
    def test_n_min(self):
        assert [n_min(c) for c in range(5)] == [0, 1, 1, 0, -2]

    def test_static_source_conventions(self):
        pairs = static_pair_source({})
        assert pairs.get(0, 0) == 1
        assert pairs.get(0, 3) == 0
        assert pairs.get(2, 0) == 0
