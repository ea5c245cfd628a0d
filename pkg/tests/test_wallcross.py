import pytest
import sys
import os
from fractions import Fraction

# Add project root to path so we can import the package
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from wallx.acceptance import CUBIC_RANKZERO, expected_constraint, expected_stratum
from wallx.combinat import PartsTuple
from wallx.dtstore import BUILTIN, n_min, rankzero_dt, static_pair_source
from wallx.errors import MissingPairValue, NotAvailable, WallxError
from wallx.lattice import AmbientData, P2Class, XClass
from wallx.wallcross import (
    BEHREND,
    EULER,
    ClassEquation,
    FormalRelation,
    OrbifoldJob,
    PairSolver,
    PairTable,
    PtLocalJob,
    Term,
    WindowConfig,
    build_table,
    constraint_relation,
    diagonal_coupling,
    enumerate_terms_star2,
    orbifold_pt,
    pt_local,
    recursion_sign,
    saturation_check,
    sign_factor,
    stratum_coefficients,
)

F = Fraction
W = WindowConfig()


@pytest.fixture(scope="module")
def behrend():
    return build_table()


@pytest.fixture(scope="module")
def dt(behrend):
    return behrend[0]


@pytest.fixture(scope="module")
def solver(behrend):
    return behrend[1]


def _trivial(c, n):
    return Term(1, 1, PartsTuple(1, 1, ()), 0, c, n)


def _single(part, e=1, r=0, cprime=0, nprime=0):
    return Term(2, e, PartsTuple(2, e, (part,)), r, cprime, nprime)


class TestWindowConfig:
    def test_defaults(self):
        assert (W.m_window, W.r_window, W.n_pad) == (3, 3, 3)

    def test_enlarged(self):
        big = W.enlarged(2)
        assert (big.m_window, big.r_window, big.n_pad) == (5, 5, 5)
        assert big.saturation_steps == W.saturation_steps

    @pytest.mark.parametrize("kwargs", [{"m_window": -1}, {"r_window": 0},
                                        {"n_pad": -2}, {"saturation_steps": 0}])
    def test_invalid(self, kwargs):
        with pytest.raises(ValueError):
            WindowConfig(**kwargs)


class TestPairTable:
    def test_conventions(self):
        table = PairTable(BEHREND, {(1, 2): F(-6)})
        assert table.get(0, 0) == 1
        assert table.get(0, 2) == 0
        assert table.get(-1, 4) == 0
        assert table.get(2, 0) == 0
        assert table.get(1, 2) == -6

    def test_missing(self):
        with pytest.raises(MissingPairValue):
            PairTable(BEHREND).get(1, 3)


class TestFormalRelation:
    def test_solved(self):
        rel = FormalRelation({(4, 1): F(1), (3, 0): F(2)}, {(4, 0): F(-2)}, target=(4, 1))
        assert rel.solved() == {(3, 0): -2, (4, 0): -2}

    def test_not_monic(self):
        rel = FormalRelation({(4, 1): F(2)}, {}, target=(4, 1))
        with pytest.raises(WallxError):
            rel.solved()

    def test_str(self):
        assert str(FormalRelation()) == "0 = 0"
        rel = FormalRelation({(1, 0): F(-1, 2)}, {})
        assert str(rel) == "(-1/2)*P[n=1,s=0] = 0"


class TestClassEquation:
    def test_trivial_solution(self):
        eq = ClassEquation(XClass(0, 0, 1, 0, 5))
        assert eq.s(0, 0) == 1
        assert eq.n_prime(0, 1, 0, 0) == 5
        eq.verify(_trivial(1, 5))

    def test_verify_rejects_wrong_term(self):
        eq = ClassEquation(XClass(0, 0, 1, 0, 5))
        with pytest.raises(WallxError):
            eq.verify(_trivial(1, 4))

    def test_r_range_contains_zero(self):
        assert 0 in ClassEquation(XClass(0, 0, 2, 0, 3)).r_range()


class TestSigns:
    def test_trivial_term(self):
        assert sign_factor(_trivial(1, 3), BEHREND) == 1
        assert recursion_sign(_trivial(1, 3), BEHREND) == -1

    def test_single_line_part(self):
        assert sign_factor(_single(P2Class(0, 1, F(3, 2))), BEHREND) == 1
        assert sign_factor(_single(P2Class(0, 1, F(1, 2))), BEHREND) == -1
        assert recursion_sign(_single(P2Class(0, 1, F(1, 2))), BEHREND) == 1

    def test_euler_sign_ignores_pairing(self):
        assert sign_factor(_single(P2Class(0, 1, F(3, 2))), EULER) == 1
        assert sign_factor(_single(P2Class(0, 1, F(1, 2))), EULER) == 1


class TestPtLocal:
    def test_line_class(self, dt):
        table = pt_local(1, 8, dt)
        for n in range(1, 9):
            assert table.get(1, n) == 3 * (-1) ** (n - 1) * n

    def test_below_support_vanishes(self, solver):
        for n in (-2, -1, 0):
            assert solver.compute(1, n) == 0

    def test_conic_values(self, solver):
        assert [solver.get(2, n) for n in range(1, 5)] == [-6, 15, -36, 66]

    def test_below_support_computed(self, dt):
        computed = PairSolver(dt, BEHREND, W, assume_support=False)
        for c in (1, 2):
            for n in range(n_min(c) - 3, n_min(c)):
                assert computed.get(c, n) == 0

    @pytest.mark.slow
    def test_cubic_below_support_computed(self):
        dt, _ = build_table(CUBIC_RANKZERO)
        computed = PairSolver(dt, BEHREND, W, assume_support=False)
        assert [computed.get(3, n) for n in range(-3, 0)] == [0, 0, 0]

    def test_cubic_needs_rank_zero_values(self):
        _, solver = build_table()
        with pytest.raises(NotAvailable):
            solver.get(3, 1)

    def test_rank_zero_closure(self, dt, solver):
        pairs = static_pair_source(solver.table(2, 4).values)
        assert dt.lookup_with_source(P2Class(0, 2, 0)) == (-6, BUILTIN)
        resolved = dt.provenance()
        assert P2Class(0, 2, 1) in solver.consumed_dt
        for key, value in solver.consumed_dt.items():
            assert resolved[key][0] == value
            if key.r == 0 and key.c <= 2:
                assert rankzero_dt(key.c, key.m, pairs) == value

    @pytest.mark.parametrize("n,m", [(3, 0), (4, 1)])
    def test_diagonal_coupling_is_degenerate(self, n, m):
        assert diagonal_coupling(2, n, W) == (m, 1)

    def test_euler_mode(self, dt):
        euler = PairSolver(dt, EULER, W)
        assert [euler.get(1, n) for n in range(1, 7)] == [3 * n for n in range(1, 7)]

    def test_unknown_mode(self, dt):
        with pytest.raises(ValueError):
            PairSolver(dt, "motivic")

    def test_threads_do_not_change_values(self, solver):
        _, threaded = build_table(threads=4)
        assert threaded.table(2, 4).values == solver.table(2, 4).values


class TestStrata:
    def test_line_recursion(self, dt):
        got = stratum_coefficients(1, 4, 0, dt, n_floor=-2)
        assert got == {-2: -18, -1: 15, 0: -12, 1: 9, 2: -6, 3: 3}
        assert got == expected_stratum(1, 4, -2)

    def test_conic_recursion(self, dt):
        got = stratum_coefficients(2, 6, 1, dt, n_floor=1)
        assert got == {1: 15, 2: -18, 3: 9, 4: -6, 5: -21}

    def test_point_stratum(self, dt):
        assert stratum_coefficients(1, 1, 0, dt) == {0: 3}

    def test_no_walls_below_support(self):
        assert enumerate_terms_star2(1, 0, W) == []


class TestOrbifold:
    def test_zero_class(self, dt, solver):
        assert orbifold_pt(XClass(0, 0, 0, 0, 0), solver, dt) == 1

    def test_point_class(self, dt, solver):
        assert orbifold_pt(XClass(0, 0, 0, 0, 1), solver, dt) == 0

    @pytest.mark.parametrize("c,n", [(1, 1), (1, 2), (1, 4), (2, 1), (2, 3)])
    def test_curve_classes_vanish(self, dt, solver, c, n):
        assert orbifold_pt(XClass(0, 0, c, 0, n), solver, dt) == 0

    def test_job_over_several_classes(self):
        classes = (XClass(0, 0, 0, 0, 0), XClass(0, 0, 1, 0, 2), XClass(0, 0, 2, 0, 1))
        assert OrbifoldJob(classes)(W) == {classes[0]: 1, classes[1]: 0, classes[2]: 0}

    def test_rank_one_rejected(self, dt, solver):
        with pytest.raises(WallxError):
            orbifold_pt(XClass(1, 0, 0, 0, 0), solver, dt)


class TestConstraint:
    @pytest.mark.parametrize("n0", [3, 4])
    def test_positive_intersection(self, dt, n0):
        rel = constraint_relation(n0, AmbientData(d_beta0=1, l_beta0=0), dt)
        assert rel.target == (n0, 1)
        assert rel.solved() == expected_constraint(n0, 0)

    def test_explicit_values(self, dt):
        rel = constraint_relation(4, AmbientData(d_beta0=1, l_beta0=0), dt)
        assert rel.solved() == {(0, 0): -12, (1, 0): 9, (2, 0): -6, (3, 0): 3, (4, 0): -2}

    def test_negative_intersection_has_no_twisted_side(self, dt):
        rel = constraint_relation(3, AmbientData(d_beta0=-1, l_beta0=0), dt)
        assert rel.lhs[(3, 1)] == 1
        assert all(key[1] < 1 for key in rel.lhs if key != (3, 1))
        assert rel.rhs == {}

    def test_negative_shift_is_empty(self, dt):
        rel = constraint_relation(2, AmbientData(d_beta0=-2, l_beta0=0), dt, shift=-1)
        assert rel.is_empty()
        assert str(rel) == "0 = 0"


class TestSaturation:
    def test_line_class_stable(self):
        assert saturation_check(PtLocalJob(1, 5), W)

    def test_moving_result_detected(self):
        seen = []

        def computation(w):
            seen.append(w.m_window)
            return min(w.m_window, 4)

        assert not saturation_check(computation, W)
        assert seen == [3, 4]

    def test_steps_follow_config(self):
        seen = []
        w = WindowConfig(saturation_steps=3)
        assert saturation_check(lambda v: seen.append(v.n_pad) or 0, w)
        assert seen == [3, 4, 5, 6]

    @pytest.mark.slow
    def test_cubic_stable(self):
        assert saturation_check(PtLocalJob(3, 4, user_entries=CUBIC_RANKZERO), W)
