import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bellkit.errors import AntipodalViolation, IncompleteAssignment
from bellkit.nogo import (
    BELL_OBSERVABLES,
    GHZ_OBSERVABLES,
    Assignment,
    bell_chosen_pairs,
    bell_equality_matrix,
    bell_frequency_audit,
    bell_frequency_audit_codes,
    bell_hull_infeasibility,
    bell_hull_threshold,
    constant_candidate,
    ghz_constraint_check,
    ghz_exhaustive_search,
    ghz_satisfaction_table,
    ghz_state,
    hemisphere_candidate,
    read_assignments_csv,
    singlet_same_probability,
    singlet_same_probability_born,
    spin_half_candidate_audit,
    write_assignments_csv,
    _sample_theta_pairs,
)
from bellkit.observables import Direction
from bellkit.rng import generator


def bell_assignment(v1, v2):
    values = {f"s1_{d}": v for d, v in zip("abc", v1)}
    values |= {f"s2_{d}": v for d, v in zip("abc", v2)}
    return Assignment(values)


class TestGhzConstraintCheck:
    def test_all_plus_violates_only_first(self):
        # hand parity count: yes-counts (3,3,3,3); only line 1 needs even
        a = Assignment({obs: 1 for obs in GHZ_OBSERVABLES})
        assert ghz_constraint_check(a) == {1}

    def test_flipped_x1_violates_only_fourth(self):
        # line 1 count 2 (even, ok); lines 2,3 count 3 (odd, ok); line 4 count 2
        values = {obs: 1 for obs in GHZ_OBSERVABLES}
        values[GHZ_OBSERVABLES[0]] = -1  # X1
        assert ghz_constraint_check(Assignment(values)) == {4}

    def test_every_assignment_violates_something(self):
        for code in range(64):
            a = Assignment.from_code(code, GHZ_OBSERVABLES)
            assert ghz_constraint_check(a)

    def test_incomplete_assignment(self):
        with pytest.raises(IncompleteAssignment):
            ghz_constraint_check(Assignment({GHZ_OBSERVABLES[0]: 1}))


class TestGhzExhaustiveSearch:
    def test_satisfying_count_zero(self):
        assert ghz_exhaustive_search().satisfying_count == 0

    def test_violated_sets_odd(self):
        for violated in ghz_exhaustive_search().per_assignment:
            assert len(violated) in (1, 3)

    def test_best_possible_is_three_of_four(self):
        assert min(len(v) for v in ghz_exhaustive_search().per_assignment) == 1

    def test_table_matches_per_assignment_check(self):
        table = ghz_satisfaction_table()
        for code in range(64):
            violated = ghz_constraint_check(Assignment.from_code(code, GHZ_OBSERVABLES))
            for k in range(4):
                assert bool(table[code, k]) == ((k + 1) not in violated)


class TestGhzState:
    def test_unique_ray(self):
        psi = ghz_state()
        expected = np.zeros(8)
        expected[3] = expected[4] = 1 / math.sqrt(2)
        assert psi.isclose(type(psi)(expected))


class TestSingletSameProbability:
    def test_known_angles(self):
        assert abs(singlet_same_probability(2 * math.pi / 3) - 0.75) <= math.ulp(0.75)
        assert singlet_same_probability(0.0) == 0.0
        assert singlet_same_probability(math.pi) == 1.0

    def test_range_check(self):
        with pytest.raises(ValueError):
            singlet_same_probability(-0.1)
        with pytest.raises(ValueError):
            singlet_same_probability(math.pi + 0.1)

    def test_born_cross_check(self):
        rng = np.random.default_rng(21)
        for _ in range(100):
            v = rng.standard_normal((2, 3))
            v /= np.linalg.norm(v, axis=1, keepdims=True)
            d1, d2 = Direction.from_array(v[0]), Direction.from_array(v[1])
            analytic = singlet_same_probability(d1.angle_to(d2))
            assert abs(analytic - singlet_same_probability_born(d1, d2)) < 1e-10


class TestChosenPairs:
    def test_all_plus(self):
        cp = bell_chosen_pairs(bell_assignment((1, 1, 1), (-1, -1, -1)))
        assert cp.respects_anticorrelation
        assert len(cp.pairs) == 6

    def test_two_plus_one_minus(self):
        cp = bell_chosen_pairs(bell_assignment((1, 1, -1), (-1, -1, 1)))
        assert cp.pairs == {("a", "b"), ("b", "a")}

    def test_star_violation_flagged_not_raised(self):
        cp = bell_chosen_pairs(bell_assignment((1, 1, 1), (1, -1, -1)))
        assert cp.star_violations == ("a",)
        assert not cp.respects_anticorrelation

    def test_every_star_respecting_assignment_has_a_pair(self):
        for bits in range(8):
            v1 = tuple(1 if (bits >> k) & 1 else -1 for k in range(3))
            v2 = tuple(-v for v in v1)
            cp = bell_chosen_pairs(bell_assignment(v1, v2))
            assert cp.respects_anticorrelation
            assert len(cp.pairs) >= 1

    def test_pigeonhole_frequency_one_third(self):
        # over any star-respecting sequence some ordered pair is chosen with
        # frequency >= 1/3; try random and adversarial sequences
        rng = np.random.default_rng(5)
        sequences = [rng.integers(0, 8, size=200) for _ in range(20)]
        sequences.append(np.zeros(50, dtype=int))  # adversarial: constant
        sequences.append(np.tile([1, 2, 4], 40))  # adversarial: cycling minorities
        for seq in sequences:
            totals: dict[tuple, int] = {}
            for bits in seq:
                v1 = tuple(1 if (int(bits) >> k) & 1 else -1 for k in range(3))
                cp = bell_chosen_pairs(bell_assignment(v1, tuple(-v for v in v1)))
                for pair in cp.pairs:
                    totals[pair] = totals.get(pair, 0) + 1
            assert max(totals.values()) / len(seq) >= 1 / 3


class TestBellFrequencyAudit:
    def test_constant_star_completed_all_plus(self):
        # hand computation: v1=+1, v2=-1 everywhere makes every pair unequal
        seq = [bell_assignment((1, 1, 1), (-1, -1, -1))] * 10
        audit = bell_frequency_audit(seq)
        for i in "abc":
            for j in "abc":
                if i != j:
                    assert audit.table.frequency(f"{i}:{j}") == 0.0
        assert audit.max_deviation == 0.75

    def test_uniform_mixture_of_all_64(self):
        # brute-force average: every pair agrees in exactly half the codes
        audit = bell_frequency_audit_codes(np.arange(64, dtype=np.uint16))
        for key, entry in audit.table.counts.items():
            assert entry.frequency == 0.5
        assert audit.max_deviation == 0.5
        assert audit.max_deviation >= 0.25

    def test_empty_sequence_rejected(self):
        with pytest.raises(ValueError):
            bell_frequency_audit([])
        with pytest.raises(ValueError):
            bell_frequency_audit_codes(np.array([], dtype=np.uint16))

    def test_all_64_constant_sequences(self):
        for code in range(64):
            audit = bell_frequency_audit_codes(np.full(7, code, dtype=np.uint16))
            assert audit.max_deviation >= 0.25

    def test_equality_matrix_against_direct_count(self):
        rng = np.random.default_rng(11)
        codes = rng.integers(0, 64, 300).astype(np.uint16)
        audit = bell_frequency_audit_codes(codes)
        seq = [Assignment.from_code(int(c), BELL_OBSERVABLES) for c in codes]
        for i_idx, i in enumerate("abc"):
            for j_idx, j in enumerate("abc"):
                direct = sum(1 for a in seq if a[f"s1_{i}"] == a[f"s2_{j}"])
                assert audit.table.counts[f"{i}:{j}"].hits == direct

    def test_object_and_code_paths_agree(self):
        rng = np.random.default_rng(13)
        codes = rng.integers(0, 64, 100).astype(np.uint16)
        via_objects = bell_frequency_audit(
            [Assignment.from_code(int(c), BELL_OBSERVABLES) for c in codes]
        )
        via_codes = bell_frequency_audit_codes(codes)
        assert via_objects.table.to_dict() == via_codes.table.to_dict()

    @given(st.integers(0, 2**32 - 1), st.integers(1, 2000))
    @settings(max_examples=200, deadline=None)
    def test_random_sequences_deviate(self, seed, length):
        codes = np.random.default_rng(seed).integers(0, 64, length).astype(np.uint16)
        assert bell_frequency_audit_codes(codes).max_deviation >= 0.04


class TestBellHull:
    def test_infeasible_at_four_percent(self):
        assert bell_hull_infeasibility(0.04).feasible is False

    def test_feasible_at_point_75(self):
        assert bell_hull_infeasibility(0.75).feasible is True

    def test_epsilon_range(self):
        with pytest.raises(ValueError):
            bell_hull_infeasibility(-0.01)
        with pytest.raises(ValueError):
            bell_hull_infeasibility(1.0)

    def test_threshold_bracket(self):
        threshold = bell_hull_threshold()
        assert 0.04 < threshold < 0.75
        # the optimal mixture value, cross-checked against scipy below
        assert threshold == pytest.approx(1 / 16, abs=1e-6)

    def test_against_scipy_oracle(self):
        linprog = pytest.importorskip("scipy.optimize").linprog
        vertices = bell_equality_matrix().astype(float)
        targets = np.array([0.75 if i != j else 0.0 for i in range(3) for j in range(3)])
        for eps in (0.02, 0.04, 0.0625, 0.1, 0.3):
            a_ub = np.vstack([vertices.T, -vertices.T])
            b_ub = np.concatenate([targets + eps, -(targets - eps)])
            res = linprog(
                np.zeros(64),
                A_ub=a_ub,
                b_ub=b_ub,
                A_eq=np.ones((1, 64)),
                b_eq=[1.0],
                bounds=[(0, None)] * 64,
                method="highs",
            )
            assert bell_hull_infeasibility(eps).feasible == (res.status == 0)


class TestSpinHalfAudit:
    def test_sampled_pair_geometry(self):
        theta = 1.1
        x, y = _sample_theta_pairs(theta, 5000, generator(3))
        dots = np.sum(x * y, axis=1)
        assert np.abs(dots - math.cos(theta)).max() < 1e-9
        assert np.abs(np.linalg.norm(y, axis=1) - 1.0).max() < 1e-9

    def test_hemisphere_at_120_degrees(self):
        # analytic oracle: hemisphere same-sign fraction on a theta-circle
        # is 1 - theta/pi = 1/3, far above the cos^2(theta/2) = 1/4 target
        theta = 2 * math.pi / 3
        audit = spin_half_candidate_audit(hemisphere_candidate(), theta, 200_000, seed=2)
        stderr = math.sqrt((1 / 3) * (2 / 3) / audit.samples)
        assert abs(audit.estimate - 1 / 3) < 5 * stderr
        assert audit.target == pytest.approx(0.25, abs=1e-12)
        assert audit.z_score > 5

    def test_hemisphere_at_right_angle_cannot_falsify(self):
        audit = spin_half_candidate_audit(
            hemisphere_candidate(), math.pi / 2, 100_000, seed=6
        )
        assert audit.target == pytest.approx(0.5, abs=1e-12)
        assert abs(audit.estimate - 0.5) < 5 * math.sqrt(0.25 / audit.samples)
        assert abs(audit.z_score) < 5

    def test_constant_candidate_rejected(self):
        with pytest.raises(AntipodalViolation):
            spin_half_candidate_audit(constant_candidate(), 1.0, 2000, seed=1)

    def test_minimum_samples(self):
        with pytest.raises(ValueError):
            spin_half_candidate_audit(hemisphere_candidate(), 1.0, 999, seed=1)

    def test_theta_domain(self):
        with pytest.raises(ValueError):
            spin_half_candidate_audit(hemisphere_candidate(), 0.0, 2000, seed=1)

    def test_off_axis_hemisphere(self):
        axis = Direction.from_array(np.array([1.0, 2.0, -0.5]) / np.linalg.norm([1.0, 2.0, -0.5]))
        theta = 1.9
        audit = spin_half_candidate_audit(hemisphere_candidate(axis), theta, 100_000, seed=9)
        analytic = 1 - theta / math.pi
        assert abs(audit.estimate - analytic) < 5 * math.sqrt(analytic * (1 - analytic) / audit.samples)


class TestAssignmentCsv:
    def test_ghz_round_trip(self, tmp_path):
        rng = np.random.default_rng(1)
        seq = [
            Assignment.from_code(int(c), GHZ_OBSERVABLES)
            for c in rng.integers(0, 64, 20)
        ]
        path = tmp_path / "ghz.csv"
        write_assignments_csv(path, seq, observables=GHZ_OBSERVABLES)
        again = read_assignments_csv(path)
        assert again == seq

    def test_bell_round_trip(self, tmp_path):
        seq = [bell_assignment((1, -1, 1), (-1, 1, -1))] * 3
        path = tmp_path / "bell.csv"
        write_assignments_csv(path, seq, observables=BELL_OBSERVABLES)
        assert read_assignments_csv(path) == seq
