import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bellkit.errors import DimensionMismatch, EmptyEigenspace, NonCommuting
from bellkit.hilbert import (
    Operator,
    Projection,
    StateVector,
    Subspace,
    born_probability,
    commutes,
    complement,
    intersect,
    measure_commuting,
    product_state,
    projector,
    sample_commuting,
    simultaneous_eigenstate,
    singlet_state,
    span,
    subspace_sum,
    tensor,
)

# independent oracle matrices, built from raw numpy
I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]])
SZ = np.diag([1.0, -1.0]).astype(complex)


def kron(*mats):
    out = np.array([[1.0 + 0j]])
    for m in mats:
        out = np.kron(out, m)
    return out


def random_state(rng, dim):
    v = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return StateVector(v / np.linalg.norm(v))


class TestStateVector:
    def test_rejects_unnormalized(self):
        with pytest.raises(ValueError):
            StateVector([1.0, 1.0])

    def test_rejects_nonfinite(self):
        with pytest.raises(ValueError):
            StateVector([np.nan, 0.0])

    def test_canonical_phase(self):
        # a global phase is removed; the anchor amplitude becomes real positive
        phase = np.exp(1j * 0.7)
        psi = StateVector(phase * np.array([0.0, 0.6, 0.8j]))
        assert psi.amplitudes[1] == pytest.approx(0.6)
        assert psi.amplitudes[2] == pytest.approx(0.8j)

    def test_equality_up_to_phase(self):
        rng = np.random.default_rng(1)
        base = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        base /= np.linalg.norm(base)
        a = StateVector(base)
        b = StateVector(base * np.exp(1j * 2.1))
        assert a.isclose(b)

    def test_components_round_trip(self):
        psi = singlet_state()
        again = StateVector.from_components(psi.to_components())
        assert psi.isclose(again)

    def test_immutable(self):
        psi = singlet_state()
        with pytest.raises(AttributeError):
            psi.dim = 2
        with pytest.raises(ValueError):
            psi.amplitudes[0] = 1.0


class TestTensor:
    def test_identity_case(self):
        out = tensor(Operator(I2), Operator(I2))
        assert out.dim == 4
        assert np.array_equal(out.matrix, np.eye(4))

    def test_kronecker_entries(self):
        out = tensor(Operator(SX), Operator(SX))
        assert out.matrix[0, 3] == 1
        assert out.matrix[0, 0] == 0

    def test_disjoint_factors_commute(self):
        a = tensor(Operator(SZ), Operator(I2))
        b = tensor(Operator(I2), Operator(SX))
        assert commutes(a, b)


class TestCommutes:
    def test_self(self):
        assert commutes(Operator(SX), Operator(SX))

    def test_pauli_pair(self):
        assert not commutes(Operator(SX), Operator(SY))

    def test_three_particle_line_operators(self):
        xxx = Operator(kron(SX, SX, SX))
        yyx = Operator(kron(SY, SY, SX))
        # oracle: direct matrix computation
        delta = xxx.matrix @ yyx.matrix - yyx.matrix @ xxx.matrix
        assert np.abs(delta).max() < 1e-12
        assert commutes(xxx, yyx)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            commutes(Operator(SX), Operator(np.eye(4)))


class TestBornProbability:
    def test_eigenstate(self):
        psi = StateVector([1.0, 0.0])
        assert born_probability(psi, Projection(np.diag([1.0, 0.0]))) == 1.0

    def test_zero_projection(self):
        psi = StateVector([1.0, 0.0])
        assert born_probability(psi, Projection.zero(2)) == 0.0

    def test_singlet_up_down(self):
        # oracle: the singlet has two amplitudes of squared modulus 1/2
        p = Projection(np.diag([0.0, 1.0, 0.0, 0.0]))
        assert born_probability(singlet_state(), p) == pytest.approx(0.5, abs=1e-12)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            born_probability(StateVector([1, 0]), Projection.identity(4))

    @given(st.integers(0, 2**32 - 1), st.integers(2, 12))
    @settings(max_examples=50, deadline=None)
    def test_bounds_and_complement(self, seed, dim):
        rng = np.random.default_rng(seed)
        psi = random_state(rng, dim)
        mask = np.diag(rng.integers(0, 2, dim).astype(float))
        gauss = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
        q, _ = np.linalg.qr(gauss)
        p = Projection(q @ mask @ q.conj().T)
        comp = Projection(np.eye(dim) - p.matrix)
        a = born_probability(psi, p)
        assert 0.0 <= a <= 1.0
        assert a + born_probability(psi, comp) == pytest.approx(1.0, abs=1e-9)


class TestSubspaceLattice:
    def setup_method(self):
        self.e = [StateVector(row) for row in np.eye(4)]

    def test_intersect_self(self):
        s = span([self.e[1], self.e[2]])
        same = intersect(s, s)
        assert same.dim == s.dim
        assert np.allclose(projector(same).matrix, projector(s).matrix, atol=1e-9)

    def test_sum_dimension(self):
        s = subspace_sum(span([self.e[1]]), span([self.e[2]]))
        assert s.dim == 2

    def test_intersection_rank(self):
        # oracle: numpy rank computation on the joint system
        s = span([self.e[1], self.e[2]])
        t = span([self.e[1], self.e[0]])
        meet = intersect(s, t)
        assert meet.dim == 1
        assert meet.contains(self.e[1])
        assert not meet.contains(self.e[0])

    def test_projector_reproduces_members(self):
        rng = np.random.default_rng(3)
        for _ in range(25):
            vecs = [random_state(rng, 6) for _ in range(3)]
            p = projector(span(vecs))
            for v in vecs:
                assert np.abs(p.matrix @ v.amplitudes - v.amplitudes).max() < 1e-8

    def test_complement(self):
        s = span([self.e[0]])
        c = complement(s)
        assert c.dim == 3
        assert not c.contains(self.e[0])

    def test_span_empty_needs_dim(self):
        with pytest.raises(ValueError):
            span([])
        assert span([], dim_ambient=4).dim == 0

    def test_mixed_dims_rejected(self):
        with pytest.raises(DimensionMismatch):
            subspace_sum(Subspace.full(2), Subspace.full(4))


class TestSimultaneousEigenstate:
    def test_single_z(self):
        psi, dim = simultaneous_eigenstate([Operator(SZ)], [1])
        assert dim == 1
        assert psi.isclose(StateVector([1.0, 0.0]))

    def test_horizontal_line_state(self):
        ops = [
            Operator(kron(SX, SX, SX)),
            Operator(kron(SY, SY, SX)),
            Operator(kron(SY, SX, SY)),
            Operator(kron(SX, SY, SY)),
        ]
        psi, dim = simultaneous_eigenstate(ops, [1, 1, 1, -1])
        assert dim == 1
        # frozen oracle: hand-derived unique ray (|100> + |011>)/sqrt(2)
        expected = np.zeros(8)
        expected[3] = expected[4] = 1 / math.sqrt(2)
        assert psi.isclose(StateVector(expected))
        for op, ev in zip(ops, [1, 1, 1, -1]):
            assert np.abs(op.apply(psi) - ev * psi.amplitudes).max() < 1e-8

    def test_empty_eigenspace(self):
        # the four operators multiply to -identity, so all +1 is impossible
        ops = [
            Operator(kron(SX, SX, SX)),
            Operator(kron(SY, SY, SX)),
            Operator(kron(SY, SX, SY)),
            Operator(kron(SX, SY, SY)),
        ]
        prod = np.linalg.multi_dot([op.matrix for op in ops])
        assert np.allclose(prod, -np.eye(8))
        with pytest.raises(EmptyEigenspace):
            simultaneous_eigenstate(ops, [1, 1, 1, 1])

    def test_noncommuting_rejected(self):
        with pytest.raises(NonCommuting):
            simultaneous_eigenstate([Operator(SX), Operator(SZ)], [1, 1])

    def test_degenerate_reports_dimension(self):
        psi, dim = simultaneous_eigenstate([Operator(kron(SZ, I2))], [1])
        assert dim == 2
        assert np.abs(kron(SZ, I2) @ psi.amplitudes - psi.amplitudes).max() < 1e-8


class TestMeasurement:
    def test_deterministic_eigenstate(self):
        psi = StateVector([1.0, 0.0])
        samples = sample_commuting(psi, [Operator(SZ)], shots=500, seed=9)
        assert np.all(samples == 1)

    def test_reduced_product_line_one(self):
        expected = np.zeros(8)
        expected[3] = expected[4] = 1 / math.sqrt(2)
        ghz = StateVector(expected)
        ops = [Operator(kron(SX, I2, I2)), Operator(kron(I2, SY, I2)), Operator(kron(I2, I2, SY))]
        samples = sample_commuting(ghz, ops, shots=2000, seed=5)
        assert np.all(samples.prod(axis=1) == -1)

    def test_singlet_anticorrelation(self):
        ops = [Operator(kron(SZ, I2)), Operator(kron(I2, SZ))]
        samples = sample_commuting(singlet_state(), ops, shots=2000, seed=8)
        assert np.all(samples[:, 0] == -samples[:, 1])

    def test_seed_determinism(self):
        psi = product_state(StateVector([0.6, 0.8]), StateVector([1.0, 0.0]))
        ops = [Operator(kron(SZ, I2)), Operator(kron(I2, SX))]
        a = sample_commuting(psi, ops, shots=100, seed=4)
        b = sample_commuting(psi, ops, shots=100, seed=4)
        assert np.array_equal(a, b)
        assert measure_commuting(psi, ops, seed=4) == list(a[0])

    def test_frequencies_match_born(self):
        # GHZ line-one outcomes are uniform over the four product -1 outcomes
        expected = np.zeros(8)
        expected[3] = expected[4] = 1 / math.sqrt(2)
        ghz = StateVector(expected)
        ops = [Operator(kron(SX, I2, I2)), Operator(kron(I2, SY, I2)), Operator(kron(I2, I2, SY))]
        shots = 100_000
        samples = sample_commuting(ghz, ops, shots=shots, seed=12)
        keys = samples @ np.array([4, 2, 1])  # distinct key per outcome triple
        _, counts = np.unique(keys, return_counts=True)
        stderr = math.sqrt(0.25 * 0.75 / shots)
        assert len(counts) == 4
        assert np.all(np.abs(counts / shots - 0.25) < 4 * stderr)

    def test_noncommuting_rejected(self):
        with pytest.raises(NonCommuting):
            sample_commuting(StateVector([1, 0]), [Operator(SX), Operator(SZ)], 10, 0)


def test_singlet_state_amplitudes():
    psi = singlet_state()
    s = 1 / math.sqrt(2)
    assert np.allclose(psi.amplitudes, [0.0, s, -s, 0.0])


def test_split_streams_are_disjoint_and_stable():
    from bellkit.rng import split

    a1, b1 = split(123, 2)
    a2, b2 = split(123, 2)
    draws_a1, draws_a2 = a1.random(5), a2.random(5)
    assert np.array_equal(draws_a1, draws_a2)
    assert not np.array_equal(draws_a1, b1.random(5))
    # consuming one stream must not shift the other
    c1, d1 = split(7, 2)
    c1.random(1000)
    _, d2 = split(7, 2)
    assert np.array_equal(d1.random(5), d2.random(5))
