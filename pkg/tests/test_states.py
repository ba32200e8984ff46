import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from globalphase.analytic import rho_bc_one_param, rho_mixed_one_param
from globalphase.exceptions import (
    EmptyKeepSet,
    IndexOutOfRange,
    InvalidQubitIndex,
    ParseError,
    QOutOfRange,
    StateError,
)
from globalphase.states import (
    DensityMatrix,
    PhaseTable,
    PureState,
    apply_diagonal_unitary,
    apply_phase,
    build_mixed_plus_minus,
    build_phase_state,
    density_of,
    partial_trace,
    purity,
    single_qubit_purities,
)

from oracles import one_qubit_marginal

SQ2 = math.sqrt(2.0)


def eq17_table(theta=math.pi):
    return PhaseTable.single(3, 0, theta)


class TestPhaseTable:
    def test_normalizes_into_period(self):
        t = PhaseTable(1, [2 * math.pi, -math.pi / 2])
        assert t[0] == 0.0
        assert t[1] == pytest.approx(3 * math.pi / 2)
        assert np.all((t.phases >= 0) & (t.phases < 2 * math.pi))

    def test_tiny_negative_does_not_wrap_to_two_pi(self):
        t = PhaseTable(1, [-1e-20, 0.0])
        assert t[0] < 2 * math.pi

    def test_length_checked(self):
        with pytest.raises(StateError):
            PhaseTable(2, [0, 0, 0])

    def test_size_guard(self):
        with pytest.raises(StateError):
            PhaseTable(11, np.zeros(2**11))
        assert PhaseTable(11, np.zeros(2**11), max_qubits=12).n == 11

    def test_immutable(self):
        t = PhaseTable(1, [0, 1])
        with pytest.raises(ValueError):
            t.phases[0] = 3.0

    def test_json_round_trip(self):
        t = PhaseTable(2, [0.1, 7.0, -1.0, 3.0])
        u = PhaseTable.from_json(t.to_json())
        assert u == t
        d = json.loads(t.to_json())
        assert d["n"] == 2 and len(d["phases"]) == 4

    @pytest.mark.parametrize("text", ["{", "[1,2]", '{"n": 2}', '{"n": 1, "phases": ["a", 0]}'])
    def test_bad_json(self, text):
        with pytest.raises(ParseError):
            PhaseTable.from_json(text)


class TestBuildPhaseState:
    def test_uniform_one_qubit(self):
        s = build_phase_state(PhaseTable(1, [0, 0]))
        np.testing.assert_allclose(s.amplitudes, [1 / SQ2, 1 / SQ2])

    def test_single_phase_on_000(self):
        s = build_phase_state(eq17_table())
        assert s.amplitudes[0] == pytest.approx(-1 / (2 * SQ2))
        np.testing.assert_allclose(s.amplitudes[1:], 1 / (2 * SQ2))

    def test_msb_is_qubit_one(self):
        # phases (0, 0, pi, pi): qubit 1 carries the sign
        s = build_phase_state(PhaseTable(2, [0, 0, math.pi, math.pi]))
        expected = np.kron([1, -1], [1, 1]) / 2
        np.testing.assert_allclose(s.amplitudes, expected, atol=1e-15)
        assert single_qubit_purities(density_of(s)) == pytest.approx([1.0, 1.0])

    @settings(max_examples=40, deadline=None)
    @given(st.integers(1, 5), st.integers(0, 2**32 - 1))
    def test_norm_and_purity(self, n, seed):
        rng = np.random.default_rng(seed)
        t = PhaseTable(n, rng.uniform(-10, 10, 2**n))
        rho = density_of(build_phase_state(t))
        assert purity(rho) == pytest.approx(1.0, abs=1e-12)
        keep = sorted(rng.choice(np.arange(1, n + 1), rng.integers(1, n + 1), replace=False))
        assert abs(np.trace(partial_trace(rho, keep).matrix) - 1) <= 1e-12

    def test_unnormalized_rejected(self):
        with pytest.raises(StateError):
            PureState(1, [1, 1])


class TestDensityOf:
    def test_basis_zero(self):
        rho = density_of(PureState.basis(1, 0))
        np.testing.assert_array_equal(rho.matrix, np.diag([1, 0]))

    def test_uniform_two_qubit(self):
        rho = density_of(build_phase_state(PhaseTable.constant(2)))
        np.testing.assert_allclose(rho.matrix, np.full((4, 4), 0.25))

    def test_eq17_reduces_to_displayed_matrix(self):
        rho = density_of(build_phase_state(eq17_table()))
        assert np.linalg.matrix_rank(rho.matrix) == 1
        red = partial_trace(rho, [2, 3])
        tau = -1.0
        expected = np.full((4, 4), 2.0, dtype=complex)
        expected[0, 1:] = 1 + tau
        expected[1:, 0] = 1 + tau
        np.testing.assert_allclose(red.matrix, expected / 8, atol=1e-12)


class TestApplyPhase:
    def test_zero_angle_is_identity(self):
        rho = density_of(build_phase_state(PhaseTable(2, [0.3, 1, 2, 3])))
        assert apply_phase(rho, 2, 0.0).allclose(rho, 0)

    def test_diagonal_unchanged(self):
        rho = DensityMatrix(2, np.diag([0.1, 0.2, 0.3, 0.4]))
        assert apply_phase(rho, 3, 1.234).allclose(rho, 1e-15)

    def test_index_checked(self):
        rho = DensityMatrix(1, np.eye(2) / 2)
        with pytest.raises(IndexOutOfRange):
            apply_phase(rho, 2, 1.0)

    def test_spectrum_preserved(self):
        rho = build_mixed_plus_minus(0.2, 3)
        out = apply_phase(rho, 5, 2.0)
        np.testing.assert_allclose(
            np.linalg.eigvalsh(out.matrix), np.linalg.eigvalsh(rho.matrix), atol=1e-13
        )

    @pytest.mark.parametrize("q", [0.0, 0.1, 0.3, 0.5])
    @pytest.mark.parametrize("theta", [0.0, 1.0, math.pi, 5.0])
    def test_mixed_reduction_matches_closed_form(self, q, theta):
        rho = apply_phase(build_mixed_plus_minus(q, 3), 0, theta)
        expected = rho_mixed_one_param(theta, q)
        for keep in ([1, 2], [1, 3], [2, 3]):
            assert partial_trace(rho, keep).allclose(expected, 1e-12)

    def test_pure_phase_state_via_unitary(self):
        rho = build_mixed_plus_minus(0.0, 3)
        out = apply_phase(rho, 0, math.pi)
        direct = density_of(build_phase_state(eq17_table()))
        assert out.allclose(direct, 1e-12)


class TestMixedBuilder:
    def test_q_zero_is_pure(self):
        rho = build_mixed_plus_minus(0.0, 3)
        assert purity(rho) == pytest.approx(1.0)
        np.testing.assert_allclose(rho.matrix, np.full((8, 8), 1 / 8))

    def test_q_half_is_maximally_mixed(self):
        np.testing.assert_allclose(build_mixed_plus_minus(0.5, 1).matrix, np.eye(2) / 2)

    def test_marginal_purity(self):
        rho = build_mixed_plus_minus(0.25, 3)
        assert np.trace(rho.matrix).real == pytest.approx(1.0)
        marg = [partial_trace(rho, [k]) for k in (1, 2, 3)]
        for m in marg:
            assert purity(m) == pytest.approx(0.75**2 + 0.25**2, abs=1e-14)
            assert m.allclose(marg[0], 1e-15)

    @pytest.mark.parametrize("q", [-0.01, 0.51])
    def test_range(self, q):
        with pytest.raises(QOutOfRange):
            build_mixed_plus_minus(q, 2)


class TestPartialTrace:
    def test_product(self):
        a = np.array([[0.7, 0.1j], [-0.1j, 0.3]])
        b = np.array([[0.4, 0.2], [0.2, 0.6]])
        rho = DensityMatrix(2, np.kron(a, b))
        assert partial_trace(rho, [2]).allclose(b, 1e-15)
        assert partial_trace(rho, [1]).allclose(a, 1e-15)

    def test_ghz(self):
        amps = np.zeros(8)
        amps[0] = amps[7] = 1 / SQ2
        rho = density_of(PureState(3, amps))
        assert partial_trace(rho, [3]).allclose(np.eye(2) / 2, 1e-15)

    def test_eq17_pair_matches_closed_form(self):
        rho = density_of(build_phase_state(eq17_table()))
        for keep in ([1, 2], [2, 3], [1, 3]):
            assert partial_trace(rho, keep).allclose(rho_bc_one_param(math.pi), 1e-12)

    def test_keep_all_is_identity(self):
        rho = build_mixed_plus_minus(0.1, 2)
        assert partial_trace(rho, [1, 2]) is rho

    def test_errors(self):
        rho = build_mixed_plus_minus(0.1, 2)
        with pytest.raises(EmptyKeepSet):
            partial_trace(rho, [])
        with pytest.raises(InvalidQubitIndex):
            partial_trace(rho, [3])
        with pytest.raises(InvalidQubitIndex):
            partial_trace(rho, [2, 1])
        with pytest.raises(InvalidQubitIndex):
            partial_trace(rho, [1, 1])

    @settings(max_examples=30, deadline=None)
    @given(st.integers(2, 5), st.integers(0, 2**32 - 1))
    def test_single_qubit_against_summation(self, n, seed):
        rng = np.random.default_rng(seed)
        s = build_phase_state(PhaseTable(n, rng.uniform(0, 7, 2**n)))
        rho = density_of(s)
        for k in range(1, n + 1):
            assert partial_trace(rho, [k]).allclose(one_qubit_marginal(s.amplitudes, n, k), 1e-12)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(2, 5), st.integers(0, 2**32 - 1))
    def test_marginal_consistency(self, n, seed):
        rng = np.random.default_rng(seed)
        rho = density_of(build_phase_state(PhaseTable(n, rng.uniform(0, 7, 2**n))))
        direct = partial_trace(rho, [1])
        via = partial_trace(partial_trace(rho, [1, 2]), [1])
        assert direct.allclose(via, 1e-12)

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 2**32 - 1))
    def test_commutes_with_kept_diagonal_unitary(self, seed):
        # a diagonal unitary acting on qubits 1, 2 only, traced over qubit 3
        rng = np.random.default_rng(seed)
        rho = density_of(build_phase_state(PhaseTable(3, rng.uniform(0, 7, 8))))
        d12 = np.exp(1j * rng.uniform(0, 7, 4))
        full = np.kron(d12, np.ones(2))
        before = apply_diagonal_unitary(partial_trace(rho, [1, 2]), d12)
        after = partial_trace(apply_diagonal_unitary(rho, full), [1, 2])
        assert before.allclose(after, 1e-12)


def test_purity_values():
    assert purity(density_of(PureState.basis(1))) == 1.0
    assert purity(DensityMatrix(1, np.eye(2) / 2)) == 0.5
    rho = density_of(build_phase_state(PhaseTable.constant(3)))
    assert purity(partial_trace(rho, [3])) == pytest.approx(1.0, abs=1e-14)


def test_density_matrix_validation():
    with pytest.raises(StateError):
        DensityMatrix(1, [[1, 0], [0, 1]])
    with pytest.raises(StateError):
        DensityMatrix(1, [[0.5, 1], [0, 0.5]])
    with pytest.raises(StateError):
        DensityMatrix(2, np.eye(2) / 2)
