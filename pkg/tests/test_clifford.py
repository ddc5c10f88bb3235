import numpy as np
import pytest

import spinmagic as sm
from spinmagic.clifford import CXZ_MATRIX, Gate, conjugation_offenders
from spinmagic.states import StateVector, random_state

RNG = np.random.default_rng(31)


def test_cxz_matrix_is_unitary_involution():
    assert np.allclose(CXZ_MATRIX @ CXZ_MATRIX.conj().T, np.eye(4), atol=1e-12)
    assert np.allclose(CXZ_MATRIX @ CXZ_MATRIX, np.eye(4), atol=1e-12)


def test_gate_validation():
    with pytest.raises(ValueError):
        Gate("H", (1, 2))
    with pytest.raises(ValueError):
        Gate("CXZ", (2, 2))
    with pytest.raises(ValueError):
        Gate("BOGUS", (1,))
    with pytest.raises(ValueError):
        sm.apply_gate(random_state(2, RNG), Gate("H", (3,)))


def test_h_gate_action():
    zero = StateVector(1, np.array([1.0, 0.0], dtype=complex))
    plus = sm.apply_gate(zero, Gate("H", (1,)))
    assert np.allclose(plus.amps, [1 / np.sqrt(2), 1 / np.sqrt(2)])


def test_parityz_gate_signs():
    s = random_state(3, RNG)
    out = sm.apply_gate(s, Gate("PARITYZ"))
    idx = np.arange(8)
    sign = 1.0 - 2.0 * (np.bitwise_count(idx) & 1)
    assert np.allclose(out.amps, sign * s.amps)


def test_gates_are_involutions_and_unitary():
    s = random_state(3, RNG)
    for g in (Gate("H", (2,)), Gate("Z", (1,)), Gate("PARITYZ"), Gate("CXZ", (1, 3))):
        once = sm.apply_gate(s, g)
        assert np.vdot(once.amps, once.amps).real == pytest.approx(1.0, abs=1e-12)
        twice = sm.apply_gate(once, g)
        assert np.allclose(twice.amps, s.amps, atol=1e-12)


def test_circuit_inverse_undoes_circuit():
    circ = sm.build_circuit_s(5)
    s = random_state(5, RNG)
    back = sm.apply_circuit_inverse(sm.apply_circuit(s, circ), circ)
    assert sm.fidelity(back, s) == pytest.approx(1.0, abs=1e-12)


def test_circuit_gate_count():
    for L in (3, 5, 7):
        M = (L - 1) // 2
        assert len(sm.build_circuit_s(L)) == 2 * (L - 1) + M + 3


@pytest.mark.parametrize("L", [3, 5, 7])
def test_circuit_maps_w_to_omega(L):
    circ = sm.build_circuit_s(L)
    for ell in range(-(L - 1) // 2, (L - 1) // 2 + 1):
        img = sm.apply_circuit(sm.build_w(L, ell), circ)
        assert sm.fidelity(img, sm.build_omega(L, ell)) == pytest.approx(1.0, abs=1e-11)


def test_desc_ordering_does_not_realize_the_mapping():
    circ = sm.build_circuit_s(5, chain_order="desc")
    img = sm.apply_circuit(sm.build_w(5, 1), circ)
    assert sm.fidelity(img, sm.build_omega(5, 1)) < 0.99


def test_circuit_preserves_sre():
    circ = sm.build_circuit_s(5)
    for _ in range(5):
        s = random_state(5, RNG)
        before = sm.sre_brute(s).value
        after = sm.sre_brute(sm.apply_circuit(s, circ)).value
        assert after == pytest.approx(before, abs=1e-11)


def test_serialization_roundtrip():
    circ = sm.build_circuit_s(7)
    text = sm.circuit_to_text(circ)
    assert sm.circuit_from_text(text) == circ
    assert sm.circuit_from_text("# comment\n\nH 2\nCXZ 1 2\n") == [
        Gate("H", (2,)),
        Gate("CXZ", (1, 2)),
    ]


@pytest.mark.parametrize("L", [3, 5])
def test_verify_clifford_accepts_circuit_s(L):
    assert sm.verify_clifford(sm.build_circuit_s(L), L)
    assert sm.clifford_offenders(sm.build_circuit_s(L), L) == []


def test_conjugation_detects_non_clifford():
    # the pi/8 phase gate sends X outside the Pauli group
    phase = np.exp(1j * np.pi / 4)

    def forward(s):
        amps = s.amps.copy()
        amps[1::2] *= phase
        return StateVector(s.n_sites, amps)

    def inverse(s):
        amps = s.amps.copy()
        amps[1::2] *= np.conj(phase)
        return StateVector(s.n_sites, amps)

    assert conjugation_offenders(forward, inverse, 1) == [(1, "x")]
