"""The Clifford circuit mapping phased W-states onto kink superpositions,
generic gate application, and a conjugation-based Clifford check.

The two-site gate C(j, l) = exp[i pi/4 (1 - sigma^x_j)(1 - sigma^z_l)] is
built literally from its exponential (control in the x basis on j, phase on
the z value of l); it is not the computational-basis CNOT.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import expm

from .states import StateVector, apply_pauli

# 4x4 unitary of C(j, l) in the (bit_j, bit_l) product basis, row = 2*bj + bl
_SX = np.array([[0, 1], [1, 0]], dtype=complex)
_SZ = np.array([[1, 0], [0, -1]], dtype=complex)
_ID = np.eye(2, dtype=complex)
CXZ_MATRIX = expm(1j * np.pi / 4 * np.kron(_ID - _SX, _ID - _SZ))


@dataclass(frozen=True)
class Gate:
    """One circuit element: kind in {'H', 'CXZ', 'Z', 'PARITYZ'}."""

    kind: str
    sites: tuple = ()

    def __post_init__(self):
        arity = {"H": 1, "CXZ": 2, "Z": 1, "PARITYZ": 0}
        if self.kind not in arity:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if len(self.sites) != arity[self.kind]:
            raise ValueError(f"{self.kind} takes {arity[self.kind]} site(s)")
        if self.kind == "CXZ" and self.sites[0] == self.sites[1]:
            raise ValueError("CXZ control and target must differ")


def apply_gate(state, gate):
    L = state.n_sites
    psi = state.amps
    idx = np.arange(psi.size, dtype=np.int64)
    if gate.kind == "H":
        b = 1 << (gate.sites[0] - 1)
        _check_sites(gate, L)
        lo = psi[idx & ~b]
        hi = psi[idx | b]
        out = np.where((idx & b) == 0, lo + hi, lo - hi) / np.sqrt(2)
        return StateVector(L, out)
    if gate.kind == "Z":
        _check_sites(gate, L)
        b = 1 << (gate.sites[0] - 1)
        out = np.where((idx & b) != 0, -psi, psi)
        return StateVector(L, out)
    if gate.kind == "PARITYZ":
        sign = 1.0 - 2.0 * (np.bitwise_count(idx) & 1)
        return StateVector(L, sign * psi)
    if gate.kind == "CXZ":
        _check_sites(gate, L)
        bj = 1 << (gate.sites[0] - 1)
        bl = 1 << (gate.sites[1] - 1)
        base = idx[((idx & bj) == 0) & ((idx & bl) == 0)]
        cols = np.stack([psi[base], psi[base | bl], psi[base | bj], psi[base | bj | bl]])
        new = CXZ_MATRIX @ cols
        out = np.empty_like(psi)
        out[base] = new[0]
        out[base | bl] = new[1]
        out[base | bj] = new[2]
        out[base | bj | bl] = new[3]
        return StateVector(L, out)
    raise ValueError(f"unknown gate kind {gate.kind!r}")


def _check_sites(gate, L):
    for s in gate.sites:
        if not 1 <= s <= L:
            raise ValueError(f"gate {gate} touches site {s} outside [1, {L}]")


def apply_circuit(state, circuit):
    """Apply gates in list order (index 0 first)."""
    for gate in circuit:
        state = apply_gate(state, gate)
    return state


def apply_circuit_inverse(state, circuit):
    """Every supported gate is an involution, so the inverse is the reversed list."""
    for gate in reversed(circuit):
        state = apply_gate(state, gate)
    return state


def build_circuit_s(L, chain_order="asc"):
    """Gate list (application order) of the W -> omega Clifford circuit:

    S = prod_j C(L, L-j) (prod_j sigma^z_{2j-1}) H(L) sigma^z_L
        prod_j C(j, j+1) Pi^z

    The rightmost factor acts first.  ``chain_order`` fixes the ambiguous
    ordering of the C(j, j+1) ladder; 'asc' (C(1,2) first) is the ordering
    that realizes the W -> omega mapping with ell' = ell and is the frozen
    default ('desc' kept for the ordering experiment).
    """
    if L < 3 or L % 2 == 0:
        raise ValueError(f"L must be odd and >= 3, got {L}")
    M = (L - 1) // 2
    js = range(1, L)
    ladder = list(js) if chain_order == "asc" else list(reversed(js))
    gates = [Gate("PARITYZ")]
    gates += [Gate("CXZ", (j, j + 1)) for j in ladder]
    gates += [Gate("Z", (L,)), Gate("H", (L,))]
    gates += [Gate("Z", (2 * j - 1,)) for j in range(1, M + 1)]
    gates += [Gate("CXZ", (L, L - j)) for j in range(1, L)]
    return gates


def circuit_to_text(circuit):
    """Line-oriented serialization, one gate per line ('H 5', 'CXZ 1 2', ...)."""
    return "\n".join(" ".join([g.kind, *map(str, g.sites)]) for g in circuit) + "\n"


def circuit_from_text(text):
    gates = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        kind, *sites = line.split()
        gates.append(Gate(kind, tuple(int(s) for s in sites)))
    return gates


def clifford_offenders(circuit, L, tol=1e-12):
    """Single-site Pauli generators whose conjugate U P U^dag is not a single
    signed Pauli string.  Empty list <=> the circuit is Clifford."""
    forward = lambda s: apply_circuit(s, circuit)
    inverse = lambda s: apply_circuit_inverse(s, circuit)
    return conjugation_offenders(forward, inverse, L, tol)


def conjugation_offenders(forward, inverse, L, tol=1e-12):
    """Like clifford_offenders but for an arbitrary unitary given as a pair of
    callables on StateVector (used to witness non-Clifford gates)."""
    N = 2**L
    bad = []
    for site in range(1, L + 1):
        for which in ("x", "z"):
            cols = np.empty((N, N), dtype=np.complex128)
            for s in range(N):
                e = np.zeros(N, dtype=np.complex128)
                e[s] = 1.0
                col = forward(apply_pauli(inverse(StateVector(L, e)), site, which))
                cols[:, s] = col.amps
            if not _is_signed_pauli(cols, tol):
                bad.append((site, which))
    return bad


def _is_signed_pauli(m, tol):
    """True iff the matrix is (global phase) x X_a Z_b for some masks a, b."""
    from .pauli import fwht

    N = m.shape[0]
    rows = np.argmax(np.abs(m), axis=0)
    a = rows[0] ^ 0
    if np.any(rows != (np.arange(N) ^ a)):
        return False
    phases = m[np.arange(N) ^ a, np.arange(N)]
    if np.any(np.abs(np.abs(phases) - 1.0) > 1e-9):
        return False
    # all other entries must vanish
    total = np.sum(np.abs(m) ** 2)
    if abs(total - N) > 1e-8:
        return False
    # the normalized phase pattern must be a parity character (-1)^{s.b}
    f = (phases / phases[0]).astype(np.complex128).copy()
    fwht(f)
    spikes = np.flatnonzero(np.abs(f) > N * 1e-6)
    return len(spikes) == 1 and abs(abs(f[spikes[0]]) - N) < N * tol * 1e3 + 1e-6


def verify_clifford(circuit, L, tol=1e-12):
    """True iff every single-site Pauli maps to a single signed Pauli string."""
    return not clifford_offenders(circuit, L, tol)
