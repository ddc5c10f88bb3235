"""Dense state vectors on a spin-1/2 ring and the basic lattice operations.

Conventions used throughout the package:
  - site j (1-based) lives on bit j-1 of the basis index,
  - bit 0 is the sigma^z = +1 eigenstate |0>, bit 1 is |1>,
  - |+-> = (|0> +- |1>)/sqrt(2) are the sigma^x eigenstates,
  - the translation T moves the content of site j to site j+1 (mod L),
    so a momentum eigenstate satisfies T|psi> = exp(-i p)|psi> with
    p = 2 pi ell / L.
"""

from dataclasses import dataclass, field

import numpy as np

NORM_TOL = 1e-12


class NotTranslationEigenstate(ValueError):
    """Raised when a momentum is requested from a non-eigenstate of T."""


@dataclass(frozen=True)
class StateVector:
    """Normalized pure state of ``n_sites`` qubits as a dense amplitude array."""

    n_sites: int
    amps: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.n_sites < 1:
            raise ValueError(f"n_sites must be >= 1, got {self.n_sites}")
        amps = np.asarray(self.amps, dtype=np.complex128)
        if amps.shape != (2**self.n_sites,):
            raise ValueError(
                f"amplitude array has shape {amps.shape}, expected (2**{self.n_sites},)"
            )
        nrm2 = np.vdot(amps, amps).real
        if abs(nrm2 - 1.0) > 1e-10:
            raise ValueError(f"state not normalized: |psi|^2 = {nrm2!r}")
        amps = amps.copy()
        amps.flags.writeable = False
        object.__setattr__(self, "amps", amps)

    @property
    def dim(self):
        return self.amps.size


def momentum_of(ell, L):
    """p = 2 pi ell / L for a momentum index ell."""
    validate_ell(ell, L)
    return 2.0 * np.pi * ell / L


def validate_ell(ell, L):
    if abs(ell) > (L - 1) // 2:
        raise ValueError(f"momentum index ell={ell} out of range for L={L}")
    return ell


def _require_site(site, L):
    if not 1 <= site <= L:
        raise ValueError(f"site {site} out of range [1, {L}]")
    return site - 1  # bit position


def _rotate_bits(idx, k, L):
    """Cyclically shift L-bit integers up by k bits (site j -> site j+k)."""
    k %= L
    mask = (1 << L) - 1
    return ((idx << k) | (idx >> (L - k))) & mask if k else idx


def make_x_product(L, signs):
    """Product state over L sites, each in |+> or |-> per ``signs`` (+1 / -1).

    L must be odd (ring convention of this package).
    """
    if L % 2 == 0:
        raise ValueError(f"chain length must be odd, got L={L}")
    signs = list(signs)
    if len(signs) != L:
        raise ValueError(f"need {L} signs, got {len(signs)}")
    if any(s not in (+1, -1) for s in signs):
        raise ValueError("signs must be +1 or -1")
    minus_mask = 0
    for j, s in enumerate(signs):
        if s == -1:
            minus_mask |= 1 << j
    idx = np.arange(2**L, dtype=np.int64)
    phase = 1.0 - 2.0 * (np.bitwise_count(idx & minus_mask) & 1)
    amps = phase * 2.0 ** (-L / 2)
    return StateVector(L, amps.astype(np.complex128))


def apply_pauli(state, site, which):
    """Apply a single-site Pauli operator; ``which`` is 'x', 'y' or 'z'."""
    L = state.n_sites
    b = 1 << _require_site(site, L)
    psi = state.amps
    idx = np.arange(psi.size, dtype=np.int64)
    bit = ((idx & b) != 0)
    if which == "x":
        out = psi[idx ^ b]
    elif which == "z":
        out = np.where(bit, -psi, psi)
    elif which == "y":
        out = 1j * np.where(bit, 1.0, -1.0) * psi[idx ^ b]
    else:
        raise ValueError(f"unknown Pauli axis {which!r}")
    return StateVector(L, out)


def translate(state, steps=1):
    """Shift the content of every site by ``steps`` towards larger site index."""
    L = state.n_sites
    idx = np.arange(state.dim, dtype=np.int64)
    # new amplitude at t comes from the pre-image under the bit rotation
    src = _rotate_bits(idx, -steps, L)
    return StateVector(L, state.amps[src])


def reflect(state, center):
    """Mirror the chain about ``center``: site j -> 2*center - j (mod L)."""
    L = state.n_sites
    c = _require_site(center, L)
    idx = np.arange(state.dim, dtype=np.int64)
    dest = np.zeros_like(idx)
    for j in range(L):
        m = (2 * c - j) % L
        dest |= ((idx >> j) & 1) << m
    out = np.empty_like(state.amps)
    out[dest] = state.amps
    return StateVector(L, out)


def measure_momentum(state, tol=1e-8):
    """Momentum index ell of a translation eigenstate, from <psi|T|psi>.

    Raises NotTranslationEigenstate when |<psi|T|psi>| <= 1 - tol, which is
    the signature of an unresolved degenerate manifold.
    """
    L = state.n_sites
    t = np.vdot(state.amps, translate(state, 1).amps)
    if abs(t) <= 1.0 - tol:
        raise NotTranslationEigenstate(
            f"|<T>| = {abs(t):.6f}; state is not a translation eigenstate"
        )
    p = -np.angle(t)
    ell = int(np.round(p * L / (2.0 * np.pi)))
    # fold into the symmetric window; L odd so ell = +-L/2 never occurs
    if ell > (L - 1) // 2:
        ell -= L
    elif ell < -(L - 1) // 2:
        ell += L
    residual = abs(np.exp(-1j * p) - np.exp(-2j * np.pi * ell / L))
    if residual > max(tol, 1e-6):
        raise NotTranslationEigenstate(
            f"momentum {p!r} is {residual:.2e} away from the nearest 2*pi*ell/{L}"
        )
    return ell


def parity_expectation(state, axis):
    """<psi| Pi^axis |psi> for the global parity along 'x' or 'z'."""
    psi = state.amps
    idx = np.arange(psi.size, dtype=np.int64)
    if axis == "z":
        sign = 1.0 - 2.0 * (np.bitwise_count(idx) & 1)
        return float(np.sum(sign * np.abs(psi) ** 2))
    if axis == "x":
        full = psi.size - 1
        return float(np.vdot(psi, psi[idx ^ full]).real)
    raise ValueError(f"unknown parity axis {axis!r}")


def fidelity(a, b):
    """|<a|b>|, insensitive to global phases."""
    if a.n_sites != b.n_sites:
        raise ValueError(f"dimension mismatch: L={a.n_sites} vs L={b.n_sites}")
    return float(abs(np.vdot(a.amps, b.amps)))


def random_state(L, rng):
    """Haar-ish random normalized state (Gaussian amplitudes)."""
    z = rng.standard_normal(2**L) + 1j * rng.standard_normal(2**L)
    return StateVector(L, z / np.linalg.norm(z))
