"""The XYZ ring with an odd number of sites (frustrated boundary conditions):
Hamiltonian action, low-energy spectrum with momentum-resolved degenerate
manifolds, and the critical field h* separating zero- from finite-momentum
ground states.

H = sum_n [ Jx sx_n sx_{n+1} + Jy sy_n sy_{n+1} + Jz sz_n sz_{n+1} ]
    + h sum_n sz_n,      site L+1 = site 1.
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla
from scipy.linalg import schur

from .states import NotTranslationEigenstate, StateVector, measure_momentum, translate

DEGENERACY_RTOL = 1e-9
EIGSH_SEED = 20240917


@dataclass(frozen=True)
class ChainParams:
    L: int
    jy: float
    jz: float
    h: float
    jx: float = 1.0

    def __post_init__(self):
        if self.L < 3 or self.L % 2 == 0:
            raise ValueError(f"L must be odd and >= 3, got {self.L}")
        if abs(self.jy) >= 1.0 or abs(self.jz) >= 1.0:
            raise ValueError("|Jy| and |Jz| must be < 1 (Jx sets the scale)")


@dataclass(frozen=True)
class GroundManifold:
    energies: np.ndarray  # ascending, all requested levels
    states: list  # StateVector, momentum-resolved inside degenerate clusters
    momenta: list  # momentum index per state, None if unresolved
    degeneracy: int  # size of the lowest cluster


@dataclass(frozen=True)
class HstarResult:
    jy: float
    jz: float
    L: int
    hstar: float
    bracket_width: float
    note: str = ""


def nonfrustrated_counterpart(params):
    """Same chain with the signs of Jx and Jy inverted (unfrustrated model)."""
    return ChainParams(L=params.L, jy=-params.jy, jz=params.jz, h=params.h, jx=-params.jx)


def _bond_tables(params):
    """Per-bond flip masks and off-diagonal coefficients plus the diagonal."""
    L = params.L
    N = 2**L
    idx = np.arange(N, dtype=np.int64)
    diag = np.zeros(N)
    flips = []
    for n in range(L):
        b1, b2 = n, (n + 1) % L
        s1 = ((idx >> b1) & 1).astype(np.float64)
        s2 = ((idx >> b2) & 1).astype(np.float64)
        diag += params.jz * (1.0 - 2.0 * s1) * (1.0 - 2.0 * s2)
        diag += params.h * (1.0 - 2.0 * s1)
        # sxsx flips both bits with +1; sysy flips with -1 on equal bits
        coeff = params.jx + params.jy * (2.0 * np.abs(s1 - s2) - 1.0)
        flips.append(((1 << b1) | (1 << b2), coeff))
    return diag, flips


def apply_hamiltonian(params, vec):
    """H @ vec for a raw amplitude array of length 2^L (output unnormalized)."""
    vec = np.asarray(vec)
    N = 2 ** params.L
    if vec.shape != (N,):
        raise ValueError(f"vector has shape {vec.shape}, expected ({N},)")
    diag, flips = _bond_tables(params)
    idx = np.arange(N, dtype=np.int64)
    out = diag * vec
    for mask, coeff in flips:
        out = out + coeff * vec[idx ^ mask]
    return out


def hamiltonian_sparse(params):
    """Sparse CSR matrix of H; (L+1) 2^L nonzeros, real symmetric."""
    N = 2 ** params.L
    idx = np.arange(N, dtype=np.int64)
    diag, flips = _bond_tables(params)
    mats = [sp.diags(diag)]
    for mask, coeff in flips:
        mats.append(sp.csr_matrix((coeff, (idx, idx ^ mask)), shape=(N, N)))
    return sum(mats).tocsr()


def _resolve_momentum_cluster(vectors, L):
    """Diagonalize the translation inside a degenerate cluster.

    ``vectors`` is (N, c) orthonormal.  Returns (states, momenta)."""
    c = vectors.shape[1]
    t_cols = np.column_stack(
        [translate(StateVector(L, vectors[:, i] / np.linalg.norm(vectors[:, i])), 1).amps
         for i in range(c)]
    )
    m = vectors.conj().T @ t_cols
    # unitary (hence normal) up to cluster truncation error: Schur gives an
    # orthonormal eigenbasis even when T eigenvalues repeat in the cluster
    tri, z = schur(m, output="complex")
    new = vectors @ z
    states, momenta = [], []
    for i in range(c):
        v = new[:, i]
        psi = StateVector(L, v / np.linalg.norm(v))
        try:
            ell = measure_momentum(psi, tol=1e-8)
        except NotTranslationEigenstate:
            ell = None
        states.append(psi)
        momenta.append(ell)
    return states, momenta


def lowest_eigs(params, count, *, degeneracy_rtol=DEGENERACY_RTOL, dense_cutoff=11):
    """Lowest ``count`` eigenpairs of H with momentum-resolved degeneracies.

    Dense solver for L <= dense_cutoff (robust to the heavy degeneracies of
    the classical point), implicitly restarted Lanczos on the sparse matrix
    above, with a fixed seed for reproducibility.
    """
    L = params.L
    N = 2**L
    if count < 1 or count >= N:
        raise ValueError(f"count must be in [1, {N - 1}]")
    H = hamiltonian_sparse(params)
    if L <= dense_cutoff:
        vals, vecs = np.linalg.eigh(H.toarray())
        vals, vecs = vals[:count], vecs[:, :count]
    else:
        rng = np.random.default_rng(EIGSH_SEED)
        v0 = rng.standard_normal(N)
        ncv = min(N - 1, max(4 * count + 20, 40))
        vals, vecs = spla.eigsh(H, k=count, which="SA", v0=v0, ncv=ncv, maxiter=20000)
        order = np.argsort(vals)
        vals, vecs = vals[order], vecs[:, order]
    # orthonormalize (degenerate eigh/eigsh blocks can drift)
    vecs, _ = np.linalg.qr(vecs)
    tol = degeneracy_rtol * max(1.0, abs(vals[0]))
    states, momenta = [], []
    start = 0
    while start < count:
        stop = start + 1
        while stop < count and vals[stop] - vals[stop - 1] < tol:
            stop += 1
        cl_states, cl_momenta = _resolve_momentum_cluster(
            vecs[:, start:stop].astype(np.complex128), L
        )
        states.extend(cl_states)
        momenta.extend(cl_momenta)
        if start == 0:
            degeneracy = stop
        start = stop
    return GroundManifold(
        energies=vals.copy(), states=states, momenta=momenta, degeneracy=degeneracy
    )


def ground_momenta(params, *, count=6, **kw):
    """Momentum indices spanning the ground cluster."""
    man = lowest_eigs(params, count, **kw)
    return [man.momenta[i] for i in range(man.degeneracy)], man


def pick_ground_state(manifold):
    """A momentum-definite representative of the ground cluster.

    Prefers the largest nonnegative momentum index (the +p member of a
    degenerate pair); falls back to the first state."""
    best = None
    for i in range(manifold.degeneracy):
        ell = manifold.momenta[i]
        if ell is None:
            continue
        if best is None or ell > manifold.momenta[best]:
            best = i
    if best is None:
        return manifold.momenta[0], manifold.states[0]
    return manifold.momenta[best], manifold.states[best]


def find_hstar(jy, jz, L, tol=1e-4, h_max=1.0, count=6, dense_cutoff=9):
    """Bisect on h for the boundary between finite-momentum (h < h*) and
    zero-momentum (h > h*) ground manifolds.

    For jz < -jy the finite-momentum phase is absent and h* = 0 is returned
    with a note; same if the predicate is already false at h = 0.
    """
    if jz < -jy:
        return HstarResult(jy, jz, L, 0.0, 0.0, note="no finite-momentum phase")

    def finite_momentum(h):
        params = ChainParams(L=L, jy=jy, jz=jz, h=h)
        ms, _ = ground_momenta(params, count=count, dense_cutoff=dense_cutoff)
        return any(m not in (0, None) for m in ms)

    if not finite_momentum(0.0):
        return HstarResult(jy, jz, L, 0.0, 0.0, note="zero-momentum ground state at h=0")
    lo, hi = 0.0, h_max
    if finite_momentum(h_max):
        return HstarResult(jy, jz, L, h_max, 0.0, note="finite momentum up to h_max")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if finite_momentum(mid):
            lo = mid
        else:
            hi = mid
    return HstarResult(jy, jz, L, 0.5 * (lo + hi), hi - lo)
