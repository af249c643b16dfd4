"""Dense operator helpers shared by the channel layer and the simulator."""

from __future__ import annotations

import numpy as np

from .pauli import PauliString

PAULI_MATS = np.array(
    [
        [[1, 0], [0, 1]],
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)

_LETTER_INDEX = {"I": 0, "X": 1, "Y": 2, "Z": 3}


def pauli_dense(p: PauliString) -> np.ndarray:
    """Dense 2^n x 2^n matrix of a Pauli string, phase included."""
    out = np.array([[p.phase]], dtype=complex)
    for c in p.letters:
        out = np.kron(out, PAULI_MATS[_LETTER_INDEX[c]])
    return out


def map_tensor(stokes: np.ndarray) -> np.ndarray:
    """Process tensor M[a,b,c,d] = T(|c><d|)[a,b] of a Stokes matrix."""
    return 0.5 * np.einsum("st,sab,tdc->abcd", stokes, PAULI_MATS, PAULI_MATS)


def choi_matrix(stokes: np.ndarray) -> np.ndarray:
    """Unnormalized Choi operator sum_ij T(|i><j|) (x) |i><j| (4x4)."""
    m = map_tensor(stokes)
    return m.transpose(0, 2, 1, 3).reshape(4, 4)


def kraus_from_choi(
    choi: np.ndarray, cutoff: float = 1e-12, cp_tol: float = 1e-10
) -> list[np.ndarray]:
    """Kraus operators from the Choi eigendecomposition.

    Eigenvalues below `cutoff` are dropped; an eigenvalue below -`cp_tol`
    means the map is not completely positive and raises ValueError.
    """
    vals, vecs = np.linalg.eigh(choi)
    if vals[0] < -cp_tol:
        raise ValueError(f"map is not completely positive (Choi eigenvalue {vals[0]:.3e})")
    kraus = []
    for lam, v in zip(vals, vecs.T):
        if lam > cutoff:
            kraus.append(np.sqrt(lam) * v.reshape(2, 2))
    return kraus


def stokes_from_kraus(kraus) -> np.ndarray:
    """Stokes matrix T[s, t] = tr(P_s sum_e K_e (P_t / 2) K_e^dag) of a Kraus set."""
    out = np.empty((4, 4))
    for t in range(4):
        image = sum(k @ (PAULI_MATS[t] / 2) @ k.conj().T for k in kraus)
        for s in range(4):
            out[s, t] = np.trace(PAULI_MATS[s] @ image).real
    return out


def apply_matrix_on_qubit(rho: np.ndarray, a: np.ndarray, qubit: int, nq: int) -> np.ndarray:
    """rho -> (I (x) a (x) I) rho with `a` acting on one qubit (row side only)."""
    dim = 1 << nq
    t = rho.reshape((2,) * (2 * nq))
    t = np.tensordot(a, t, axes=([1], [qubit]))
    t = np.moveaxis(t, 0, qubit)
    return t.reshape(dim, dim)


def apply_kraus_on_qubit(rho: np.ndarray, kraus, qubit: int, nq: int) -> np.ndarray:
    """rho -> sum_e K_e rho K_e^dag on one qubit of an nq-qubit operator."""
    dim = 1 << nq
    t = rho.reshape((2,) * (2 * nq))
    out = np.zeros_like(t)
    for k in kraus:
        s = np.tensordot(k, t, axes=([1], [qubit]))
        s = np.moveaxis(s, 0, qubit)
        s = np.tensordot(k.conj(), s, axes=([1], [nq + qubit]))
        s = np.moveaxis(s, 0, nq + qubit)
        out += s
    return out.reshape(dim, dim)


def apply_map_on_qubit(rho: np.ndarray, m: np.ndarray, qubit: int, nq: int) -> np.ndarray:
    """Apply a process tensor M[a,b,c,d] to one qubit of an nq-qubit operator."""
    dim = 1 << nq
    t = rho.reshape((2,) * (2 * nq))
    t = np.tensordot(m, t, axes=([2, 3], [qubit, nq + qubit]))
    t = np.moveaxis(t, (0, 1), (qubit, nq + qubit))
    return t.reshape(dim, dim)


def random_pure_state(rng: np.random.Generator, dim: int) -> np.ndarray:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)
