"""Single-qubit superoperators in the real 4x4 Stokes parametrization.

The matrix entry (s, t) is the prefactor of the Pauli operator s in the
image of t/2.  A superoperator is trace-preserving iff the first row is
(1, 0, 0, 0); valid channels additionally have a positive semidefinite
Choi operator.  Diagonal trace-preserving superoperators are the Pauli
channels and get their own lightweight [x, y, z] value type.

Non-physical matrices are first-class values: validity is a query, never
a constructor constraint.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg

SIGMAS = ("I", "X", "Y", "Z")


@dataclass(frozen=True)
class DiagonalChannel:
    """Diagonal Stokes entries [x, y, z]; trace preservation is implicit."""

    x: float
    y: float
    z: float

    @classmethod
    def identity(cls) -> "DiagonalChannel":
        return cls(1.0, 1.0, 1.0)

    def as_tuple(self) -> tuple[float, float, float]:
        return (self.x, self.y, self.z)

    def to_stokes(self) -> "StokesChannel":
        return StokesChannel(np.diag([1.0, self.x, self.y, self.z]))

    def pauli_probs(self) -> tuple[float, float, float, float]:
        """(pI, pX, pY, pZ) of the corresponding mixture of Pauli conjugations."""
        x, y, z = self.x, self.y, self.z
        return (
            (1 + x + y + z) / 4,
            (1 + x - y - z) / 4,
            (1 - x + y - z) / 4,
            (1 - x - y + z) / 4,
        )

    def in_tetrahedron(self, tol: float = 0.0) -> bool:
        """Whether (x, y, z) lies in the tetrahedron spanned by (1,1,1),
        (1,-1,-1), (-1,1,-1), (-1,-1,1), i.e. all reconstructed Pauli
        probabilities are nonnegative."""
        return all(p >= -tol for p in self.pauli_probs())


class StokesChannel:
    """A single-qubit superoperator as its real 4x4 Stokes matrix."""

    __slots__ = ("_m",)

    def __init__(self, matrix) -> None:
        m = np.array(matrix, dtype=float)
        if m.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
        m.setflags(write=False)
        self._m = m

    @property
    def matrix(self) -> np.ndarray:
        return self._m

    @classmethod
    def identity(cls) -> "StokesChannel":
        return cls(np.eye(4))

    @classmethod
    def from_kraus(cls, kraus) -> "StokesChannel":
        return cls(linalg.stokes_from_kraus(kraus))

    def __matmul__(self, other: "StokesChannel") -> "StokesChannel":
        """Composition self after other; Stokes matrices multiply."""
        if not isinstance(other, StokesChannel):
            return NotImplemented
        return StokesChannel(self._m @ other._m)

    def entry(self, s: str, t: str) -> float:
        return float(self._m[SIGMAS.index(s), SIGMAS.index(t)])

    def is_trace_preserving(self, tol: float = 1e-10) -> bool:
        return bool(np.max(np.abs(self._m[0] - np.array([1.0, 0, 0, 0]))) <= tol)

    def is_diagonal(self, tol: float = 0.0) -> bool:
        off = self._m - np.diag(np.diag(self._m))
        return bool(np.max(np.abs(off)) <= tol)

    def diagonal_part(self) -> DiagonalChannel:
        return DiagonalChannel(float(self._m[1, 1]), float(self._m[2, 2]), float(self._m[3, 3]))

    def choi(self) -> np.ndarray:
        return linalg.choi_matrix(self._m)

    def kraus_operators(self, cutoff: float = 1e-12) -> list[np.ndarray]:
        return linalg.kraus_from_choi(self.choi(), cutoff=cutoff)

    def apply(self, rho: np.ndarray) -> np.ndarray:
        """Image of a 2x2 operator under the superoperator."""
        coeffs = np.array([np.trace(linalg.PAULI_MATS[t] @ rho) for t in range(4)])
        out = np.zeros((2, 2), dtype=complex)
        for s in range(4):
            out += 0.5 * (self._m[s] @ coeffs) * linalg.PAULI_MATS[s]
        return out

    def __repr__(self) -> str:
        return f"StokesChannel({np.array2string(self._m, precision=6)})"


def as_stokes(channel) -> StokesChannel:
    """Coerce a DiagonalChannel or StokesChannel to its Stokes matrix form."""
    if isinstance(channel, StokesChannel):
        return channel
    if isinstance(channel, DiagonalChannel):
        return channel.to_stokes()
    raise TypeError(f"not a channel value: {channel!r}")


# -- named families -----------------------------------------------------------


def _check_strength(eps: float, allow_nonphysical: bool) -> None:
    if not allow_nonphysical and not 0.0 <= eps <= 1.0:
        raise ValueError(f"noise strength must lie in [0, 1], got {eps}")


def depolarizing(eps: float, allow_nonphysical: bool = False) -> DiagonalChannel:
    """[1-eps, 1-eps, 1-eps]: replaces the state by the maximally mixed one
    with probability eps."""
    _check_strength(eps, allow_nonphysical)
    return DiagonalChannel(1.0 - eps, 1.0 - eps, 1.0 - eps)


def dephasing(eps: float, allow_nonphysical: bool = False) -> DiagonalChannel:
    """[1, 1-eps, 1-eps]: applies X with probability eps/2."""
    _check_strength(eps, allow_nonphysical)
    return DiagonalChannel(1.0, 1.0 - eps, 1.0 - eps)


def from_pauli_probs(p_x: float, p_y: float, p_z: float) -> DiagonalChannel:
    """Diagonal channel of the Pauli mixture with the given error weights."""
    for name, p in (("pX", p_x), ("pY", p_y), ("pZ", p_z)):
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"{name} must lie in [0, 1], got {p}")
    if p_x + p_y + p_z > 1.0 + 1e-12:
        raise ValueError(f"error probabilities sum to {p_x + p_y + p_z} > 1")
    return DiagonalChannel(
        1.0 - 2.0 * (p_y + p_z),
        1.0 - 2.0 * (p_x + p_z),
        1.0 - 2.0 * (p_x + p_y),
    )


# -- validity and distances ----------------------------------------------------


def is_valid_channel(channel, tol: float = 1e-10) -> bool:
    """True iff trace-preserving and the Choi operator is PSD within `tol`."""
    t = as_stokes(channel)
    if not t.is_trace_preserving(tol):
        return False
    eigenvalues = np.linalg.eigvalsh(t.choi())
    return bool(eigenvalues[0] >= -tol)


def max_entry_distance(channel) -> float:
    """Largest |entry| of (T - Id) in Stokes form."""
    if isinstance(channel, DiagonalChannel):
        return max(abs(1.0 - channel.x), abs(1.0 - channel.y), abs(1.0 - channel.z))
    t = as_stokes(channel)
    return float(np.max(np.abs(t.matrix - np.eye(4))))


def random_cptp(rng: np.random.Generator, kraus_rank: int = 4) -> StokesChannel:
    """A random CPTP channel built from a Haar-style random isometry."""
    g = rng.normal(size=(2 * kraus_rank, 2)) + 1j * rng.normal(size=(2 * kraus_rank, 2))
    q, _ = np.linalg.qr(g)
    kraus = [q[2 * e : 2 * e + 2, :] for e in range(kraus_rank)]
    return StokesChannel.from_kraus(kraus)


def random_pauli_channel(rng: np.random.Generator) -> DiagonalChannel:
    """A random valid Pauli channel (uniform over the probability simplex)."""
    _, p_x, p_y, p_z = rng.dirichlet(np.ones(4))
    return from_pauli_probs(p_x, p_y, p_z)


# -- diamond-norm lower-bound estimator ----------------------------------------


def _ascend_trace_norm(apply_fwd, apply_adj, dim: int, rng, iters: int, ftol: float) -> float:
    """One seeded ascent run for sup_psi || (Phi (x) Id)(|psi><psi|) ||_1.

    Alternates the exact sign-operator step with the leading eigenvector of
    the back-propagated witness; both steps are monotone, so the run value
    is a certified lower bound of the diamond norm of Phi.
    """
    psi = linalg.random_pure_state(rng, dim * dim)
    best = 0.0
    for _ in range(iters):
        rho = np.outer(psi, psi.conj())
        image = apply_fwd(rho)
        vals, vecs = np.linalg.eigh(image)
        value = float(np.sum(np.abs(vals)))
        witness = (vecs * np.sign(vals)) @ vecs.conj().T
        back = apply_adj(witness)
        _, back_vecs = np.linalg.eigh(back)
        psi = back_vecs[:, -1]
        if value <= best + ftol:
            best = max(best, value)
            break
        best = value
    return best


def _system_map_applier(tensors, dim: int, subtract_identity: bool):
    """Applier for (Phi (x) Id) where Phi acts qubit-wise on a dim-dim system."""
    nq_sys = dim.bit_length() - 1
    nq = 2 * nq_sys

    def apply(rho: np.ndarray) -> np.ndarray:
        out = rho
        for q, m in enumerate(tensors):
            out = linalg.apply_map_on_qubit(out, m, q, nq)
        if subtract_identity:
            out = out - rho
        return out

    return apply


def diamond_distance_estimate(channel, seed: int = 0, restarts: int = 200) -> float:
    """Seeded lower-bound estimate of ||T - Id||_diamond.

    Maximizes the trace norm of ((T - Id) (x) Id) over pure two-qubit
    states with `restarts` random starts plus local ascent; deterministic
    for a fixed seed.  The result is a lower bound, never an upper bound.
    """
    t = as_stokes(channel)
    delta = t.matrix - np.eye(4)
    fwd = _system_map_applier([linalg.map_tensor(delta)], 2, subtract_identity=False)
    adj = _system_map_applier([linalg.map_tensor(delta.T)], 2, subtract_identity=False)
    best = 0.0
    for r in range(restarts):
        rng = np.random.default_rng([seed, r])
        best = max(best, _ascend_trace_norm(fwd, adj, 2, rng, iters=60, ftol=1e-13))
    return best


def two_copy_diamond_estimate(channel, seed: int = 0, restarts: int = 50) -> float:
    """Seeded lower-bound estimate of ||T(x)T - Id(x)Id||_diamond.

    Runs the same ascent on two noisy qubits plus a two-qubit reference.
    """
    t = as_stokes(channel)
    m_fwd = linalg.map_tensor(t.matrix)
    m_adj = linalg.map_tensor(t.matrix.T)
    fwd = _system_map_applier([m_fwd, m_fwd], 4, subtract_identity=True)
    adj = _system_map_applier([m_adj, m_adj], 4, subtract_identity=True)
    best = 0.0
    for r in range(restarts):
        rng = np.random.default_rng([seed, r])
        best = max(best, _ascend_trace_norm(fwd, adj, 4, rng, iters=60, ftol=1e-13))
    return best


# -- channel literals ----------------------------------------------------------


def parse_channel_literal(text: str):
    """Parse `depol:<e>`, `deph:<e>`, `pauli:<px>,<py>,<pz>`, `diag:<x>,<y>,<z>`
    or `stokes:<16 row-major reals>`."""
    head, sep, rest = text.partition(":")
    if not sep:
        raise ValueError(f"channel literal needs a '<kind>:' prefix: {text!r}")
    try:
        values = [float(v) for v in rest.split(",")] if rest else []
    except ValueError:
        raise ValueError(f"non-numeric channel parameter in {text!r}") from None
    if head == "depol":
        if len(values) != 1:
            raise ValueError("depol takes exactly one parameter")
        return depolarizing(values[0])
    if head == "deph":
        if len(values) != 1:
            raise ValueError("deph takes exactly one parameter")
        return dephasing(values[0])
    if head == "pauli":
        if len(values) != 3:
            raise ValueError("pauli takes exactly three parameters")
        return from_pauli_probs(*values)
    if head == "diag":
        if len(values) != 3:
            raise ValueError("diag takes exactly three parameters")
        return DiagonalChannel(*values)
    if head == "stokes":
        if len(values) != 16:
            raise ValueError("stokes takes exactly sixteen row-major parameters")
        return StokesChannel(np.array(values).reshape(4, 4))
    raise ValueError(f"unknown channel kind {head!r}")
