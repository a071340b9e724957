"""Two-qubit states as spin polarizations, with mixedness and entanglement measures.

A two-qubit density matrix is parametrized by the Bloch vectors of the two
qubits (vector polarizations ``p_a``, ``p_b``) and the 3x3 correlation matrix
of spin components (tensor polarization ``pi``):

    rho = 1/4 + (1/2) p_a . S_A + (1/2) p_b . S_B + sum_mn pi[m,n] S_A^m S_B^n

with S = sigma/2. The inverse map is p = 2 Tr[rho S] and
pi[m,n] = 4 Tr[rho S_A^m S_B^n].
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .spinops import PAULI_Y, qubit_pair_ops

_S_A, _S_B = qubit_pair_ops()
_YY = np.kron(PAULI_Y, PAULI_Y)

# computational-basis kets, ordering {uu, ud, du, dd}
KET_SINGLET = np.array([0.0, 1.0, -1.0, 0.0], dtype=complex) / np.sqrt(2.0)
KET_TRIPLET0 = np.array([0.0, 1.0, 1.0, 0.0], dtype=complex) / np.sqrt(2.0)
KET_T1 = np.array([1.0, 0.0, 0.0, 1.0], dtype=complex) / np.sqrt(2.0)
KET_T2 = np.array([1.0, 0.0, 0.0, -1.0], dtype=complex) / np.sqrt(2.0)


class InvalidStateError(ValueError):
    """Raised when an input violates a documented precondition."""


@dataclass(frozen=True)
class TwoQubitState:
    """Polarization representation of a two-qubit density matrix."""

    p_a: np.ndarray
    p_b: np.ndarray
    pi: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "p_a", _frozen(self.p_a, (3,)))
        object.__setattr__(self, "p_b", _frozen(self.p_b, (3,)))
        object.__setattr__(self, "pi", _frozen(self.pi, (3, 3)))

    def polarization_norm_sq(self) -> float:
        """P_A^2 + P_B^2 + sum (pi^mn)^2; equals 3 for pure states."""
        return float(
            self.p_a @ self.p_a + self.p_b @ self.p_b + np.sum(self.pi**2)
        )


@dataclass(frozen=True)
class StateValidation:
    """Physicality report for a polarization triple."""

    min_eigenvalue: float
    trace_error: float
    hermiticity_error: float
    physical: bool


def _frozen(arr, shape) -> np.ndarray:
    out = np.array(arr, dtype=float)
    if out.shape != shape:
        raise InvalidStateError(f"expected shape {shape}, got {out.shape}")
    out.setflags(write=False)
    return out


def state_to_density(state: TwoQubitState) -> np.ndarray:
    """Reconstruct the 4x4 density matrix from polarizations.

    Hermitian with unit trace by construction for any real polarization
    triple; positivity is a property of the input and can be checked with
    :func:`validate_state`.
    """
    rho = np.eye(4, dtype=complex) / 4.0
    for m in range(3):
        rho += 0.5 * state.p_a[m] * _S_A[m] + 0.5 * state.p_b[m] * _S_B[m]
        for n in range(3):
            rho += state.pi[m, n] * (_S_A[m] @ _S_B[n])
    return rho


def density_to_state(rho: np.ndarray, atol: float = 1e-10) -> TwoQubitState:
    """Extract polarizations from a density matrix.

    Exact inverse of :func:`state_to_density`. Raises InvalidStateError if
    the input is not Hermitian with unit trace within ``atol``.
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (4, 4):
        raise InvalidStateError(f"expected a 4x4 matrix, got shape {rho.shape}")
    herm = float(np.abs(rho - rho.conj().T).max())
    if herm > atol:
        raise InvalidStateError(f"matrix not Hermitian (deviation {herm:.2e})")
    tr_err = abs(complex(np.trace(rho)) - 1.0)
    if tr_err > atol:
        raise InvalidStateError(f"trace differs from 1 by {tr_err:.2e}")
    p_a = np.array([2.0 * np.trace(rho @ _S_A[m]).real for m in range(3)])
    p_b = np.array([2.0 * np.trace(rho @ _S_B[m]).real for m in range(3)])
    pi = np.array(
        [[4.0 * np.trace(rho @ _S_A[m] @ _S_B[n]).real for n in range(3)] for m in range(3)]
    )
    return TwoQubitState(p_a, p_b, pi)


def validate_state(state: TwoQubitState, tol: float = 1e-12) -> StateValidation:
    """Check that the reconstructed matrix is a physical density matrix.

    Non-physical inputs are reported, not repaired.
    """
    rho = state_to_density(state)
    eigs = np.linalg.eigvalsh(rho)
    min_eig = float(eigs.min())
    tr_err = abs(complex(np.trace(rho)) - 1.0)
    herm = float(np.abs(rho - rho.conj().T).max())
    return StateValidation(
        min_eigenvalue=min_eig,
        trace_error=tr_err,
        hermiticity_error=herm,
        physical=min_eig >= -tol and tr_err <= tol and herm <= tol,
    )


def purity(state: TwoQubitState) -> float:
    return 1.0 - decoherence_measure(state)


def decoherence_measure(state: TwoQubitState) -> float:
    """Mixedness D = 1 - Tr rho^2 = (1/4)[3 - P_A^2 - P_B^2 - sum pi^2].

    Zero for pure states, 3/4 for the maximally mixed state.
    """
    return 0.25 * (3.0 - state.polarization_norm_sq())


def concurrence(rho: np.ndarray) -> float:
    """Wootters concurrence of a two-qubit density matrix.

    C = max(0, sqrt(mu1) - sqrt(mu2) - sqrt(mu3) - sqrt(mu4)) with mu_i the
    descending eigenvalues of rho (sy x sy) rho* (sy x sy). Evaluated through
    the similar Hermitian matrix sqrt(rho) (sy x sy) rho* (sy x sy) sqrt(rho),
    which keeps full accuracy where the product is defective (pure states).
    """
    rho = np.asarray(rho, dtype=complex)
    vals, vecs = np.linalg.eigh(rho)
    vals = np.where((vals < 0.0) & (vals > -1e-12), 0.0, vals)
    root_rho = (vecs * np.sqrt(np.clip(vals, 0.0, None))) @ vecs.conj().T
    # sqrt(mu_i) are the singular values of sqrt(rho) YY sqrt(rho)*, which
    # SVD delivers with absolute precision (no sqrt of eigenvalue noise)
    root = np.linalg.svd(root_rho @ _YY @ root_rho.conj(), compute_uv=False)
    return float(max(0.0, root[0] - root[1] - root[2] - root[3]))


def concurrence_state(state: TwoQubitState) -> float:
    return concurrence(state_to_density(state))


def concurrence_sz_block(state: TwoQubitState, atol: float = 1e-10) -> float:
    """Concurrence of a state commuting with the total S^z.

    For block-diagonal states (no coherence between total-S^z sectors):

        C = (1/2) max{ sqrt((pi_xx+pi_yy)^2 + (pi_xy-pi_yx)^2)
                       - sqrt((1+pi_zz)^2 - (p_a^z+p_b^z)^2), 0 }

    The first radical is 4 |rho_ud,du| and the second 4 sqrt(rho_uu rho_dd),
    so this is the exact two-qubit concurrence of such states. Raises
    InvalidStateError if the density matrix has matrix elements between
    different S^z sectors, naming the offending block.
    """
    rho = state_to_density(state)
    # basis {uu, ud, du, dd}: S^z sectors {uu}, {ud, du}, {dd}
    sectors = {0: "m=+1", 1: "m=0", 2: "m=0", 3: "m=-1"}
    for i in range(4):
        for j in range(4):
            if sectors[i] != sectors[j] and abs(rho[i, j]) > atol:
                raise InvalidStateError(
                    f"state mixes S^z sectors {sectors[i]} and {sectors[j]} "
                    f"(|rho[{i},{j}]| = {abs(rho[i, j]):.2e})"
                )
    pi = state.pi
    term1 = np.hypot(pi[0, 0] + pi[1, 1], pi[0, 1] - pi[1, 0])
    z_sum = (1.0 + pi[2, 2]) ** 2 - (state.p_a[2] + state.p_b[2]) ** 2
    term2 = math.sqrt(max(0.0, z_sum))
    return float(max(0.0, 0.5 * (term1 - term2)))


def state_from_vector(psi: np.ndarray) -> TwoQubitState:
    """Polarizations of the pure state |psi> (normalized internally)."""
    psi = np.asarray(psi, dtype=complex)
    psi = psi / np.linalg.norm(psi)
    return density_to_state(np.outer(psi, psi.conj()))


def general_pure_vector(gamma: complex, theta: float = 0.0, phi: float = 0.0) -> np.ndarray:
    """Ket (|up_z down_n> - gamma |down_z up_n>)/sqrt(1+|gamma|^2).

    The second-qubit quantization axis n has polar angles (theta, phi); the
    first is fixed to z.
    """
    up_n = np.array([np.cos(theta / 2.0), np.exp(1j * phi) * np.sin(theta / 2.0)])
    down_n = np.array([-np.exp(-1j * phi) * np.sin(theta / 2.0), np.cos(theta / 2.0)])
    up_z = np.array([1.0, 0.0])
    down_z = np.array([0.0, 1.0])
    psi = np.kron(up_z, down_n) - gamma * np.kron(down_z, up_n)
    return psi / np.linalg.norm(psi)


def make_named_state(name: str, **params) -> TwoQubitState:
    """Construct a named two-qubit state.

    Supported names:

    - ``singlet``, ``triplet0``, ``bell_t1``, ``bell_t2``: the Bell states
      (|ud>-|du>)/sqrt2, (|ud>+|du>)/sqrt2, (|uu>+|dd>)/sqrt2, (|uu>-|dd>)/sqrt2.
    - ``up_down``: the product state |ud>.
    - ``r_state``: singlet/triplet mix [(1+r)|S0> + (1-r)|T0>] normalized,
      equal to (|ud> - r|du>) normalized. r=1 is the singlet, r=-1 the
      triplet0, r=0 the product |ud>. Parameter ``r``.
    - ``updown_mix``: (|ud> + r|du>) normalized, the same family with the
      opposite sign convention for the parameter. Parameter ``r``.
    - ``werner``: p |S0><S0| + (1-p)/4 identity. Parameter ``p`` in [0, 1].
    - ``general_pure``: see :func:`general_pure_vector`. Parameters ``gamma``
      (complex), ``theta``, ``phi``.
    """
    if name == "singlet":
        return state_from_vector(KET_SINGLET)
    if name == "triplet0":
        return state_from_vector(KET_TRIPLET0)
    if name == "bell_t1":
        return state_from_vector(KET_T1)
    if name == "bell_t2":
        return state_from_vector(KET_T2)
    if name == "up_down":
        return state_from_vector(np.array([0.0, 1.0, 0.0, 0.0]))
    if name == "r_state":
        r = float(params["r"])
        return state_from_vector((1.0 + r) * KET_SINGLET + (1.0 - r) * KET_TRIPLET0)
    if name == "updown_mix":
        r = float(params["r"])
        return state_from_vector(np.array([0.0, 1.0, r, 0.0]))
    if name == "werner":
        p = float(params["p"])
        if not 0.0 <= p <= 1.0:
            raise InvalidStateError(f"werner admixture p must be in [0, 1], got {p}")
        rho = p * np.outer(KET_SINGLET, KET_SINGLET.conj()) + (1.0 - p) * np.eye(4) / 4.0
        return density_to_state(rho)
    if name == "general_pure":
        gamma = complex(params["gamma"])
        theta = float(params.get("theta", 0.0))
        phi = float(params.get("phi", 0.0))
        return state_from_vector(general_pure_vector(gamma, theta, phi))
    raise InvalidStateError(f"unknown state name {name!r}")
