"""Spin operator construction helpers shared by the dynamics and oracle modules."""

from __future__ import annotations

import functools

import numpy as np

PAULI_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
PAULI_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)
PAULI_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)

# spin-1/2 operators, hbar = 1
SPIN_HALF = (PAULI_X / 2.0, PAULI_Y / 2.0, PAULI_Z / 2.0)


def spin_matrices(j: float) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(Jx, Jy, Jz) in the standard |j, m> basis with m descending from +j."""
    dim = int(round(2 * j)) + 1
    m = j - np.arange(dim)
    jz = np.diag(m).astype(complex)
    jp = np.zeros((dim, dim), dtype=complex)
    for k in range(1, dim):
        jp[k - 1, k] = np.sqrt(j * (j + 1) - m[k] * (m[k] + 1))
    jm = jp.conj().T
    return (jp + jm) / 2.0, (jp - jm) / 2.0j, jz


def kron_all(*mats: np.ndarray) -> np.ndarray:
    return functools.reduce(np.kron, mats)


def qubit_pair_ops() -> tuple[list[np.ndarray], list[np.ndarray]]:
    """Cartesian spin components (S_A, S_B) on the 4-dim pair space |q_A q_B>."""
    eye = np.eye(2, dtype=complex)
    s_a = [np.kron(s, eye) for s in SPIN_HALF]
    s_b = [np.kron(eye, s) for s in SPIN_HALF]
    return s_a, s_b


def pad_site_op(op: np.ndarray, site: int, n_sites: int) -> np.ndarray:
    """Embed a single-site operator at `site` in a chain of n_sites spin-1/2."""
    left = np.eye(2**site, dtype=complex)
    right = np.eye(2 ** (n_sites - site - 1), dtype=complex)
    return kron_all(left, op, right)


def collective_spin(n_sites: int, component: int) -> np.ndarray:
    """Sum of one cartesian spin component over a chain of spin-1/2 sites."""
    dim = 2**n_sites
    total = np.zeros((dim, dim), dtype=complex)
    for site in range(n_sites):
        total += pad_site_op(SPIN_HALF[component], site, n_sites)
    return total
