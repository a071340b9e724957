"""Exact reduced dynamics for two exchange-coupled qubits sharing one bath.

Hamiltonian: (K_A S_A + K_B S_B) . I + J S_A . S_B, with the bath spin I
unpolarized sector by sector. Conserved quantities organize the solution:
the total angular momentum F takes values I+1, I, I-1 in the qubit-triplet
channel and I in the qubit-singlet channel, and the two F = I multiplets mix
if and only if K_A != K_B. The evolution convention throughout is
U = exp(-iHt); sector phases are reported relative to the singlet level,
which removes an unobservable global phase.

Three evolution paths are provided and cross-checked:

- ``SymmetricEvolver``: closed-form polarization map for K_A = K_B, built
  from bath-averaged Clebsch-Gordan moment tensors. Cost per time sample is
  O(#sectors), so it handles baths of hundreds of spins.
- ``bell_mix_evolution``: closed-form Bell-basis matrix elements for initial
  states in the span of the singlet and the m=0 triplet, valid for any
  couplings and exchange. Same cost scaling.
- ``SectorExactEvolver``: dense per-sector propagation for arbitrary initial
  states and couplings; exact but O(dim^3) per sector, intended for small and
  moderate baths and for oracle-grade checks.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .bath import BathDistribution
from .spinops import qubit_pair_ops, spin_matrices
from .states import (
    InvalidStateError,
    TwoQubitState,
    decoherence_measure,
    density_to_state,
    state_to_density,
)

_MU_VALUES = np.array([1.0, 0.0, -1.0])


class AssumptionError(ValueError):
    """Raised when a closed-form path is used outside its assumptions."""


@dataclass(frozen=True)
class CommonBathSystem:
    k_a: float
    k_b: float
    j: float
    bath: BathDistribution

    @property
    def k_mean(self) -> float:
        return 0.5 * (self.k_a + self.k_b)

    @property
    def k_half_diff(self) -> float:
        return 0.5 * (self.k_a - self.k_b)


# ---------------------------------------------------------------------------
# sector spectrum and propagator coefficients
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SectorCoefficients:
    """Spectral data of one bath sector, phases relative to the singlet level.

    ``level_f_plus`` / ``level_f_minus`` are the F = I+1 and F = I-1 triplet
    levels; ``level_mix_upper`` / ``level_mix_lower`` the two levels of the
    F = I singlet-triplet block. ``phase_mean`` and ``phase_gap`` are half the
    sum and half the difference of the mixed levels, and (``mixing_cos``,
    ``mixing_sin``) parametrize the block rotation with cos^2 + sin^2 = 1.

    The propagator coefficients (filled by :func:`sector_a_coefficients`)
    expand U = exp(-i(H - E_singlet)t) as

        (amp_singlet + mix_from_singlet * Y) P_singlet
        + (trip_const + trip_linear * X + trip_quadratic * X^2
           + mix_from_triplet * Y + cross_from_triplet * Z) P_triplet

    with X = (S_A+S_B).I, Y = (S_A-S_B).I, Z = (S_A x S_B).I. The Y carried
    by ``mix_from_triplet`` already saturates the triplet-to-singlet
    transition (Z is redundant for it), so ``cross_from_triplet`` is zero in
    this decomposition.
    """

    sector_spin: float
    level_f_plus: float
    level_f_minus: float
    level_mix_upper: float
    level_mix_lower: float
    phase_mean: float
    phase_gap: float
    mixing_cos: float
    mixing_sin: float
    amp_singlet: complex | None = None
    mix_from_singlet: complex | None = None
    trip_const: complex | None = None
    trip_linear: complex | None = None
    trip_quadratic: complex | None = None
    mix_from_triplet: complex | None = None
    cross_from_triplet: complex | None = None


def sector_spectrum(system: CommonBathSystem, i: float) -> SectorCoefficients:
    """Eigenvalues and mixing parameters of the bath sector with spin i."""
    if i < 0:
        raise AssumptionError(f"sector spin must be >= 0, got {i}")
    kbar, j = system.k_mean, system.j
    lam1 = j + i * kbar
    lam2 = j - (i + 1.0) * kbar
    diag = j - kbar
    disc = math.sqrt(diag**2 + i * (i + 1.0) * (system.k_a - system.k_b) ** 2)
    zeta_p = 0.5 * (diag + disc)
    zeta_m = 0.5 * (diag - disc)
    lam_plus = 0.5 * (zeta_p + zeta_m)
    lam_minus = 0.5 * (zeta_p - zeta_m)
    if lam_minus < 1e-300:
        p, q = 1.0, 0.0
    else:
        p = lam_plus / lam_minus
        q = math.sqrt(max(0.0, 1.0 - p * p))
    return SectorCoefficients(
        sector_spin=float(i),
        level_f_plus=lam1,
        level_f_minus=lam2,
        level_mix_upper=zeta_p,
        level_mix_lower=zeta_m,
        phase_mean=lam_plus,
        phase_gap=lam_minus,
        mixing_cos=p,
        mixing_sin=q,
    )


def sector_a_coefficients(system: CommonBathSystem, i: float, t: float) -> SectorCoefficients:
    """Propagator coefficients of one sector at time t (see SectorCoefficients)."""
    spec = sector_spectrum(system, i)
    if i == 0.0:
        # no triplet of total spin F = I exists: pure phases, no mixing
        return _with_a(spec, 1.0 + 0j, 0j, np.exp(-1j * system.j * t), 0j, 0j, 0j, 0j)
    lp, lm = spec.phase_mean, spec.phase_gap
    c, s = math.cos(lm * t), math.sin(lm * t)
    phase = np.exp(-1j * lp * t)
    a1 = phase * (c + 1j * spec.mixing_cos * s)
    b_tt = phase * (c - 1j * spec.mixing_cos * s)
    # transition coefficient: multiplies Y, whose singlet-triplet matrix
    # element is -sqrt(I(I+1)) in the ladder-consistent basis used here
    sin_over = t * np.sinc(lm * t / np.pi)
    a2 = -1j * phase * system.k_half_diff * sin_over
    u1 = np.exp(-1j * spec.level_f_plus * t)
    u2 = np.exp(-1j * spec.level_f_minus * t)
    # quadratic in X through the triplet nodes X = {i, -1, -(i+1)}
    nodes = np.array([i, -1.0, -(i + 1.0)])
    vals = np.array([u1, b_tt, u2])
    a3, a4, a5 = np.linalg.solve(np.vander(nodes, 3, increasing=True), vals)
    return _with_a(spec, a1, a2, a3, a4, a5, a2, 0j)


def _with_a(spec: SectorCoefficients, a1, a2, a3, a4, a5, a6, a7) -> SectorCoefficients:
    return SectorCoefficients(
        sector_spin=spec.sector_spin,
        level_f_plus=spec.level_f_plus,
        level_f_minus=spec.level_f_minus,
        level_mix_upper=spec.level_mix_upper,
        level_mix_lower=spec.level_mix_lower,
        phase_mean=spec.phase_mean,
        phase_gap=spec.phase_gap,
        mixing_cos=spec.mixing_cos,
        mixing_sin=spec.mixing_sin,
        amp_singlet=complex(a1),
        mix_from_singlet=complex(a2),
        trip_const=complex(a3),
        trip_linear=complex(a4),
        trip_quadratic=complex(a5),
        mix_from_triplet=complex(a6),
        cross_from_triplet=complex(a7),
    )


def sector_operators(i: float) -> dict[str, np.ndarray]:
    """Dense operators on the (4 * (2i+1))-dim sector: qubit pair x spin-i."""
    s_a, s_b = qubit_pair_ops()
    ib = spin_matrices(i) if i > 0 else (np.zeros((1, 1), complex),) * 3
    d = ib[0].shape[0]
    eye_b = np.eye(d, dtype=complex)
    sa = [np.kron(m, eye_b) for m in s_a]
    sb = [np.kron(m, eye_b) for m in s_b]
    iops = [np.kron(np.eye(4, dtype=complex), m) for m in ib]
    x = sum((sa[m] + sb[m]) @ iops[m] for m in range(3))
    y = sum((sa[m] - sb[m]) @ iops[m] for m in range(3))
    z = np.zeros_like(x)
    for m, n, k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        z += (sa[m] @ sb[n] - sa[n] @ sb[m]) @ iops[k]
    s_tot_sq = np.zeros_like(x)
    for m in range(3):
        tot = sa[m] + sb[m]
        s_tot_sq += tot @ tot
    return {"s_a": sa, "s_b": sb, "i": iops, "x": x, "y": y, "z": z, "s_sq": s_tot_sq, "dim_bath": d}


def sector_hamiltonian(system: CommonBathSystem, i: float) -> np.ndarray:
    ops = sector_operators(i)
    h = np.zeros_like(ops["x"])
    for m in range(3):
        h += (system.k_a * ops["s_a"][m] + system.k_b * ops["s_b"][m]) @ ops["i"][m]
        h += system.j * ops["s_a"][m] @ ops["s_b"][m]
    return h


def rebuild_sector_propagator(system: CommonBathSystem, i: float, t: float) -> np.ndarray:
    """Assemble U = exp(-i(H - E_singlet)t) from the sector coefficients."""
    coeffs = sector_a_coefficients(system, i, t)
    ops = sector_operators(i)
    dim = ops["x"].shape[0]
    p_t = ops["s_sq"] / 2.0
    p_s = np.eye(dim, dtype=complex) - p_t
    u = (coeffs.amp_singlet * np.eye(dim) + coeffs.mix_from_singlet * ops["y"]) @ p_s
    u += (
        coeffs.trip_const * np.eye(dim)
        + coeffs.trip_linear * ops["x"]
        + coeffs.trip_quadratic * (ops["x"] @ ops["x"])
        + coeffs.mix_from_triplet * ops["y"]
        + coeffs.cross_from_triplet * ops["z"]
    ) @ p_t
    return u


# ---------------------------------------------------------------------------
# Clebsch-Gordan tables for the triplet (spin-1) x spin-I coupling
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _CGTables:
    two_i: int
    # c[f, mu_row, k]: <mu, m_tot - mu | F, m_tot>, F rows (I+1, I, I-1),
    # mu rows (+1, 0, -1), m_tot grid descending from I+1 to -(I+1)
    c: np.ndarray
    m_tot: np.ndarray


_CG_CACHE: dict[int, _CGTables] = {}


def _cg_tables(i: float) -> _CGTables:
    two_i = int(round(2 * i))
    if two_i in _CG_CACHE:
        return _CG_CACHE[two_i]
    if two_i == 0:
        raise AssumptionError("no triplet coupling tables for a spin-0 sector")
    d = two_i + 1
    s1 = spin_matrices(1.0)
    sb = spin_matrices(i)
    jm = np.kron(s1[0] - 1j * s1[1], np.eye(d)) + np.kron(np.eye(3), sb[0] - 1j * sb[1])

    def top_state(f: float) -> np.ndarray:
        # highest-weight state of the F family, Condon-Shortley sign fixed by
        # a positive coefficient on the mu = +1 component
        v = np.zeros(3 * d, dtype=complex)
        if f == i + 1.0:
            v[0] = 1.0
        elif f == i:
            a = 1.0 / math.sqrt(1.0 + i)
            v[0 * d + 1] = a  # (mu=+1, mI=I-1)
            v[1 * d + 0] = -a * math.sqrt(i)  # (mu=0, mI=I)
        else:  # f == i - 1
            g1 = 1.0 / math.sqrt(i * (2.0 * i + 1.0))
            v[0 * d + 2] = g1
            v[1 * d + 1] = -g1 * math.sqrt(2.0 * i - 1.0)
            v[2 * d + 0] = g1 * math.sqrt(i * (2.0 * i - 1.0))
        return v

    fs = [i + 1.0, i] + ([i - 1.0] if i >= 1.0 else [])
    m_tot = (i + 1.0) - np.arange(two_i + 3)
    c = np.zeros((3, 3, m_tot.size))
    for f_row, f in enumerate(fs):
        v = top_state(f)
        m = f
        while True:
            k = int(round((i + 1.0) - m))
            for mu_row, mu in enumerate(_MU_VALUES):
                m_i = m - mu
                if abs(m_i) <= i + 1e-9:
                    col = int(round(i - m_i))
                    c[f_row, mu_row, k] = v[mu_row * d + col].real
            if m < -f + 1e-9:
                break
            norm = math.sqrt(f * (f + 1.0) - m * (m - 1.0))
            if norm < 1e-12:
                break
            v = jm @ v / norm
            m -= 1.0
    tables = _CGTables(two_i=two_i, c=c, m_tot=m_tot)
    _CG_CACHE[two_i] = tables
    return tables


def _triplet_levels(system: CommonBathSystem, i: float) -> np.ndarray:
    """Triplet levels (F = I+1, I, I-1) relative to the singlet, K_A = K_B."""
    k = system.k_mean
    return np.array([system.j + k * i, system.j - k, system.j - k * (i + 1.0)])


# ---------------------------------------------------------------------------
# symmetric couplings: closed-form polarization map
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SymmetricMapCoefficients:
    """Linear map of the polarizations for K_A = K_B, sampled on a time grid.

    The map is

        P_A(t) = vec_direct P_A + vec_exchange P_B + 2 vec_from_tensor a
        P_B(t) = vec_direct P_B + vec_exchange P_A - 2 vec_from_tensor a
        pi(t)  = tensor_direct pi + tensor_transpose pi^T
                 + tensor_trace Tr(pi) delta + tensor_from_vec eps.(P_A - P_B)

    where a is the axial vector of the antisymmetric part of pi. The complex
    ``st_coherence`` is the singlet-triplet coherence factor from which the
    asymmetric pieces derive: vec_direct - vec_exchange = Re(st_coherence),
    vec_from_tensor = Im(st_coherence)/2 = -tensor_from_vec, and the trace
    identity tensor_direct + tensor_transpose + 3 tensor_trace = 1 holds at
    every sample.
    """

    times: np.ndarray
    st_coherence: np.ndarray
    vec_direct: np.ndarray
    vec_exchange: np.ndarray
    vec_from_tensor: np.ndarray
    tensor_direct: np.ndarray
    tensor_transpose: np.ndarray
    tensor_trace: np.ndarray
    tensor_from_vec: np.ndarray


_EPS = np.zeros((3, 3, 3))
for _i, _j, _k in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
    _EPS[_i, _j, _k] = 1.0
    _EPS[_j, _i, _k] = -1.0


class SymmetricEvolver:
    """Closed-form evolution for equal couplings; O(#sectors) per sample."""

    def __init__(self, system: CommonBathSystem):
        if system.k_a != system.k_b:
            raise AssumptionError(
                "closed-form map requires equal couplings; use SectorExactEvolver"
            )
        self.system = system

    def map_coefficients(self, times) -> SymmetricMapCoefficients:
        times = np.atleast_1d(np.asarray(times, dtype=float))
        n_t = times.size
        eta = np.zeros(n_t)
        phi_q = np.zeros(n_t)
        coh = np.zeros(n_t, dtype=complex)
        for i, w in zip(self.system.bath.spins, self.system.bath.weights):
            if i == 0.0:
                eta += w
                phi_q += w
                coh += w * np.exp(-1j * self.system.j * times)
                continue
            tables = _cg_tables(i)
            u = np.exp(-1j * np.outer(_triplet_levels(self.system, i), times))
            c = tables.c
            norm = 2.0 * i + 1.0
            moments = np.einsum("fbk,fak,gbk,gak->abfg", c, c, c, c) / norm
            r = np.einsum("ft,gt,abfg->abt", u, u.conj(), moments).real
            eta += w * 0.5 * (r[0, 0] - r[0, 2] - r[2, 0] + r[2, 2])
            d_nu = 0.25 * (r[:, 0, :] + r[:, 2, :] - r[:, 1, :])
            out_zz = d_nu[0] + d_nu[2] - d_nu[1] + 0.25
            phi_q += w * 0.5 * (3.0 * out_zz - 1.0)
            c0_sq = np.einsum("fk,fk->f", c[:, 1, :], c[:, 1, :]) / norm
            coh += w * np.einsum("f,ft->t", c0_sq, u)
        hr, hi = coh.real, coh.imag
        return SymmetricMapCoefficients(
            times=times,
            st_coherence=coh,
            vec_direct=0.5 * (eta + hr),
            vec_exchange=0.5 * (eta - hr),
            vec_from_tensor=0.5 * hi,
            tensor_direct=0.5 * (phi_q + hr),
            tensor_transpose=0.5 * (phi_q - hr),
            tensor_trace=(1.0 - phi_q) / 3.0,
            tensor_from_vec=-0.5 * hi,
        )

    def evolve(self, state: TwoQubitState, times) -> list[TwoQubitState]:
        coeffs = self.map_coefficients(times)
        return [apply_polarization_map(state, coeffs, k) for k in range(coeffs.times.size)]


def apply_polarization_map(
    state: TwoQubitState, coeffs: SymmetricMapCoefficients, k: int
) -> TwoQubitState:
    axial = 0.5 * np.einsum("kmn,mn->k", _EPS, state.pi)
    f1, f2, f3 = coeffs.vec_direct[k], coeffs.vec_exchange[k], coeffs.vec_from_tensor[k]
    p_a = f1 * state.p_a + f2 * state.p_b + 2.0 * f3 * axial
    p_b = f1 * state.p_b + f2 * state.p_a - 2.0 * f3 * axial
    pi = (
        coeffs.tensor_direct[k] * state.pi
        + coeffs.tensor_transpose[k] * state.pi.T
        + coeffs.tensor_trace[k] * np.trace(state.pi) * np.eye(3)
        + coeffs.tensor_from_vec[k] * np.einsum("mnk,k->mn", _EPS, state.p_a - state.p_b)
    )
    return TwoQubitState(p_a, p_b, pi)


def symmetric_map_coefficients(system: CommonBathSystem, times) -> SymmetricMapCoefficients:
    """Polarization-map coefficients for equal couplings on a time grid."""
    return SymmetricEvolver(system).map_coefficients(times)


def evolve_symmetric(system: CommonBathSystem, state: TwoQubitState, t: float) -> TwoQubitState:
    return SymmetricEvolver(system).evolve(state, [float(t)])[0]


# ---------------------------------------------------------------------------
# arbitrary couplings: dense per-sector propagation
# ---------------------------------------------------------------------------


class SectorExactEvolver:
    """Dense sector-by-sector evolution; exact for any couplings and state.

    Each sector is diagonalized once; evaluation at each time costs two
    dense matrix products of the sector dimension 4(2I+1).
    """

    def __init__(self, system: CommonBathSystem):
        self.system = system
        self._sectors = []
        for i, w in zip(system.bath.spins, system.bath.weights):
            h = sector_hamiltonian(system, i)
            herm = np.abs(h - h.conj().T).max()
            assert herm < 1e-12
            vals, vecs = np.linalg.eigh(h.real)
            self._sectors.append((float(i), float(w), vals, vecs))

    def evolve(self, state: TwoQubitState, times) -> list[TwoQubitState]:
        times = np.atleast_1d(np.asarray(times, dtype=float))
        rho_ab = state_to_density(state)
        acc = np.zeros((times.size, 4, 4), dtype=complex)
        for _, w, vals, vecs in self._sectors:
            d = vals.size // 4
            rho0 = np.kron(rho_ab, np.eye(d) / d)
            rho_eig = vecs.T @ rho0 @ vecs
            for k, t in enumerate(times):
                u = np.exp(-1j * vals * t)
                rho_t = vecs @ (rho_eig * np.outer(u, u.conj())) @ vecs.T
                acc[k] += w * np.trace(rho_t.reshape(4, d, 4, d), axis1=1, axis2=3)
        return [density_to_state(acc[k]) for k in range(times.size)]


def evolve_asymmetric(system: CommonBathSystem, state: TwoQubitState, t: float) -> TwoQubitState:
    return SectorExactEvolver(system).evolve(state, [float(t)])[0]


# ---------------------------------------------------------------------------
# Bell-basis evolution of singlet/triplet0 superpositions (any couplings)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BellBasisEvolution:
    """Bell-basis matrix elements of the evolved state on a time grid.

    The density matrix is

        singlet_pop |S0><S0| + triplet0_pop |T0><T0|
        + (st_coherence |T0><S0| + h.c.)
        + t1t2_pop (|T1><T1| + |T2><T2|) + (t1t2_coherence |T1><T2| + h.c.)

    Populations are real; the trace identity
    singlet_pop + triplet0_pop + 2 t1t2_pop = 1 holds at every sample.
    """

    times: np.ndarray
    singlet_pop: np.ndarray
    triplet0_pop: np.ndarray
    st_coherence: np.ndarray
    t1t2_pop: np.ndarray
    t1t2_coherence: np.ndarray

    def mixedness(self) -> np.ndarray:
        return 1.0 - (
            self.singlet_pop**2
            + self.triplet0_pop**2
            + 2.0 * np.abs(self.st_coherence) ** 2
            + 2.0 * self.t1t2_pop**2
            + 2.0 * np.abs(self.t1t2_coherence) ** 2
        )

    def density(self, k: int) -> np.ndarray:
        from .states import KET_SINGLET, KET_T1, KET_T2, KET_TRIPLET0

        rho = self.singlet_pop[k] * np.outer(KET_SINGLET, KET_SINGLET.conj())
        rho += self.triplet0_pop[k] * np.outer(KET_TRIPLET0, KET_TRIPLET0.conj())
        cross = self.st_coherence[k] * np.outer(KET_TRIPLET0, KET_SINGLET.conj())
        rho += cross + cross.conj().T
        rho += self.t1t2_pop[k] * (
            np.outer(KET_T1, KET_T1.conj()) + np.outer(KET_T2, KET_T2.conj())
        )
        cross = self.t1t2_coherence[k] * np.outer(KET_T1, KET_T2.conj())
        rho += cross + cross.conj().T
        return rho

    def state(self, k: int) -> TwoQubitState:
        return density_to_state(self.density(k))


def _mix_block(system: CommonBathSystem, i: float, times: np.ndarray):
    """2x2 propagator of the F = I singlet-triplet block, true levels.

    Returns (b_tt, b_ss, b_ts) sampled over times; basis {triplet, singlet},
    off-diagonal element of H equal to k_half_diff * y with
    y = -sqrt(I(I+1)) in the ladder-consistent triplet basis.
    """
    h_tt = -system.k_mean + system.j / 4.0
    h_ss = -0.75 * system.j
    off = system.k_half_diff * (-math.sqrt(i * (i + 1.0)))
    mean = 0.5 * (h_tt + h_ss)
    gap = 0.5 * math.sqrt((h_tt - h_ss) ** 2 + 4.0 * off**2)
    phase = np.exp(-1j * mean * times)
    if gap < 1e-300:
        one = np.ones_like(times)
        return phase * one, phase * one, np.zeros_like(phase)
    c, s = np.cos(gap * times), np.sin(gap * times)
    m_tt = (h_tt - mean) / gap
    m_off = off / gap
    b_tt = phase * (c - 1j * s * m_tt)
    b_ss = phase * (c + 1j * s * m_tt)
    b_ts = phase * (-1j * s * m_off)
    return b_tt, b_ss, b_ts


def bell_mix_evolution(
    system: CommonBathSystem, r: float, times, chunk: int = 8192
) -> BellBasisEvolution:
    """Evolve [(1+r)|S0> + (1-r)|T0>] (normalized) in the Bell basis.

    Exact for any couplings and exchange; cost O(#sectors * bath-dim) per
    time sample. r = 1 is the singlet, r = -1 the m=0 triplet.
    """
    times = np.atleast_1d(np.asarray(times, dtype=float))
    norm = math.sqrt(2.0 * (1.0 + r * r))
    alpha = (1.0 + r) / norm
    beta = (1.0 - r) / norm
    c1 = np.zeros(times.size)
    c2 = np.zeros(times.size)
    c3 = np.zeros(times.size, dtype=complex)
    pp = np.zeros(times.size)
    pm = np.zeros(times.size)
    for i, w in zip(system.bath.spins, system.bath.weights):
        if i == 0.0:
            c1 += w * alpha**2
            c2 += w * beta**2
            c3 += w * alpha * beta * np.exp(-1j * system.j * times)
            continue
        tables = _cg_tables(i)
        d = int(round(2 * i)) + 1
        m_grid = i - np.arange(d)
        idx = np.round((i + 1.0) - m_grid).astype(int)
        g0 = tables.c[:, 1, idx]  # (3F, M)
        gp = tables.c[:, 0, idx]
        gm = tables.c[:, 2, idx]
        lam_true = np.array(
            [system.k_mean * i + system.j / 4.0, 0.0, -system.k_mean * (i + 1.0) + system.j / 4.0]
        )
        for lo in range(0, times.size, chunk):
            sl = slice(lo, min(lo + chunk, times.size))
            t_sl = times[sl]
            b_tt, b_ss, b_ts = _mix_block(system, i, t_sl)
            u = np.exp(-1j * np.outer(lam_true, t_sl))  # rows F=I+1, (unused), F=I-1
            amp = np.empty((3, d, t_sl.size), dtype=complex)
            amp[0] = beta * g0[0][:, None] * u[0][None, :]
            amp[1] = beta * g0[1][:, None] * b_tt[None, :] + alpha * b_ts[None, :]
            amp[2] = beta * g0[2][:, None] * u[2][None, :]
            amp_s = alpha * b_ss[None, :] + beta * g0[1][:, None] * b_ts[None, :]
            c1[sl] += w * (np.abs(amp_s) ** 2).sum(axis=0) / (2.0 * i + 1.0)
            amp0 = np.einsum("fm,fmt->mt", g0, amp)
            c2[sl] += w * (np.abs(amp0) ** 2).sum(axis=0) / (2.0 * i + 1.0)
            c3[sl] += w * (amp0 * amp_s.conj()).sum(axis=0) / (2.0 * i + 1.0)
            amp_p = np.einsum("fm,fmt->mt", gp, amp)
            amp_m = np.einsum("fm,fmt->mt", gm, amp)
            pp[sl] += w * (np.abs(amp_p) ** 2).sum(axis=0) / (2.0 * i + 1.0)
            pm[sl] += w * (np.abs(amp_m) ** 2).sum(axis=0) / (2.0 * i + 1.0)
    return BellBasisEvolution(
        times=times,
        singlet_pop=c1,
        triplet0_pop=c2,
        st_coherence=c3,
        t1t2_pop=0.5 * (pp + pm),
        t1t2_coherence=(0.5 * (pp - pm)).astype(complex),
    )


# ---------------------------------------------------------------------------
# singlet survival
# ---------------------------------------------------------------------------


def singlet_survival(system: CommonBathSystem, times) -> np.ndarray:
    """Singlet population of an initially singlet pair:

        c1(t) = sum_I lambda_I [cos^2(gap t) + cos_mix^2 sin^2(gap t)].
    """
    times = np.atleast_1d(np.asarray(times, dtype=float))
    out = np.zeros(times.size)
    for i, w in zip(system.bath.spins, system.bath.weights):
        spec = sector_spectrum(system, i)
        s2 = np.sin(spec.phase_gap * times) ** 2
        out += w * (1.0 - s2 + spec.mixing_cos**2 * s2)
    return out


def singlet_survival_large_j(system: CommonBathSystem, times) -> np.ndarray:
    """Strong-exchange closed form of the singlet survival:

        c1(t) = 1 - 3 beta^2 [1 - cos(Jt + (5/2) arctan(beta t))
                              / (1 + beta^2 t^2)^(5/4)],
        beta = (K_A - K_B) sqrt(N) / (2J).

    Derived for the narrow Gaussian sector distribution; a warning is issued
    when J is less than ten times the Overhauser scale
    (K_A + K_B) sqrt(<I(I+1)>). The prefactor is the quoted approximation;
    against the exact survival it is accurate to O(beta^2).
    """
    times = np.atleast_1d(np.asarray(times, dtype=float))
    if system.j == 0.0:
        raise AssumptionError("the strong-exchange form requires J != 0")
    if system.bath.n_spins is None:
        raise AssumptionError("bath must carry its spin count for the strong-exchange form")
    overhauser = abs(system.k_a + system.k_b) * math.sqrt(system.bath.casimir_moment())
    if abs(system.j) < 10.0 * overhauser:
        warnings.warn(
            f"J = {system.j} below 10x the Overhauser scale {overhauser:.3g}; "
            "the strong-exchange form is unreliable here",
            stacklevel=2,
        )
    beta = (system.k_a - system.k_b) * math.sqrt(system.bath.n_spins) / (2.0 * system.j)
    envelope = (1.0 + (beta * times) ** 2) ** 1.25
    osc = np.cos(system.j * times + 2.5 * np.arctan(beta * times)) / envelope
    return 1.0 - 3.0 * beta**2 * (1.0 - osc)


def singlet_mixedness(c1: np.ndarray) -> np.ndarray:
    """Mixedness of the singlet-survival state c1 |S0><S0| + (1-c1)/3 triplets."""
    c1 = np.asarray(c1, dtype=float)
    return 1.0 - c1**2 - (1.0 - c1) ** 2 / 3.0


# ---------------------------------------------------------------------------
# short-time timescales
# ---------------------------------------------------------------------------


def tensor_invariant_r(state: TwoQubitState) -> float:
    """Tr(pi^2) - (Tr pi)^2; -6 for the singlet, 2 for triplet Bell states,
    0 for pure product states."""
    return float(np.trace(state.pi @ state.pi) - np.trace(state.pi) ** 2)


def decoherence_rate_sq(state: TwoQubitState, system: CommonBathSystem) -> float:
    """1/tau_D^2 of the short-time Gaussian decay of D(t) for a pure state:

        (1/6) <I(I+1)> [ (K_A^2 + K_B^2)(3 - P^2) + K_A K_B R ]

    with R = Tr(pi^2) - (Tr pi)^2. Independent of the exchange J.
    """
    if abs(decoherence_measure(state)) > 1e-10:
        raise InvalidStateError("short-time decoherence rate is defined for pure states")
    m2 = system.bath.casimir_moment()
    p_sq = float(state.p_a @ state.p_a)
    return (
        m2
        * ((system.k_a**2 + system.k_b**2) * (3.0 - p_sq) + system.k_a * system.k_b * tensor_invariant_r(state))
        / 6.0
    )


def short_time_decoherence_time(state: TwoQubitState, system: CommonBathSystem) -> float:
    rate = decoherence_rate_sq(state, system)
    return math.inf if rate <= 0.0 else 1.0 / math.sqrt(rate)


def transverse_longitudinal_rates(system: CommonBathSystem) -> tuple[float, float]:
    """Quadratic decay coefficients of the transverse and longitudinal tensor
    polarization of a triplet Bell state, for equal couplings.

    Rates are expressed against the per-component bath moment
    <I(I+1)>/3: (2 K^2 m, 4 K^2 m). Their ratio is exactly 2.
    """
    if system.k_a != system.k_b:
        raise AssumptionError("transverse/longitudinal split assumes equal couplings")
    m_component = system.bath.casimir_moment() / 3.0
    k_sq = system.k_a**2
    return 2.0 * k_sq * m_component, 4.0 * k_sq * m_component
