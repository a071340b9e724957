"""Short-time decoherence rate over pure two-qubit states and its optimum.

For a pure pair state and an unpolarized common bath the Gaussian decay rate
of the mixedness is a variance,

    1/tau^2 = (2/3) <I(I+1)> Var(K_A S_A + K_B S_B),

which for the family |up_z down_n> - gamma |down_z up_n> (normalized) closes
to

    1/tau^2 = scale * [ 1 + 2|gamma|^2 (1 - delta cos(theta)) / (1+|gamma|^2)^2
                        - 2 delta cos^2(theta/2) Re(gamma) / (1+|gamma|^2) ]

with scale = (1/3) <I(I+1)> (K_A^2 + K_B^2) and the coupling overlap
delta = 2 K_A K_B / (K_A^2 + K_B^2). The optimum over the family is at
theta = 0 and real gamma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .common import CommonBathSystem, decoherence_rate_sq as _rate_from_state
from .states import InvalidStateError, TwoQubitState, decoherence_measure


class CouplingError(ValueError):
    pass


@dataclass(frozen=True)
class PureStateParam:
    """Parameters of the general pure state: complex gamma, axis angles of
    the second qubit (the first is fixed to z)."""

    gamma: complex
    theta: float = 0.0
    phi: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise InvalidStateError(f"theta must be in [0, pi], got {self.theta}")


@dataclass(frozen=True)
class InhomogeneousCouplings:
    """Per-nucleus couplings of the two qubits, with order-unity scale
    factors for non-uniform bath distributions (1 for the unpolarized bath).
    """

    k_a_i: np.ndarray
    k_b_i: np.ndarray
    eta1: float = 1.0
    eta2: float = 1.0

    def __post_init__(self):
        ka = np.array(self.k_a_i, dtype=float)
        kb = np.array(self.k_b_i, dtype=float)
        if ka.shape != kb.shape or ka.ndim != 1:
            raise CouplingError("coupling lists must be matching 1-d arrays")
        ka.setflags(write=False)
        kb.setflags(write=False)
        object.__setattr__(self, "k_a_i", ka)
        object.__setattr__(self, "k_b_i", kb)


class ScanResult(NamedTuple):
    gamma: complex
    theta: float
    rate: float


def decoherence_rate_general(state: TwoQubitState, system: CommonBathSystem) -> float:
    """1/tau^2 from the variance form; equals the polarization form exactly."""
    if abs(decoherence_measure(state)) > 1e-10:
        raise InvalidStateError("the short-time rate is defined for pure states")
    m2 = system.bath.casimir_moment()
    var = 0.0
    var += system.k_a**2 * (0.75 - 0.25 * float(state.p_a @ state.p_a))
    var += system.k_b**2 * (0.75 - 0.25 * float(state.p_b @ state.p_b))
    var += 2.0 * system.k_a * system.k_b * 0.25 * (
        float(np.trace(state.pi)) - float(state.p_a @ state.p_b)
    )
    return (2.0 / 3.0) * m2 * var


# keep the polarization form importable from here for cross-checks
decoherence_rate_polarization = _rate_from_state


def coupling_overlap(k_a: float, k_b: float) -> float:
    """delta = 2 K_A K_B / (K_A^2 + K_B^2), in [-1, 1]."""
    denom = k_a**2 + k_b**2
    if denom == 0.0:
        raise CouplingError("at least one coupling must be nonzero")
    return 2.0 * k_a * k_b / denom


def coupling_overlap_inhomogeneous(couplings: InhomogeneousCouplings) -> float:
    """Delta = eta2 * sum 2 K_A^i K_B^i / sum (K_A^i^2 + K_B^i^2)."""
    denom = float(np.sum(couplings.k_a_i**2 + couplings.k_b_i**2))
    if denom == 0.0:
        raise CouplingError("all couplings are zero")
    return couplings.eta2 * 2.0 * float(np.sum(couplings.k_a_i * couplings.k_b_i)) / denom


def rate_scale(system: CommonBathSystem) -> float:
    """(1/3) <I(I+1)> (K_A^2 + K_B^2), the separable-state rate."""
    return system.bath.casimir_moment() * (system.k_a**2 + system.k_b**2) / 3.0


def decoherence_rate_pure(param: PureStateParam, delta: float, scale: float = 1.0):
    """Closed-form 1/tau^2 of the gamma-family; phi does not enter."""
    if not -1.0 <= delta <= 1.0:
        raise CouplingError(f"coupling overlap must be in [-1, 1], got {delta}")
    g = np.asarray(param.gamma, dtype=complex)
    mod_sq = np.abs(g) ** 2
    bracket = (
        1.0
        + 2.0 * mod_sq * (1.0 - delta * np.cos(param.theta)) / (1.0 + mod_sq) ** 2
        - 2.0 * delta * np.cos(param.theta / 2.0) ** 2 * g.real / (1.0 + mod_sq)
    )
    out = scale * bracket
    return float(out) if out.ndim == 0 else out


def optimal_gamma(delta: float) -> float:
    """Real gamma minimizing the rate at theta = 0:

        [(1 - delta) - sqrt(1 - 2 delta)] / delta   for delta in [-1, 1/2],
        1                                            for delta in [1/2, 1],

    with the removable limit 0 at delta = 0.
    """
    if not -1.0 <= delta <= 1.0:
        raise CouplingError(f"coupling overlap must be in [-1, 1], got {delta}")
    if delta >= 0.5:
        return 1.0
    if abs(delta) < 1e-9:
        # series: gamma = delta/2 + O(delta^2)
        return delta / 2.0
    return ((1.0 - delta) - math.sqrt(1.0 - 2.0 * delta)) / delta


def _golden_minimize(f, lo: float, hi: float, tol: float = 1e-12) -> float:
    inv_phi = (math.sqrt(5.0) - 1.0) / 2.0
    a, b = lo, hi
    c = b - inv_phi * (b - a)
    d = a + inv_phi * (b - a)
    fc, fd = f(c), f(d)
    while abs(b - a) > tol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - inv_phi * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + inv_phi * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def _rate_extended(re: float, im: float, theta: float, delta: float):
    """Rate in extended precision; the minimum is quartic-flat at the branch
    point delta = 1/2, where double precision cannot localize it to 1e-4."""
    ld = np.longdouble
    re, im, theta, delta = ld(re), ld(im), ld(theta), ld(delta)
    mod_sq = re * re + im * im
    return (
        ld(1.0)
        + ld(2.0) * mod_sq * (ld(1.0) - delta * np.cos(theta)) / (ld(1.0) + mod_sq) ** 2
        - ld(2.0) * delta * np.cos(theta / ld(2.0)) ** 2 * re / (ld(1.0) + mod_sq)
    )


def scan_optimal_state(delta: float, coarse: int = 41, span: float = 2.0) -> ScanResult:
    """Brute-force minimum of the pure-state rate over (Re gamma, Im gamma,
    theta), followed by golden-section refinement along each coordinate.

    Deterministic and seedless. The rate is exactly symmetric under
    gamma -> 1/gamma (qubit exchange relabels the same state family), so the
    minimum comes in reciprocal pairs; the result is the canonical
    |gamma| <= 1 representative, with theta reported as 0 when gamma is so
    small that the second-qubit axis is immaterial.
    """
    re = np.linspace(-span, span, coarse)
    im = np.linspace(-span, span, coarse)
    th = np.linspace(0.0, math.pi, coarse)
    g = re[:, None, None] + 1j * im[None, :, None]
    mod_sq = np.abs(g) ** 2
    cos_t = np.cos(th)[None, None, :]
    cos_half_sq = np.cos(th / 2.0)[None, None, :] ** 2
    rate = (
        1.0
        + 2.0 * mod_sq * (1.0 - delta * cos_t) / (1.0 + mod_sq) ** 2
        - 2.0 * delta * cos_half_sq * g.real / (1.0 + mod_sq)
    )
    flat = int(np.argmin(rate))
    i, j, k = np.unravel_index(flat, rate.shape)
    g0 = complex(re[i], im[j])
    if abs(g0) > 1.0:  # map to the canonical member of the reciprocal pair
        g0 = 1.0 / g0
    best = [g0.real, g0.imag, float(th[k])]

    for _ in range(3):
        for axis, (lo, hi) in enumerate(
            [(-1.2, 1.2), (-1.2, 1.2), (0.0, math.pi)]
        ):
            def along(x, axis=axis):
                v = list(best)
                v[axis] = x
                return _rate_extended(v[0], v[1], v[2], delta)

            best[axis] = _golden_minimize(along, lo, hi)
    gamma = complex(best[0], best[1])
    theta = best[2]
    if abs(gamma) > 1.0:
        gamma = 1.0 / gamma
    if abs(gamma) < 1e-6:
        theta = 0.0
    return ScanResult(
        gamma=gamma,
        theta=theta,
        rate=decoherence_rate_pure(PureStateParam(gamma=gamma, theta=theta), delta),
    )


def gaussian_dot_couplings(
    separation: float,
    width: float,
    half_extent: float | None = None,
    spacing: float = 1.0,
) -> InhomogeneousCouplings:
    """Couplings from two Gaussian ground-state densities on a square lattice.

    The qubits sit at (+-separation/2, 0) with density envelopes
    exp(-|r - r_q|^2 / width^2); couplings are proportional to the density at
    each lattice site. The lattice must extend at least 5 widths beyond both
    centers.
    """
    if separation < 0 or width <= 0:
        raise CouplingError("separation must be >= 0 and width > 0")
    if half_extent is None:
        half_extent = separation / 2.0 + 6.0 * width
    if half_extent < separation / 2.0 + 5.0 * width:
        raise CouplingError(
            f"lattice half-extent {half_extent} does not cover 5 widths beyond the centers"
        )
    axis = np.arange(-half_extent, half_extent + spacing / 2.0, spacing)
    xs, ys = np.meshgrid(axis, axis, indexing="ij")
    r_a = (xs + separation / 2.0) ** 2 + ys**2
    r_b = (xs - separation / 2.0) ** 2 + ys**2
    k_a = np.exp(-r_a / width**2).ravel()
    k_b = np.exp(-r_b / width**2).ravel()
    return InhomogeneousCouplings(k_a_i=k_a, k_b_i=k_b)


def decoherence_rate_inhomogeneous(
    param: PureStateParam, couplings: InhomogeneousCouplings, moment: float
) -> float:
    """Rate for per-nucleus couplings, z-aligned family (theta = 0):

        (eta1/3) <I(I+1)> (sum_i (K_A^i^2 + K_B^i^2) / N)
        * [1 + 2|gamma|^2 (1 - Delta)/(1+|gamma|^2)^2
             - 2 Delta Re(gamma)/(1+|gamma|^2)]
    """
    if param.theta != 0.0:
        raise InvalidStateError("the inhomogeneous closed form holds for theta = 0")
    n = couplings.k_a_i.size
    big_delta = coupling_overlap_inhomogeneous(couplings)
    mean_sq = float(np.sum(couplings.k_a_i**2 + couplings.k_b_i**2)) / n
    scale = couplings.eta1 * moment * mean_sq / 3.0
    g = complex(param.gamma)
    mod_sq = abs(g) ** 2
    return scale * (
        1.0
        + 2.0 * mod_sq * (1.0 - big_delta) / (1.0 + mod_sq) ** 2
        - 2.0 * big_delta * g.real / (1.0 + mod_sq)
    )
