"""Distributions of the total bath spin for N unpolarized nuclear spin-1/2.

The initial bath density matrix is block diagonal in the total-spin sectors I,
with weight lambda_I on each sector and no polarization inside a sector. The
completely unpolarized bath (identity/2^N) has exact sector weights

    lambda_I = d_N(I) (2I+1) / 2^N,
    d_N(I) = C(N, N/2 - I) - C(N, N/2 - I - 1),

where d_N(I) counts the multiplicity of spin-I irreducible blocks. Two
Gaussian surrogates lambda_I ~ I^2 exp(-c I^2) on the same discrete grid are
provided: c = 1/(2N) ("wide") and c = 2/N ("narrow"). The narrow variant
reproduces the exact Casimir moment <I(I+1)> = 3N/4 asymptotically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

import numpy as np


class BathSpecError(ValueError):
    """Raised for invalid bath-distribution parameters."""


@dataclass(frozen=True)
class BathDistribution:
    """Normalized weights over total bath-spin sectors."""

    spins: np.ndarray
    weights: np.ndarray
    n_spins: int | None = None

    def __post_init__(self):
        spins = np.array(self.spins, dtype=float)
        weights = np.array(self.weights, dtype=float)
        if spins.shape != weights.shape or spins.ndim != 1:
            raise BathSpecError("spins and weights must be matching 1-d arrays")
        if np.any(weights < 0.0):
            raise BathSpecError("weights must be nonnegative")
        if np.any(np.diff(spins) <= 0.0):
            raise BathSpecError("spins must be strictly ascending")
        total = weights.sum()
        if abs(total - 1.0) > 1e-12:
            raise BathSpecError(f"weights must sum to 1 (got {total!r})")
        spins.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "spins", spins)
        object.__setattr__(self, "weights", weights)

    def moment(self, kind: str | Callable[[np.ndarray], np.ndarray]) -> float:
        """Weighted moment sum_I lambda_I f(I).

        ``kind`` is "i_squared" (f = I^2), "casimir" (f = I(I+1)), or any
        callable of the spin array.
        """
        if kind == "i_squared":
            f = self.spins**2
        elif kind == "casimir":
            f = self.spins * (self.spins + 1.0)
        elif callable(kind):
            f = np.asarray(kind(self.spins), dtype=float)
        else:
            raise BathSpecError(f"unknown moment kind {kind!r}")
        return float(np.sum(self.weights * f))

    def casimir_moment(self) -> float:
        """<I(I+1)>, the moment entering every short-time decay rate."""
        return self.moment("casimir")


def spin_grid(n: int) -> np.ndarray:
    """Allowed total-spin values for n spin-1/2: n/2, n/2-1, ..., (n mod 2)/2."""
    i_min = 0.5 * (n % 2)
    return np.arange(i_min, n / 2.0 + 0.25, 1.0)


def sector_multiplicity(n: int, i: float) -> int:
    """Number of spin-i irreducible blocks in (1/2)^{(x)n}."""
    k = n // 2 - int(round(i - 0.5 * (n % 2)))
    first = math.comb(n, k) if 0 <= k <= n else 0
    second = math.comb(n, k - 1) if 0 <= k - 1 <= n else 0
    return first - second


def unpolarized_exact(n: int) -> BathDistribution:
    """Exact sector weights of the fully unpolarized bath identity/2^n."""
    if not 1 <= n <= 64:
        raise BathSpecError(f"n must be in [1, 64], got {n}")
    spins = spin_grid(n)
    denom = 2**n
    fracs = [
        Fraction(sector_multiplicity(n, i) * int(round(2 * i + 1)), denom) for i in spins
    ]
    assert sum(fracs) == 1  # dimension count is exact in integer arithmetic
    weights = np.array([float(f) for f in fracs])
    return BathDistribution(spins, weights / weights.sum(), n_spins=n)


def gaussian_approx(n: int, variant: str = "narrow") -> BathDistribution:
    """Gaussian surrogate lambda_I ~ I^2 exp(-c I^2) on the discrete grid.

    variant "wide": c = 1/(2n); variant "narrow": c = 2/n.
    """
    if n < 2:
        raise BathSpecError(f"n must be >= 2, got {n}")
    if variant == "wide":
        c = 1.0 / (2.0 * n)
    elif variant == "narrow":
        c = 2.0 / n
    else:
        raise BathSpecError(f"unknown gaussian variant {variant!r}")
    spins = spin_grid(n)
    w = spins**2 * np.exp(-c * spins**2)
    return BathDistribution(spins, w / w.sum(), n_spins=n)


def delta_distribution(i0: float) -> BathDistribution:
    """All weight on a single sector; useful for single-sector checks."""
    if i0 < 0 or abs(2 * i0 - round(2 * i0)) > 1e-12:
        raise BathSpecError(f"spin must be a nonnegative half-integer, got {i0}")
    return BathDistribution(np.array([float(i0)]), np.array([1.0]))


def bath_from_config(kind: str, n: int) -> BathDistribution:
    """Build a distribution from the CLI config vocabulary."""
    if kind == "exact":
        return unpolarized_exact(n)
    if kind in ("gaussian-narrow", "gaussian-wide"):
        return gaussian_approx(n, variant=kind.split("-")[1])
    raise BathSpecError(f"unknown bath kind {kind!r} (use exact|gaussian-narrow|gaussian-wide)")
