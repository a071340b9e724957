import numpy as np
import pytest

from spinbath.common import CommonBathSystem, sector_spectrum
from spinbath.bath import unpolarized_exact
from spinbath.oracle import (
    CouplingParams,
    DimensionCapError,
    bath_spin_projector,
    bath_spin_spectrum,
    build,
    evolve_reduced,
    total_fz,
)
from spinbath.optimize import InhomogeneousCouplings
from spinbath.states import (
    decoherence_measure,
    make_named_state,
    state_to_density,
)


class TestBuild:
    @pytest.mark.parametrize("mode,coup", [
        ("separate", CouplingParams(1.0, 0.7, 0.0)),
        ("common", CouplingParams(1.0, 0.4, 2.0)),
    ])
    def test_hermitian(self, mode, coup):
        sys = build(mode, 4, coup)
        h = sys.hamiltonian
        assert np.abs(h - h.T).max() == 0.0

    def test_inhomogeneous_mode(self):
        coup = InhomogeneousCouplings(np.array([1.0, 0.5, 0.2]), np.array([0.2, 0.5, 1.0]))
        sys = build("inhomogeneous", 3, coup)
        assert sys.dim == 32
        # equal per-site couplings reduce to the common mode without exchange
        coup_eq = InhomogeneousCouplings(np.full(3, 0.8), np.full(3, 0.3))
        sys_eq = build("inhomogeneous", 3, coup_eq)
        sys_common = build("common", 3, CouplingParams(0.8, 0.3, 0.0))
        assert np.abs(sys_eq.hamiltonian - sys_common.hamiltonian).max() < 1e-12

    def test_common_conserves_total_fz(self):
        sys = build("common", 4, CouplingParams(1.0, 0.3, 1.5))
        fz = total_fz(4)
        comm = sys.hamiltonian @ fz - fz @ sys.hamiltonian
        assert np.abs(comm).max() < 1e-12

    def test_single_bath_spin_levels(self):
        # dim 8 system: levels from the I = 1/2 sector formulas
        k, j = 1.0, 1.7
        sys = build("common", 1, CouplingParams(k, k, j))
        vals = np.sort(np.linalg.eigvalsh(sys.hamiltonian))
        spec = sector_spectrum(CommonBathSystem(k, k, j, unpolarized_exact(1)), 0.5)
        shift = -0.75 * j  # spectrum is reported relative to the singlet level
        expect = np.sort(
            np.concatenate(
                [
                    np.full(4, spec.level_f_plus + shift),
                    np.full(2, spec.level_mix_upper + shift),
                    np.full(2, spec.level_mix_lower + shift),
                ]
            )
        )
        assert np.allclose(vals, expect, atol=1e-12)

    def test_dimension_cap(self):
        with pytest.raises(DimensionCapError):
            build("common", 13, CouplingParams(1.0, 1.0, 0.0))

    def test_separate_rejects_exchange(self):
        with pytest.raises(DimensionCapError):
            build("separate", 4, CouplingParams(1.0, 1.0, 1.0))


class TestEvolveReduced:
    def test_time_zero_identity(self):
        sys = build("common", 3, CouplingParams(1.0, 0.4, 1.0))
        s0 = make_named_state("r_state", r=0.5)
        s = evolve_reduced(sys, s0, "fully_mixed", [0.0])[0]
        assert np.abs(s.pi - s0.pi).max() < 1e-12

    def test_decoupled_qubits_stay_pure(self):
        # K = 0 with exchange only: the pair evolves unitarily, D stays 0
        sys = build("common", 3, CouplingParams(0.0, 0.0, 2.0))
        s0 = make_named_state("r_state", r=0.4)
        for s in evolve_reduced(sys, s0, "fully_mixed", [0.5, 1.5, 3.0]):
            assert abs(decoherence_measure(s)) < 1e-12

    def test_full_state_conservation_laws(self):
        # propagating the complete system conserves energy, purity, and F^z
        sys = build("common", 3, CouplingParams(1.0, 0.4, 1.3))
        vals, vecs = sys.eigensystem()
        rho_ab = state_to_density(make_named_state("triplet0"))
        rho0 = np.kron(rho_ab, np.eye(8) / 8)
        fz = total_fz(3)
        h = sys.hamiltonian
        ref = (
            np.trace(rho0 @ h).real,
            np.trace(rho0 @ fz).real,
            np.trace(rho0 @ rho0).real,
        )
        for t in (0.7, 2.9):
            u = (vecs * np.exp(-1j * vals * t)) @ vecs.conj().T
            rho_t = u @ rho0 @ u.conj().T
            assert np.trace(rho_t @ h).real == pytest.approx(ref[0], abs=1e-12)
            assert np.trace(rho_t @ fz).real == pytest.approx(ref[1], abs=1e-12)
            assert np.trace(rho_t @ rho_t).real == pytest.approx(ref[2], abs=1e-12)

    def test_reduced_purity_bounded(self):
        sys = build("common", 4, CouplingParams(1.0, 0.6, 0.5))
        s0 = make_named_state("bell_t1")
        for s in evolve_reduced(sys, s0, "fully_mixed", [0.3, 1.1, 2.2]):
            assert decoherence_measure(s) >= -1e-12

    def test_sector_projected_bath(self):
        proj = bath_spin_projector(2, 1.0)
        assert np.trace(proj).real == pytest.approx(3.0)
        sys = build("common", 2, CouplingParams(1.0, 0.5, 0.7))
        s0 = make_named_state("singlet")
        s = evolve_reduced(sys, s0, ("sector", 0.0), [1.3])[0]
        # the I = 0 sector cannot mix singlet and triplet
        assert np.abs(s.pi + np.eye(3)).max() < 1e-12

    def test_unknown_bath_state(self):
        sys = build("common", 2, CouplingParams(1.0, 0.5, 0.7))
        with pytest.raises(DimensionCapError):
            evolve_reduced(sys, make_named_state("singlet"), ("thermal", 0.1), [0.1])


class TestBathSpinSpectrum:
    def test_one_spin(self):
        assert bath_spin_spectrum(1) == [(0.5, 2)]

    def test_two_spins(self):
        assert bath_spin_spectrum(2) == [(0.0, 1), (1.0, 3)]

    def test_three_spins(self):
        assert bath_spin_spectrum(3) == [(0.5, 4), (1.5, 4)]

    @pytest.mark.parametrize("n", [2, 4, 6])
    def test_matches_multiplicity_formula(self, n):
        from spinbath.bath import sector_multiplicity

        table = dict(bath_spin_spectrum(n))
        for i, count in table.items():
            assert count == sector_multiplicity(n, i) * int(round(2 * i + 1))
