import math

import numpy as np
import pytest

from spinbath.bath import delta_distribution, gaussian_approx, unpolarized_exact
from spinbath.common import (
    AssumptionError,
    CommonBathSystem,
    SectorExactEvolver,
    SymmetricEvolver,
    _cg_tables,
    bell_mix_evolution,
    decoherence_rate_sq,
    evolve_asymmetric,
    evolve_symmetric,
    rebuild_sector_propagator,
    sector_a_coefficients,
    sector_hamiltonian,
    sector_operators,
    sector_spectrum,
    short_time_decoherence_time,
    singlet_mixedness,
    singlet_survival,
    singlet_survival_large_j,
    tensor_invariant_r,
    transverse_longitudinal_rates,
)
from spinbath.states import (
    InvalidStateError,
    KET_SINGLET,
    decoherence_measure,
    make_named_state,
    state_from_vector,
    state_to_density,
    validate_state,
)


def system(k_a=1.0, k_b=1.0, j=0.0, n=4) -> CommonBathSystem:
    return CommonBathSystem(k_a, k_b, j, unpolarized_exact(n))


class TestSectorSpectrum:
    def test_symmetric_mixed_levels(self):
        spec = sector_spectrum(system(1.0, 1.0, 3.0), 1.5)
        # ordered pair {J - K, 0} with no mixing
        assert spec.level_mix_upper == pytest.approx(2.0)
        assert spec.level_mix_lower == pytest.approx(0.0)
        assert spec.mixing_sin == 0.0

    def test_symmetric_below_exchange(self):
        spec = sector_spectrum(system(1.0, 1.0, 0.2), 1.0)
        assert spec.level_mix_upper == pytest.approx(0.0)
        assert spec.level_mix_lower == pytest.approx(-0.8)

    def test_triplet_levels_no_exchange(self):
        spec = sector_spectrum(system(1.0, 1.0, 0.0), 1.0)
        assert spec.level_f_plus == pytest.approx(1.0)
        assert spec.level_f_minus == pytest.approx(-2.0)

    def test_mixed_block_against_dense_diagonalization(self):
        sys = system(1.0, 0.5, 2.0)
        i = 1.0
        spec = sector_spectrum(sys, i)
        diag = sys.j - sys.k_mean
        off = math.sqrt(i * (i + 1)) * (sys.k_a - sys.k_b) / 2
        block = np.array([[diag, off], [off, 0.0]])
        vals = np.sort(np.linalg.eigvalsh(block))
        assert vals[0] == pytest.approx(spec.level_mix_lower, abs=1e-12)
        assert vals[1] == pytest.approx(spec.level_mix_upper, abs=1e-12)

    def test_mixing_normalization(self):
        for i in (0.5, 1.0, 3.5):
            spec = sector_spectrum(system(1.3, 0.2, 0.7), i)
            assert spec.mixing_cos**2 + spec.mixing_sin**2 == pytest.approx(1.0, abs=1e-12)

    def test_full_sector_spectrum_matches_levels(self):
        # dense sector eigenvalues (shifted to the singlet reference) are the
        # four analytic levels with the right multiplicities
        sys = system(1.0, 0.4, 1.5)
        i = 1.5
        spec = sector_spectrum(sys, i)
        h = sector_hamiltonian(sys, i).real
        vals = np.linalg.eigvalsh(h) + 0.75 * sys.j
        expect = np.concatenate(
            [
                np.full(int(2 * (i + 1) + 1), spec.level_f_plus),
                np.full(int(2 * (i - 1) + 1), spec.level_f_minus),
                np.full(int(2 * i + 1), spec.level_mix_upper),
                np.full(int(2 * i + 1), spec.level_mix_lower),
            ]
        )
        assert np.allclose(np.sort(vals), np.sort(expect), atol=1e-12)


class TestSectorPropagatorCoefficients:
    def test_time_zero(self):
        c = sector_a_coefficients(system(1.0, 0.3, 2.0), 1.5, 0.0)
        assert c.amp_singlet == pytest.approx(1.0)
        assert c.trip_const == pytest.approx(1.0)
        for val in (c.mix_from_singlet, c.trip_linear, c.trip_quadratic,
                    c.mix_from_triplet, c.cross_from_triplet):
            assert abs(val) < 1e-12

    def test_symmetric_case_no_mixing(self):
        for t in (0.4, 1.9):
            c = sector_a_coefficients(system(1.0, 1.0, 5.0), 2.0, t)
            assert c.amp_singlet == pytest.approx(1.0, abs=1e-12)
            assert abs(c.mix_from_singlet) < 1e-14
            assert abs(c.mix_from_triplet) < 1e-14
            assert abs(c.cross_from_triplet) < 1e-14

    @pytest.mark.parametrize("i", [0.5, 1.5, 3.0])
    @pytest.mark.parametrize("t", [0.7, 2.3])
    def test_rebuild_matches_dense_exponential(self, i, t):
        sys = system(1.0, 0.5, 2.0)
        u = rebuild_sector_propagator(sys, i, t)
        h = sector_hamiltonian(sys, i).real
        dim = h.shape[0]
        shifted = h + 0.75 * sys.j * np.eye(dim)  # relative to the singlet level
        vals, vecs = np.linalg.eigh(shifted)
        u_dense = (vecs * np.exp(-1j * vals * t)) @ vecs.T
        assert np.abs(u - u_dense).max() < 1e-10
        assert np.abs(u @ u.conj().T - np.eye(dim)).max() < 1e-10

    def test_spin_zero_sector_is_pure_phase(self):
        c = sector_a_coefficients(system(1.0, 0.2, 3.0), 0.0, 1.1)
        assert c.amp_singlet == pytest.approx(1.0)
        assert abs(c.trip_const - np.exp(-3.0j * 1.1)) < 1e-12
        assert abs(c.mix_from_singlet) == 0.0


class TestCGTables:
    @pytest.mark.parametrize("i", [0.5, 1.0, 2.5, 7.0])
    def test_completeness(self, i):
        tables = _cg_tables(i)
        # for each (mu, m_tot) with a valid bath projection the F-sum of
        # squared coefficients is 1
        for mu_row, mu in enumerate((1.0, 0.0, -1.0)):
            for k, mt in enumerate(tables.m_tot):
                if abs(mt - mu) <= i + 1e-9:
                    total = float(np.sum(tables.c[:, mu_row, k] ** 2))
                    assert total == pytest.approx(1.0, abs=1e-10)

    @pytest.mark.parametrize("i", [0.5, 1.0, 3.5])
    def test_singlet_triplet_matrix_element(self, i):
        # <T, F=I, m|(S_A - S_B).I|singlet, m> = -sqrt(I(I+1)) for every m in
        # the ladder-consistent basis; the closed forms rely on it
        ops = sector_operators(i)
        tables = _cg_tables(i)
        d = int(round(2 * i)) + 1
        y_op = ops["y"]
        for m in (i, 0.5 * (int(2 * i) % 2), -i + 1 if i >= 1 else i):
            col = int(round(i - m))
            singlet = np.zeros(4 * d, dtype=complex)
            singlet[1 * d + col] = 1 / math.sqrt(2)
            singlet[2 * d + col] = -1 / math.sqrt(2)
            k = int(round((i + 1.0) - m))
            triplet = np.zeros(4 * d, dtype=complex)
            # assemble |T, F=I, m> from the mu components
            for mu_row, mu in enumerate((1.0, 0.0, -1.0)):
                mi = m - mu
                if abs(mi) > i + 1e-9:
                    continue
                coeff = tables.c[1, mu_row, k]
                bcol = int(round(i - mi))
                if mu == 1.0:
                    triplet[0 * d + bcol] += coeff
                elif mu == 0.0:
                    triplet[1 * d + bcol] += coeff / math.sqrt(2)
                    triplet[2 * d + bcol] += coeff / math.sqrt(2)
                else:
                    triplet[3 * d + bcol] += coeff
            val = triplet.conj() @ (y_op @ singlet)
            assert val.real == pytest.approx(-math.sqrt(i * (i + 1)), abs=1e-10)
            assert abs(val.imag) < 1e-12


class TestSymmetricEvolution:
    def test_map_coefficients_at_time_zero(self):
        coeffs = SymmetricEvolver(system(j=2.0, n=4)).map_coefficients([0.0])
        assert coeffs.vec_direct[0] == pytest.approx(1.0, abs=1e-12)
        assert coeffs.tensor_direct[0] == pytest.approx(1.0, abs=1e-12)
        for arr in (coeffs.vec_exchange, coeffs.vec_from_tensor,
                    coeffs.tensor_transpose, coeffs.tensor_trace, coeffs.tensor_from_vec):
            assert abs(arr[0]) < 1e-12

    def test_structural_relations(self):
        coeffs = SymmetricEvolver(system(j=3.0, n=5)).map_coefficients(np.linspace(0, 4, 50))
        coh = coeffs.st_coherence
        assert np.allclose(coeffs.vec_direct - coeffs.vec_exchange, coh.real, atol=1e-12)
        assert np.allclose(coeffs.tensor_direct - coeffs.tensor_transpose, coh.real, atol=1e-12)
        assert np.allclose(
            coeffs.tensor_trace,
            (1 - coeffs.tensor_direct - coeffs.tensor_transpose) / 3,
            atol=1e-12,
        )
        assert np.allclose(coeffs.vec_from_tensor, coh.imag / 2, atol=1e-12)
        assert np.allclose(coeffs.tensor_from_vec, -coh.imag / 2, atol=1e-12)

    def test_singlet_is_stationary(self):
        states = SymmetricEvolver(system(j=4.0, n=4)).evolve(
            make_named_state("singlet"), np.linspace(0, 5, 8)
        )
        for s in states:
            assert np.allclose(s.pi, -np.eye(3), atol=1e-12)
            assert np.allclose(s.p_a, 0.0, atol=1e-12)

    def test_werner_is_stationary(self):
        states = SymmetricEvolver(system(j=2.5, n=4)).evolve(
            make_named_state("werner", p=0.7), np.linspace(0, 5, 6)
        )
        for s in states:
            assert np.allclose(s.pi, -0.7 * np.eye(3), atol=1e-12)

    def test_product_state_structure(self):
        # initial |ud>: P^z_A(t) = -P^z_B(t), pi_xy = -pi_yx = 2 * tensor_from_vec
        sys = system(j=2.0, n=4)
        times = np.linspace(0.1, 3, 11)
        coeffs = SymmetricEvolver(sys).map_coefficients(times)
        states = SymmetricEvolver(sys).evolve(make_named_state("up_down"), times)
        for k, s in enumerate(states):
            assert s.p_a[2] == pytest.approx(
                coeffs.vec_direct[k] - coeffs.vec_exchange[k], abs=1e-12
            )
            assert s.p_b[2] == pytest.approx(-s.p_a[2], abs=1e-12)
            assert s.pi[0, 1] == pytest.approx(2 * coeffs.tensor_from_vec[k], abs=1e-12)
            assert s.pi[1, 0] == pytest.approx(-s.pi[0, 1], abs=1e-12)
            assert s.pi[0, 0] == pytest.approx(s.pi[1, 1], abs=1e-12)

    def test_matches_dense_on_random_states(self):
        rng = np.random.default_rng(11)
        sys = system(k_a=0.9, k_b=0.9, j=1.7, n=4)
        closed = SymmetricEvolver(sys)
        dense = SectorExactEvolver(sys)
        for _ in range(4):
            psi = rng.normal(size=4) + 1j * rng.normal(size=4)
            s0 = state_from_vector(psi)
            for t in (0.6, 2.9):
                a = closed.evolve(s0, [t])[0]
                b = dense.evolve(s0, [t])[0]
                assert np.abs(a.p_a - b.p_a).max() < 1e-12
                assert np.abs(a.p_b - b.p_b).max() < 1e-12
                assert np.abs(a.pi - b.pi).max() < 1e-12

    def test_mixedness_is_exchange_independent_for_equal_couplings(self):
        # the exchange term commutes with the symmetric coupling, acting as a
        # pair-local unitary that cannot change Tr rho^2
        s0 = make_named_state("r_state", r=0.4)
        times = np.linspace(0, 4, 25)
        d_curves = []
        for j in (0.0, 7.0):
            states = SymmetricEvolver(system(j=j, n=5)).evolve(s0, times)
            d_curves.append([decoherence_measure(s) for s in states])
        assert np.allclose(d_curves[0], d_curves[1], atol=1e-12)

    def test_rejects_asymmetric_couplings(self):
        with pytest.raises(AssumptionError):
            SymmetricEvolver(system(1.0, 0.5, 1.0))
        with pytest.raises(AssumptionError):
            evolve_symmetric(system(1.0, 0.5, 1.0), make_named_state("singlet"), 1.0)

    def test_outputs_stay_physical(self):
        states = SymmetricEvolver(system(j=3.0, n=4)).evolve(
            make_named_state("triplet0"), np.linspace(0, 6, 13)
        )
        for s in states:
            assert validate_state(s, tol=1e-10).physical


class TestAsymmetricEvolution:
    def test_reduces_to_symmetric(self):
        sys = system(k_a=1.1, k_b=1.1, j=2.3, n=3)
        s0 = make_named_state("r_state", r=0.3)
        for t in (0.5, 1.8):
            a = evolve_symmetric(sys, s0, t)
            b = evolve_asymmetric(sys, s0, t)
            assert np.abs(a.pi - b.pi).max() < 1e-12
            assert np.abs(a.p_a - b.p_a).max() < 1e-12

    @pytest.mark.parametrize("name", ["singlet", "triplet0", "bell_t1", "bell_t2"])
    def test_bell_states_stay_bell_diagonal(self, name):
        sys = system(k_a=1.0, k_b=0.4, j=1.5, n=4)
        evolver = SectorExactEvolver(sys)
        states = evolver.evolve(make_named_state(name), [0.7, 2.1])
        bells = [
            np.array([0, 1, -1, 0]) / math.sqrt(2),
            np.array([0, 1, 1, 0]) / math.sqrt(2),
            np.array([1, 0, 0, 1]) / math.sqrt(2),
            np.array([1, 0, 0, -1]) / math.sqrt(2),
        ]
        for s in states:
            rho = state_to_density(s)
            in_bell = np.array([[b1 @ rho @ b2 for b2 in bells] for b1 in bells])
            off = in_bell - np.diag(np.diag(in_bell))
            assert np.abs(off).max() < 1e-12

    def test_werner_invariant_for_equal_couplings(self):
        sys = system(k_a=0.8, k_b=0.8, j=3.0, n=3)
        s0 = make_named_state("werner", p=0.55)
        for s in SectorExactEvolver(sys).evolve(s0, [0.9, 2.7]):
            assert np.abs(s.pi - s0.pi).max() < 1e-12
            assert np.abs(s.p_a).max() < 1e-12


class TestBellMixEvolution:
    def test_initial_coefficients(self):
        for r in (1.0, 0.5, -0.7):
            bell = bell_mix_evolution(system(1.0, 0.4, 2.0, n=3), r, [0.0])
            norm = 2 * (1 + r**2)
            assert bell.singlet_pop[0] == pytest.approx((1 + r) ** 2 / norm, abs=1e-12)
            assert bell.triplet0_pop[0] == pytest.approx((1 - r) ** 2 / norm, abs=1e-12)
            assert bell.st_coherence[0] == pytest.approx(
                (1 + r) * (1 - r) / norm, abs=1e-12
            )
            assert bell.t1t2_pop[0] == pytest.approx(0.0, abs=1e-14)

    def test_trace_identity(self):
        bell = bell_mix_evolution(
            system(1.3, 0.5, 4.0, n=5), 0.35, np.linspace(0, 5, 60)
        )
        total = bell.singlet_pop + bell.triplet0_pop + 2 * bell.t1t2_pop
        assert np.allclose(total, 1.0, atol=1e-12)

    @pytest.mark.parametrize("r", [1.0, 0.5, -0.5])
    @pytest.mark.parametrize("j", [0.0, 2.0])
    def test_matches_dense_evolution(self, r, j):
        sys = system(1.0, 0.4, j, n=4)
        times = np.linspace(0, 3, 7)
        bell = bell_mix_evolution(sys, r, times)
        dense = SectorExactEvolver(sys).evolve(make_named_state("r_state", r=r), times)
        for k, ref in enumerate(dense):
            s = bell.state(k)
            assert np.abs(s.p_a - ref.p_a).max() < 1e-12
            assert np.abs(s.p_b - ref.p_b).max() < 1e-12
            assert np.abs(s.pi - ref.pi).max() < 1e-12

    def test_strong_exchange_protects_near_singlet(self):
        bath = gaussian_approx(100, "narrow")
        times = np.linspace(0, 10, 300)
        d = {}
        for r in (0.5, -0.5):
            for j in (0.0, 20.0):
                sys = CommonBathSystem(1.2, 0.8, j, bath)
                d[(r, j)] = bell_mix_evolution(sys, r, times).mixedness().max()
        # the near-singlet state is strongly protected by large exchange,
        # the near-triplet state is not
        assert d[(0.5, 20.0)] < 0.5 * d[(0.5, 0.0)]
        assert abs(d[(-0.5, 20.0)] - d[(-0.5, 0.0)]) < 0.4 * d[(-0.5, 0.0)]


class TestSingletSurvival:
    def test_symmetric_couplings_no_decay(self):
        c1 = singlet_survival(system(1.0, 1.0, 5.0, n=4), np.linspace(0, 8, 30))
        assert np.allclose(c1, 1.0, atol=1e-14)

    def test_starts_at_one(self):
        c1 = singlet_survival(system(1.0, 0.3, 2.0, n=4), [0.0])
        assert c1[0] == pytest.approx(1.0, abs=1e-14)

    def test_matches_dense_singlet_population(self):
        sys = CommonBathSystem(1.0, 0.4, 3.0, unpolarized_exact(6))
        times = np.linspace(0, 4, 9)
        c1 = singlet_survival(sys, times)
        dense = SectorExactEvolver(sys).evolve(make_named_state("singlet"), times)
        for k, s in enumerate(dense):
            rho = state_to_density(s)
            pop = (KET_SINGLET.conj() @ rho @ KET_SINGLET).real
            assert abs(c1[k] - pop) < 1e-10

    def test_mixedness_from_survival(self):
        # the evolved state is c1 singlet + equal triplet admixture
        sys = CommonBathSystem(1.0, 0.4, 3.0, unpolarized_exact(4))
        times = np.linspace(0, 4, 9)
        c1 = singlet_survival(sys, times)
        dense = SectorExactEvolver(sys).evolve(make_named_state("singlet"), times)
        d_direct = np.array([decoherence_measure(s) for s in dense])
        assert np.allclose(singlet_mixedness(c1), d_direct, atol=1e-10)

    def test_large_j_form_within_envelope(self):
        bath = gaussian_approx(100, "narrow")
        sys = CommonBathSystem(1.2, 0.8, 100.0, bath)
        beta = (sys.k_a - sys.k_b) * 10 / (2 * sys.j)
        times = np.linspace(0, 50 / sys.j, 600)
        exact = singlet_survival(sys, times)
        # J/K_mean = 100 still sits below ten Overhauser scales here, so the
        # regime warning fires even though the envelope bound holds
        with pytest.warns(UserWarning, match="Overhauser"):
            approx = singlet_survival_large_j(sys, times)
        assert np.abs(approx - exact).max() <= 10 * beta**2
        assert approx[0] == pytest.approx(1.0)

    def test_large_j_symmetric_is_unity(self):
        sys = CommonBathSystem(1.0, 1.0, 500.0, gaussian_approx(50, "narrow"))
        assert np.allclose(singlet_survival_large_j(sys, [0.0, 0.2, 1.0]), 1.0)

    def test_out_of_regime_warns(self):
        sys = CommonBathSystem(1.0, 0.5, 2.0, gaussian_approx(50, "narrow"))
        with pytest.warns(UserWarning, match="Overhauser"):
            singlet_survival_large_j(sys, [0.1])

    def test_zero_exchange_rejected(self):
        with pytest.raises(AssumptionError):
            singlet_survival_large_j(system(1.0, 0.5, 0.0), [0.1])


class TestShortTimeScales:
    def test_tensor_invariant_values(self):
        assert tensor_invariant_r(make_named_state("triplet0")) == pytest.approx(2.0)
        assert tensor_invariant_r(make_named_state("bell_t1")) == pytest.approx(2.0)
        assert tensor_invariant_r(make_named_state("singlet")) == pytest.approx(-6.0)
        assert tensor_invariant_r(make_named_state("up_down")) == pytest.approx(0.0)

    def test_singlet_rate(self):
        # (1/2) <I(I+1)> (K_A - K_B)^2; infinite time for equal couplings
        sys = system(1.0, 0.4, 7.0, n=4)
        m2 = sys.bath.casimir_moment()
        rate = decoherence_rate_sq(make_named_state("singlet"), sys)
        assert rate == pytest.approx(0.5 * m2 * 0.36, abs=1e-12)
        assert decoherence_rate_sq(make_named_state("singlet"), system(1.0, 1.0)) <= 1e-14
        assert short_time_decoherence_time(make_named_state("singlet"), system(1.0, 1.0)) == math.inf

    def test_separable_rate_splits_into_single_qubit_rates(self):
        sys = system(1.1, 0.6, 3.0, n=5)
        m2 = sys.bath.casimir_moment()
        rate = decoherence_rate_sq(make_named_state("up_down"), sys)
        rate_a = sys.k_a**2 * m2 / 3
        rate_b = sys.k_b**2 * m2 / 3
        assert rate == pytest.approx(rate_a + rate_b, abs=1e-12)

    def test_triplet_rate(self):
        sys = system(1.0, 0.5, 2.0, n=4)
        m2 = sys.bath.casimir_moment()
        rate = decoherence_rate_sq(make_named_state("triplet0"), sys)
        expected = 0.5 * m2 * (1.0 + 0.25 + 2 / 3 * 0.5)
        assert rate == pytest.approx(expected, abs=1e-12)

    def test_rejects_mixed_state(self):
        with pytest.raises(InvalidStateError):
            decoherence_rate_sq(make_named_state("werner", p=0.5), system())

    def test_exchange_does_not_enter(self):
        s0 = make_named_state("r_state", r=0.5)
        rates = {j: decoherence_rate_sq(s0, system(1.0, 0.4, j, n=4)) for j in (0, 10, 100)}
        assert len(set(rates.values())) == 1


class TestTransverseLongitudinalRates:
    def test_unit_component_moment(self):
        # exact 4-spin bath has <I(I+1)> = 3, i.e. unit per-component moment
        rates = transverse_longitudinal_rates(system(1.0, 1.0, 2.0, n=4))
        assert rates == (pytest.approx(2.0), pytest.approx(4.0))

    def test_ratio_always_two(self):
        rates = transverse_longitudinal_rates(
            CommonBathSystem(0.7, 0.7, 9.0, gaussian_approx(30, "narrow"))
        )
        assert rates[1] / rates[0] == pytest.approx(2.0)

    def test_requires_equal_couplings(self):
        with pytest.raises(AssumptionError):
            transverse_longitudinal_rates(system(1.0, 0.9, 1.0))

    def test_quadratic_fit_of_exact_evolution(self):
        sys = system(1.0, 1.0, 2.0, n=4)
        rate_xx, rate_zz = transverse_longitudinal_rates(sys)
        times = np.linspace(0, 0.02, 9)[1:]
        states = SymmetricEvolver(sys).evolve(make_named_state("triplet0"), times)
        pi_xx = np.array([s.pi[0, 0] for s in states])
        pi_zz = np.array([s.pi[2, 2] for s in states])
        x = times**2
        fit_xx = float(x @ (1 - pi_xx)) / float(x @ x)       # pi_xx ~ 1 - r t^2
        fit_zz = float(x @ (pi_zz + 1)) / float(x @ x)       # pi_zz ~ -1 + r t^2
        assert fit_xx == pytest.approx(rate_xx, rel=0.01)
        assert fit_zz == pytest.approx(rate_zz, rel=0.01)


class TestSectorAgainstOracle:
    def test_single_sector_matches_projected_oracle(self):
        # a delta distribution on one sector equals the oracle started in the
        # corresponding projected bath state
        from spinbath.oracle import CouplingParams, build, evolve_reduced

        sys = CommonBathSystem(1.0, 0.4, 1.5, delta_distribution(1.0))
        full = build("common", 4, CouplingParams(1.0, 0.4, 1.5))
        s0 = make_named_state("r_state", r=0.5)
        evolver = SectorExactEvolver(sys)
        for t in (0.6, 1.9):
            a = evolver.evolve(s0, [t])[0]
            b = evolve_reduced(full, s0, ("sector", 1.0), [t])[0]
            assert np.abs(a.pi - b.pi).max() < 1e-10
            assert np.abs(a.p_a - b.p_a).max() < 1e-10
