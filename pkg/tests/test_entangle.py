"""Tests for two-body branch energies, phase states and the case studies."""

from __future__ import annotations

import math

import numpy as np
import pytest

from tdesign_rotors import (
    ELEMENTARY_CHARGE,
    GRAVITATIONAL_G,
    HBAR,
    GravityParams,
    OptimizerConfig,
    OrientationPair,
    OverlapError,
    PairEnergies,
    PhaseScenario,
    RigidBody,
    Rotation,
    ScenarioReport,
    SolverError,
    TwoBodyState,
    build_body,
    catalog_design,
    composite_body,
    concurrence,
    electrostatic_study,
    entangling_energy,
    evolve,
    gravitational_scenario,
    noise_deltas,
    pair_energies,
    point_source,
    random_rotation,
    wootters_concurrence,
)
from tdesign_rotors.entangle import monopole_energy

E = ELEMENTARY_CHARGE
SEP = (0.0, 0.0, 1e-5)


@pytest.fixture
def generic_pair():
    return OrientationPair(random_rotation(21), random_rotation(22))


class TestPairEnergies:
    def test_entangling_combination(self):
        pe = PairEnergies(8.0, 3.0, 2.0, 5.0)
        assert entangling_energy(pe) == (8.0 - 3.0) + (5.0 - 2.0)

    def test_energy_offset_is_a_gauge(self):
        pe = PairEnergies(8.0, 3.0, 2.0, 5.0)
        shifted = PairEnergies(*(e - 1024.0 for e in pe.as_tuple()))
        assert entangling_energy(shifted) == entangling_energy(pe)

    @pytest.mark.parametrize(
        ("a", "b"), [((0.5, -2.25), (4.0, 1.125)), ((-64.0, 3.0), (0.0, -8.5))]
    )
    def test_separable_shifts_cancel(self, a, b):
        pe = PairEnergies(8.0, 3.0, 2.0, 5.0)
        e11, e12, e21, e22 = pe.as_tuple()
        shifted = PairEnergies(
            e11 + a[0] + b[0], e12 + a[0] + b[1], e21 + a[1] + b[0], e22 + a[1] + b[1]
        )
        assert entangling_energy(shifted) == entangling_energy(pe)
        separable = PairEnergies(a[0] + b[0], a[0] + b[1], a[1] + b[0], a[1] + b[1])
        assert entangling_energy(separable) == 0.0

    def test_swapping_bodies_keeps_e_ent(self, charged_tetra, generic_pair):
        pe = pair_energies(charged_tetra, charged_tetra, generic_pair, generic_pair, SEP)
        assert entangling_energy(pe.bodies_swapped()) == pytest.approx(
            entangling_energy(pe), rel=1e-12
        )

    def test_identical_branches_do_not_entangle(self, charged_tetra):
        r = random_rotation(3)
        same = OrientationPair(r, r)
        pe = pair_energies(charged_tetra, charged_tetra, same, same, SEP)
        assert entangling_energy(pe) == 0.0

    def test_rotation_invariant_partner_is_separable(self, charged_tetra, generic_pair):
        point = RigidBody([[0.0, 0.0, 0.0]], [E], "charge")
        pe = pair_energies(charged_tetra, point, generic_pair, generic_pair, SEP)
        assert pe.e11 == pe.e12
        assert pe.e21 == pe.e22
        assert entangling_energy(pe) == 0.0

    def test_generic_pair_entangles(self, charged_tetra, generic_pair):
        pe = pair_energies(charged_tetra, charged_tetra, generic_pair, generic_pair, SEP)
        assert abs(entangling_energy(pe)) > 0.0

    def test_overlap_rejected(self, charged_tetra, generic_pair):
        with pytest.raises(OverlapError):
            pair_energies(charged_tetra, charged_tetra, generic_pair, generic_pair, (0, 0, 0))

    def test_bare_central_spheres_do_not_entangle(self, tetrahedron, generic_pair):
        body = composite_body(tetrahedron, 10e-6, 1.83e-11)
        central_only = RigidBody(body.positions[:1], body.weights[:1], "mass", body.spheres[:1])
        sep = (0.0, 0.0, 200e-6)
        pe = pair_energies(central_only, central_only, generic_pair, generic_pair, sep)
        assert entangling_energy(pe) == 0.0


class TestEvolve:
    def test_concurrence_grid(self):
        pe = PairEnergies(1.7 * HBAR, 0.4 * HBAR, -0.2 * HBAR, 0.6 * HBAR)
        e_ent = entangling_energy(pe)
        for time in np.linspace(0.0, 25.0, 1000):
            state = evolve(pe, time=time)
            expected = abs(math.sin(e_ent * time / (2.0 * HBAR)))
            assert concurrence(state) == pytest.approx(expected, abs=1e-12)
            assert wootters_concurrence(state.amplitudes) == pytest.approx(expected, abs=1e-12)

    def test_concurrence_period(self):
        pe = PairEnergies(1.7 * HBAR, 0.4 * HBAR, -0.2 * HBAR, 0.6 * HBAR)
        period = 2.0 * math.pi * HBAR / entangling_energy(pe)
        for time in np.linspace(0.0, 5.0, 101):
            now = concurrence(evolve(pe, time=time))
            later = concurrence(evolve(pe, time=time + period))
            assert later == pytest.approx(now, abs=1e-12)

    @pytest.mark.parametrize("k", [1, 2, 5])
    def test_product_state_on_the_lattice(self, k):
        pe = PairEnergies(2.0 * math.pi * HBAR, 0.0, 0.0, 0.0)
        state = evolve(pe, time=float(k))
        assert concurrence(state) == pytest.approx(0.0, abs=1e-12)

    def test_local_terms_do_not_change_entanglement(self, charged_tetra, generic_pair):
        pe = pair_energies(charged_tetra, charged_tetra, generic_pair, generic_pair, SEP)
        noise = point_source((0.0, 0.0, -2e-4), 1e3 * E, "charge")
        deltas = noise_deltas(
            charged_tetra, charged_tetra, generic_pair, generic_pair, noise, SEP
        )
        assert deltas[0] == 0.0
        # about one radian of entangling phase
        time = HBAR / abs(entangling_energy(pe))
        plain = evolve(pe, time=time)
        noisy = evolve(pe, deltas, time=time)
        assert noisy.combined_phase == pytest.approx(plain.combined_phase, rel=1e-9, abs=1e-12)
        assert concurrence(noisy) == pytest.approx(concurrence(plain), abs=1e-9)

    def test_zero_time(self):
        state = evolve(PairEnergies(1.0, 2.0, 3.0, 4.0), time=0.0)
        assert state.phases == (0.0, 0.0, 0.0, 0.0)
        np.testing.assert_allclose(state.amplitudes, 0.5)

    def test_negative_time(self):
        with pytest.raises(ValueError, match="time"):
            evolve(PairEnergies(0.0, 0.0, 0.0, 0.0), time=-1.0)

    def test_delta_count(self):
        with pytest.raises(ValueError, match="4 branch deltas"):
            evolve(PairEnergies(0.0, 0.0, 0.0, 0.0), (0.0, 0.0))


class TestWootters:
    def test_product_and_bell(self):
        assert wootters_concurrence([1.0, 0.0, 0.0, 0.0]) == 0.0
        bell = np.array([1.0, 0.0, 0.0, 1.0]) / math.sqrt(2.0)
        assert wootters_concurrence(bell) == pytest.approx(1.0)

    def test_density_matrix(self):
        state = TwoBodyState((0.0, 0.0, 0.0, math.pi / 2))
        psi = state.amplitudes
        rho = np.outer(psi, psi.conj())
        assert wootters_concurrence(rho) == pytest.approx(concurrence(state), abs=1e-7)

    def test_maximally_mixed(self):
        assert wootters_concurrence(np.eye(4) / 4.0) == pytest.approx(0.0, abs=1e-12)

    def test_bad_shape(self):
        with pytest.raises(ValueError, match="two-qubit"):
            wootters_concurrence(np.ones(3))


def _report(e_ent_hz, noise_hz, time_s, signal_hz=None):
    pair = OrientationPair(Rotation.identity(), Rotation.identity())
    return ScenarioReport(1, 2, e_ent_hz, noise_hz, signal_hz, time_s, pair)


class TestScenarioReport:
    def test_robust(self):
        r = _report(1.0, 0.01, 0.25)
        assert r.entangling_phase == pytest.approx(math.pi / 2)
        assert r.concurrence == pytest.approx(math.sin(math.pi / 4))
        assert r.robust

    def test_full_turn_is_not_entangling(self):
        assert not _report(1.0, 0.0, 1.0).robust

    def test_noise_too_large(self):
        assert not _report(1.0, 0.2, 0.25).robust

    def test_to_row(self):
        row = _report(3.0, 0.5, 1.0, signal_hz=2.0).to_row()
        assert row.ratio == 4.0
        assert row.e_ent == 3.0
        assert _report(3.0, 0.5, 1.0).to_row().ratio is None
        assert _report(3.0, 0.0, 1.0, signal_hz=2.0).to_row().ratio == math.inf


class TestGravityParams:
    def test_noise_source_on_axis(self):
        src = GravityParams().noise_source()
        np.testing.assert_allclose(src.positions, [[0.0, 0.0, 20.0]])
        assert src.total_strength == 100.0

    def test_monopole_energy(self):
        expected = -GRAVITATIONAL_G * 1.83e-11**2 / 200e-6
        assert monopole_energy() == pytest.approx(expected)

    def test_overlapping_bodies_rejected(self, antipodal):
        # central spheres of radius 10 um always collide at 15 um
        params = GravityParams(
            separation=(0.0, 0.0, 15e-6), optimizer=OptimizerConfig(restarts=1, max_iters=100)
        )
        with pytest.raises(OverlapError):
            gravitational_scenario(1, params, design=antipodal)

    def test_close_bodies_with_clear_orientations(self, antipodal):
        # bounding balls (about 20 um) overlap at 30 um but axes off the line of centres clear
        params = GravityParams(
            separation=(0.0, 0.0, 30e-6),
            optimizer=OptimizerConfig(restarts=16, seed=3, max_iters=300),
        )
        report = gravitational_scenario(1, params, design=antipodal)
        assert report.e_ent_hz > 0.0
        body = params.composite.build(antipodal)
        pair_energies(body, body, report.pair, report.pair, params.separation)

    def test_zero_separation_rejected(self):
        with pytest.raises(ValueError, match="non-zero"):
            GravityParams(separation=(0.0, 0.0, 0.0))

    def test_mass_budget_checked(self):
        with pytest.raises(ValueError, match="budget"):
            GravityParams(total_mass=1e-12)


class TestElectrostaticStudy:
    def _scenario(self, loader=catalog_design):
        return PhaseScenario(
            2e-6,
            E,
            "charge",
            point_source((1e-5, 0.0, 0.0), E, "charge"),
            point_source((0.0, 0.0, -2e-4), 1e3 * E, "charge"),
            OptimizerConfig(restarts=1, max_iters=200),
            design_loader=loader,
        )

    def test_reports_in_order_with_missing(self):
        out = electrostatic_study(self._scenario(), [2, 4, 1])
        assert [t for t, _ in out] == [1, 2, 4]
        assert out[2][1] is None
        for _, report in out[:2]:
            assert report.e_ent_hz > 0.0
            assert report.delta_signal_hz is not None

    def test_solver_failure(self):
        def loader(t):
            msg = "nope"
            raise SolverError(msg, 1.0)

        assert electrostatic_study(self._scenario(loader), [3]) == [(3, None)]

    def test_empty(self):
        with pytest.raises(ValueError, match="at least one"):
            electrostatic_study(self._scenario(), [])

    def test_matches_body_built_directly(self):
        [(_, report)] = electrostatic_study(self._scenario(), [2])
        body = build_body(catalog_design(2), 2e-6, E, "charge")
        pe = pair_energies(body, body, report.pair, report.pair, SEP)
        assert report.e_ent_hz == pytest.approx(
            abs(entangling_energy(pe)) / HBAR / (2.0 * math.pi), rel=1e-12
        )


@pytest.mark.slow
class TestGravitationalScenario:
    @pytest.fixture(scope="class")
    def reports(self):
        return {t: gravitational_scenario(t) for t in (1, 3)}

    def test_one_design(self, reports):
        r = reports[1]
        assert 1.6 <= r.e_ent_hz <= 160.0
        assert 0.07 <= r.delta_noise_hz <= 700.0

    def test_three_design(self, reports):
        r = reports[3]
        assert 1e-4 <= r.e_ent_hz <= 1e-2
        assert r.delta_noise_hz <= 1e-9
        assert r.robust

    def test_noise_suppression(self, reports):
        assert reports[1].delta_noise_hz > 1e9 * reports[3].delta_noise_hz
