"""Tests for phase rates, signal/noise and the t-scaling study."""

from __future__ import annotations

import math

import numpy as np
import pytest

from tdesign_rotors import (
    COULOMB_K,
    ELEMENTARY_CHARGE,
    HBAR,
    OptimizerConfig,
    OrientationPair,
    PhaseRate,
    PhaseScenario,
    RigidBody,
    Rotation,
    ScalingRow,
    SolverError,
    build_body,
    catalog_design,
    default_pair,
    degree_rate,
    phase_rate,
    point_source,
    random_rotation,
    scaling_study,
    signal_noise,
)
from tdesign_rotors.phases import NoisePair, SignalNoise, energy_to_hz

E = ELEMENTARY_CHARGE


@pytest.fixture
def signal_src():
    return point_source((0.0, 0.0, 1e-5), E, "charge")


@pytest.fixture
def noise_src():
    return point_source((0.0, 0.0, -2e-4), 1e3 * E, "charge")


def _charged_scenario(signal_src, noise_src, **kwargs) -> PhaseScenario:
    kwargs.setdefault("design_loader", catalog_design)
    return PhaseScenario(2e-6, E, "charge", signal_src, noise_src, **kwargs)


class TestPhaseRate:
    def test_hz_convention(self):
        assert energy_to_hz(HBAR * 2.0 * math.pi) == pytest.approx(1.0)
        rate = PhaseRate.from_energy(-HBAR)
        assert rate.rad_s == pytest.approx(-1.0)
        assert rate.magnitude_hz == pytest.approx(1.0 / (2.0 * math.pi))

    def test_swapping_branches_flips_sign(self, charged_tetra, signal_src):
        pair = OrientationPair(random_rotation(1), random_rotation(2))
        forward = phase_rate(charged_tetra, pair, signal_src)
        backward = phase_rate(charged_tetra, pair.swapped(), signal_src)
        assert forward.rad_s == -backward.rad_s

    def test_truncated_matches_exact(self, charged_tetra, noise_src):
        pair = OrientationPair(random_rotation(3), random_rotation(4))
        exact = phase_rate(charged_tetra, pair, noise_src)
        truncated = phase_rate(charged_tetra, pair, noise_src, order=8)
        assert truncated.rad_s == pytest.approx(exact.rad_s, rel=1e-6)

    def test_same_orientation_is_zero(self, charged_tetra, signal_src):
        r = random_rotation(5)
        assert phase_rate(charged_tetra, OrientationPair(r, r), signal_src).rad_s == 0.0

    @pytest.mark.parametrize("t", [1, 2, 3, 5])
    def test_degrees_up_to_t_cancel(self, t, noise_src):
        design = catalog_design(t)
        body = build_body(design, 2e-6, E, "charge")
        pair = OrientationPair(random_rotation(10), random_rotation(11))
        # size of a generic degree-l term for this body and source
        monopole = design.n_points * E * COULOMB_K * 1e3 * E / 2e-4 / HBAR
        scale = [monopole * 0.01**l for l in range(t + 2)]
        assert abs(degree_rate(body, pair, noise_src, t + 1).rad_s) > 1e-6 * scale[t + 1]
        for l in range(1, t + 1):
            assert abs(degree_rate(body, pair, noise_src, l).rad_s) < 1e-10 * scale[l]

    def test_design_rate_far_below_single_charge(self, icosahedron, noise_src):
        body = build_body(icosahedron, 2e-6, E, "charge")
        single = RigidBody([[2e-6, 0.0, 0.0]], [12 * E], "charge")
        pair = OrientationPair(random_rotation(6), random_rotation(7))
        design_rate = phase_rate(body, pair, noise_src).magnitude_hz
        assert design_rate < 1e-8 * phase_rate(single, pair, noise_src).magnitude_hz


class TestRateInvariants:
    def test_linear_in_noise_strength(self, charged_tetra, signal_src, noise_src):
        pair = OrientationPair(random_rotation(20), random_rotation(21))
        once = signal_noise(charged_tetra, pair, signal_src, noise_src)
        twice = signal_noise(charged_tetra, pair, signal_src, noise_src.scaled(2.0))
        assert twice.delta_noise.rad_s == 2.0 * once.delta_noise.rad_s
        assert twice.delta_signal == once.delta_signal

    @pytest.mark.parametrize("seed", [0, 1, 2])
    def test_global_rotation_covariance(self, charged_tetra, signal_src, seed):
        q = random_rotation(100 + seed)
        pair = OrientationPair(random_rotation(seed), random_rotation(seed + 50))
        base = phase_rate(charged_tetra, pair, signal_src).rad_s
        turned = phase_rate(
            charged_tetra, OrientationPair(q * pair.r1, q * pair.r2), signal_src.rotated(q)
        ).rad_s
        # one element in the same field sets the rounding scale
        scale = COULOMB_K * E * E / 1e-5 / HBAR
        assert abs(turned - base) <= 1e-12 * scale
        assert turned == pytest.approx(base, rel=1e-9)

    @pytest.mark.parametrize("t", [1, 2, 3, 5])
    def test_far_rate_is_first_unprotected_degree(self, t, noise_src):
        # L / R = 100
        body = build_body(catalog_design(t), 2e-6, E, "charge")
        pair = OrientationPair(random_rotation(30), random_rotation(31))
        exact = phase_rate(body, pair, noise_src).rad_s
        leading = degree_rate(body, pair, noise_src, t + 1).rad_s
        assert 0.5 <= exact / leading <= 2.0

    @pytest.mark.parametrize("t", [1, 2, 3, 5])
    def test_doubling_distance_divides_rate(self, t, noise_src):
        body = build_body(catalog_design(t), 2e-6, E, "charge")
        pair = OrientationPair(random_rotation(40), random_rotation(41))
        near = phase_rate(body, pair, noise_src).rad_s
        far_src = point_source((0.0, 0.0, -4e-4), 1e3 * E, "charge")
        far = phase_rate(body, pair, far_src).rad_s
        # the degree-l term falls as L^-(l + 1) and l = t + 1 leads
        assert near / far == pytest.approx(2.0 ** (t + 2), rel=0.2)


class TestDefaultPair:
    def test_quarter_turn_from_identity(self, charged_tetra):
        pair = default_pair(charged_tetra)
        assert pair.r1 == Rotation.identity()
        assert pair.r2.angle() == pytest.approx(math.pi / 2)

    def test_axis_normal_to_moment(self, charged_tetra):
        e = charged_tetra.largest_moment_direction()
        axis = default_pair(charged_tetra).r2.as_rotvec()
        assert abs(axis @ e) < 1e-12

    def test_degenerate_direction(self):
        d = np.array([1.0, 2.0, 3.0]) / math.sqrt(14.0)
        body = RigidBody([d], [1.0], "charge")
        axis = default_pair(body).r2.as_rotvec()
        assert np.linalg.norm(axis) == pytest.approx(math.pi / 2)
        assert abs(axis @ d) < 1e-12


class TestSignalNoise:
    def test_ratio(self):
        sn = SignalNoise(PhaseRate(-4.0), PhaseRate(2.0))
        assert sn.ratio == 2.0
        assert not sn.infinite_ratio

    def test_zero_noise_is_infinite(self):
        sn = SignalNoise(PhaseRate(1.0), PhaseRate(0.0))
        assert sn.ratio == math.inf
        assert sn.infinite_ratio

    def test_nearer_source_dominates(self, charged_tetra, signal_src, noise_src):
        sn = signal_noise(charged_tetra, default_pair(charged_tetra), signal_src, noise_src)
        assert sn.ratio > 1.0


class TestScalingStudy:
    def test_rows_sorted_and_deduplicated(self, signal_src, noise_src):
        scenario = _charged_scenario(signal_src, noise_src)
        rows = scaling_study(scenario, [3, 1, 3, 2], optimize=False)
        assert [r.t for r in rows] == [1, 2, 3]
        assert [r.n_points for r in rows] == [2, 4, 6]
        for r in rows:
            assert r.ratio == pytest.approx(r.delta_signal / r.delta_noise)
            assert r.e_ent is None

    def test_missing_design_gives_missing_row(self, signal_src, noise_src):
        rows = scaling_study(_charged_scenario(signal_src, noise_src), [2, 4], optimize=False)
        assert not rows[0].missing
        assert rows[1] == ScalingRow.missing_row(4)
        assert rows[1].missing

    def test_solver_failure_is_skipped(self, signal_src, noise_src):
        def loader(t):
            msg = "no design"
            raise SolverError(msg, 1.0)

        rows = scaling_study(
            _charged_scenario(signal_src, noise_src, design_loader=loader), [6], optimize=False
        )
        assert rows == [ScalingRow.missing_row(6)]

    def test_empty_order_list(self, signal_src, noise_src):
        with pytest.raises(ValueError, match="at least one"):
            scaling_study(_charged_scenario(signal_src, noise_src), [])

    def test_worst_noise_pair_not_below_signal_pair(self, signal_src, noise_src):
        cfg = OptimizerConfig(restarts=1, max_iters=200)
        base = _charged_scenario(signal_src, noise_src, optimizer=cfg)
        worst = _charged_scenario(
            signal_src, noise_src, optimizer=cfg, noise_pair=NoisePair.WORST
        )
        [a] = scaling_study(base, [2])
        [b] = scaling_study(worst, [2])
        assert a.delta_signal == b.delta_signal
        assert b.delta_noise >= a.delta_noise


@pytest.mark.slow
class TestChargedScenarioScaling:
    T_LIST = [1, 2, 3, 5]

    @pytest.fixture
    def rows(self, signal_src, noise_src):
        scenario = _charged_scenario(
            signal_src, noise_src, optimizer=OptimizerConfig(restarts=8, seed=7)
        )
        return scaling_study(scenario, self.T_LIST)

    def test_noise_follows_power_law(self, rows):
        t = np.array([r.t for r in rows], dtype=float)
        slope = np.polyfit(t, np.log([r.delta_noise for r in rows]), 1)[0]
        assert slope == pytest.approx(math.log(2e-6 / 2e-4), rel=0.15)

    def test_ratio_grows_about_twentyfold_per_order(self, rows):
        t = np.array([r.t for r in rows], dtype=float)
        slope = np.polyfit(t, np.log([r.ratio for r in rows]), 1)[0]
        assert 10.0 <= math.exp(slope) <= 40.0
        ratios = [r.ratio for r in rows]
        assert ratios == sorted(ratios)
