"""
Copyright © 2026 fringecal developers. All rights reserved.

Redistribution and use in source and binary forms, with or without modification,
are permitted under the terms of the BSD 3-clause license found in LICENSE.txt.
"""

# -*- coding: utf-8 -*-
# @File    : test_distortion_profile.py

import numpy as np
import pytest
from fringecal.phase_demod import PhaseProfile, SMOOTHED, WRAPPED, four_step_phase, unwrap_1d, smooth_cubic
from fringecal.distortion_profile import (DistortionProfile, ModulatedPhase, fit_undistorted_line, modulated_phase,
                                          symmetrize, positive_branch, extend_profile, phase_to_distortion,
                                          half_diagonal, forward_map_is_monotone, build_profile, AVERAGED,
                                          POSITIVE_BRANCH)
from fringecal.exceptions import (ParameterError, ShapeError, InsufficientDataError, OrientationError,
                                  NonMonotoneProfileError)

PRINTED_CUBIC = [-5.8123e-9, 8.7184e-9, 7.5508e-8, -3.9207e-8]
K = 0.3927


def smoothed_profile(values, center_index):
    return PhaseProfile(values, SMOOTHED, center_index)


class TestLineFit:

    def test_exact_line(self):
        x = np.arange(33, dtype=float)
        fit = fit_undistorted_line(smoothed_profile(K * x + 1.0, 16))
        assert fit.k == pytest.approx(K, abs=1e-12)
        assert fit.phi0 == pytest.approx(1.0, abs=1e-12)
        assert fit.f0 == pytest.approx(K / (2 * np.pi), abs=1e-12)
        assert fit.residual_rms < 1e-12

    def test_cubic_perturbation_bias(self):
        # least-squares slope of u^3 over u = -4..4 is sum(u^4) / sum(u^2) = 11.8
        c = 1e-4
        x = np.arange(33, dtype=float)
        fit = fit_undistorted_line(smoothed_profile(K * x + 1.0 + c * (x - 16) ** 3, 16))
        assert fit.k == pytest.approx(K + 11.8 * c, abs=1e-12), \
            f"It should be {K + 11.8 * c} instead it is {fit.k}"

    def test_window_size(self):
        x = np.arange(33, dtype=float)
        c = 1e-4
        fit = fit_undistorted_line(smoothed_profile(K * x + c * (x - 16) ** 3, 16), n_points=3)
        # sum(u^4) / sum(u^2) = 1 over u = -1..1
        assert fit.k == pytest.approx(K + c, abs=1e-12)

    def test_wrong_orientation(self):
        x = np.arange(33, dtype=float)
        with pytest.raises(OrientationError):
            fit_undistorted_line(smoothed_profile(-K * x, 16))

    def test_invalid_window(self):
        x = np.arange(33, dtype=float)
        with pytest.raises(ParameterError):
            fit_undistorted_line(smoothed_profile(K * x, 16), n_points=8)
        with pytest.raises(ParameterError):
            fit_undistorted_line(smoothed_profile(K * x, 16), n_points=1)
        with pytest.raises(ParameterError):
            fit_undistorted_line(smoothed_profile(K * x, 2), n_points=9)

    def test_rejects_wrapped(self):
        with pytest.raises(ParameterError):
            fit_undistorted_line(PhaseProfile(np.zeros(33), WRAPPED, 16))


class TestModulatedPhase:

    def test_line_gives_zero(self):
        x = np.arange(101, dtype=float)
        profile = smoothed_profile(K * x + 0.3, 50)
        delta = modulated_phase(profile, fit_undistorted_line(profile))
        np.testing.assert_allclose(delta, 0, atol=1e-12)

    def test_cubic_residual(self):
        c = 1e-9
        x = np.arange(513, dtype=float)
        u = x - 256
        profile = smoothed_profile(K * x + c * u ** 3, 256)
        delta = modulated_phase(profile, fit_undistorted_line(profile))
        np.testing.assert_allclose(delta, c * u ** 3 - 11.8 * c * u, atol=1e-12)


class TestBranches:

    def test_antisymmetric_kept(self):
        u = np.arange(-50, 51, dtype=float)
        g = 1e-6 * u ** 3 + 0.01 * u
        avg = symmetrize(g, 50)
        assert avg.source == AVERAGED
        np.testing.assert_allclose(avg.values, g[50:], atol=1e-15)

    def test_symmetric_cancels(self):
        u = np.arange(-50, 51, dtype=float)
        avg = symmetrize(1e-4 * u ** 2, 50)
        np.testing.assert_allclose(avg.values, 0, atol=1e-15)

    def test_uneven_sides(self):
        # width 10, center 5: five samples on the left, four on the right
        avg = symmetrize(np.arange(10, dtype=float), 5)
        assert len(avg) == 5
        np.testing.assert_allclose(avg.values, np.arange(5))

    def test_positive_branch(self):
        branch = positive_branch(np.arange(10, dtype=float), 4)
        assert branch.source == POSITIVE_BRANCH
        assert branch.values.tolist() == [4, 5, 6, 7, 8, 9]

    def test_center_on_edge(self):
        with pytest.raises(ParameterError):
            symmetrize(np.zeros(10), 0)
        with pytest.raises(ParameterError):
            positive_branch(np.zeros(10), 9)

    def test_unknown_source(self):
        with pytest.raises(ParameterError):
            ModulatedPhase([0.0], 'negative')


class TestExtension:

    def test_printed_coefficients_at_1000(self):
        value = np.polyval(PRINTED_CUBIC, 1000.0)
        assert value == pytest.approx(-5.803506131207, abs=1e-6), \
            f"It should be -5.8035 instead it is {value}"

    def test_exact_cubic_recovered(self):
        true = np.array([2e-8, -3e-6, 1e-4, 0.0])
        u = np.arange(256, dtype=float)
        coefficients = extend_profile(ModulatedPhase(np.polyval(true, u), AVERAGED), 362.0)
        np.testing.assert_allclose(coefficients[:3], true[:3], rtol=1e-9)
        assert abs(coefficients[3]) < 1e-10

    def test_too_few_samples(self):
        with pytest.raises(InsufficientDataError):
            extend_profile(ModulatedPhase([0.0, 0.1, 0.2], AVERAGED), 100.0)

    def test_r_max_inside_measured_range(self):
        with pytest.raises(ParameterError):
            extend_profile(ModulatedPhase(np.zeros(50), AVERAGED), 20.0)


input_list = [
    # delta_phi coefficients, f0, radius, expected delta_r
    [[0.0], 0.0625, 100.0, 0.0],
    [[2 * np.pi * 0.0625], 0.0625, 100.0, 1.0],
    [[2 * np.pi * 0.1, 0.0], 0.1, 7.0, 7.0],
    [PRINTED_CUBIC, 0.0625, 1000.0, -5.803506131207 / (2 * np.pi * 0.0625)],
]


@pytest.mark.parametrize("coefficients, f0, r, expected", input_list,
                         ids=[f"coefficients={i[0]}, f0={i[1]}, r={i[2]}" for i in input_list])
def test_phase_to_distortion(coefficients, f0, r, expected):
    result = phase_to_distortion(coefficients, f0, r)
    assert result == pytest.approx(expected, abs=1e-9), f"It should be {expected} instead it is {result}"


def test_phase_to_distortion_rejects_zero_frequency():
    with pytest.raises(ParameterError):
        phase_to_distortion([1.0], 0.0, 1.0)


class TestDistortionProfile:

    def test_half_diagonal_full_hd(self):
        # the table runs in whole pixels up to the rounded-up half-diagonal, 1102 px
        profile = DistortionProfile.identity((1920, 1080))
        assert profile.r_max == pytest.approx(1101.4535850411492, abs=1e-9)
        assert profile.table_r[-1] == 1102
        assert abs(profile.r_max - 1102) < 0.55

    def test_printed_cubic_is_monotone(self):
        profile = DistortionProfile((960, 540), 0.0625, PRINTED_CUBIC, half_diagonal(1920, 1080), (1920, 1080))
        assert np.all(np.diff(profile.forward(profile.table_r)) > 0)
        assert float(profile.delta_r(1000)) == pytest.approx(-5.803506131207 / (2 * np.pi * 0.0625), abs=1e-9)

    def test_identity(self):
        profile = DistortionProfile.identity((512, 512))
        assert profile.is_identity
        assert np.all(profile.delta_r(profile.table_r) == 0)
        r = np.array([0.0, 10.5, 362.0])
        assert np.array_equal(profile.inverse(r), r)

    def test_table(self):
        profile = DistortionProfile((64, 64), 0.0625, [0, 0, 2 * np.pi * 0.0625 * 0.1, 0], half_diagonal(128, 128),
                                    (128, 128))
        table = profile.table
        assert table.shape == (92, 2)
        np.testing.assert_allclose(table[:, 1], 0.1 * table[:, 0], atol=1e-12)

    def test_inverse_of_linear_profile(self):
        profile = DistortionProfile((64, 64), 0.0625, [0, 0, 2 * np.pi * 0.0625 * 0.1, 0], half_diagonal(128, 128),
                                    (128, 128))
        r = np.linspace(0, 90 * 1.1, 50)
        np.testing.assert_allclose(profile.inverse(r), r / 1.1, atol=1e-9)
        assert np.isnan(profile.inverse(np.array([200.0]))[0])

    def test_inverse_residual(self):
        profile = DistortionProfile((256, 256), 0.0625, [2 * np.pi * 0.0625 * 4e-7, 0, 0, 0],
                                    half_diagonal(512, 512), (512, 512))
        r = np.linspace(0, profile.r_out_max, 500)
        residual = profile.forward(profile.inverse(r)) - r
        assert np.max(np.abs(residual)) < 1e-3

    def test_inverse_near_center_not_negative(self):
        # delta_r is 0.05 px everywhere, so radii below 0.05 have no preimage
        profile = DistortionProfile((64, 64), 0.0625, [0, 0, 0, 2 * np.pi * 0.0625 * 0.05], half_diagonal(128, 128),
                                    (128, 128))
        r_prime = profile.inverse(np.array([0.0, 0.01, 0.03, 1.05]))
        assert np.all(r_prime >= 0), f"It should be non-negative instead it is {r_prime}"
        np.testing.assert_allclose(r_prime, [0.0, 0.0, 0.0, 1.0], atol=1e-9)
        assert float(profile.inverse(0.0)) == 0.0

    def test_non_monotone_rejected(self):
        with pytest.raises(NonMonotoneProfileError):
            DistortionProfile((256, 256), 0.0625, [-2e-6, 0, 0, 0], half_diagonal(512, 512), (512, 512))
        assert not forward_map_is_monotone([-2e-6, 0, 0, 0], 0.0625, 362.0)
        assert forward_map_is_monotone([-1e-7, 0, 0, 0], 0.0625, 362.0)

    def test_r_max_must_match_dims(self):
        with pytest.raises(ParameterError):
            DistortionProfile((256, 256), 0.0625, [0, 0, 0, 0], 300.0, (512, 512))

    def test_invalid_frequency(self):
        with pytest.raises(ParameterError):
            DistortionProfile((256, 256), 0.0, [0, 0, 0, 0], half_diagonal(512, 512), (512, 512))

    def test_str(self):
        assert "r_max=362.0" in str(DistortionProfile.identity((512, 512)))


class TestBuildProfile:

    @pytest.fixture(autouse=True)
    def _request(self, identity_fringe_set):
        self.images = identity_fringe_set

    def test_zero_distortion(self):
        phase = smooth_cubic(unwrap_1d(four_step_phase(*self.images)))
        profile = build_profile(phase, (512, 512))
        assert np.max(np.abs(profile.delta_r(profile.table_r))) < 0.05
        assert profile.f0 == pytest.approx(0.0625, rel=1e-9)
        assert profile.center == (256.0, 256.0)

    def test_width_mismatch(self):
        phase = smooth_cubic(unwrap_1d(four_step_phase(*self.images)))
        with pytest.raises(ShapeError):
            build_profile(phase, (500, 512))
