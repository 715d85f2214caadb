"""
Copyright © 2026 fringecal developers. All rights reserved.

Redistribution and use in source and binary forms, with or without modification,
are permitted under the terms of the BSD 3-clause license found in LICENSE.txt.
"""

# -*- coding: utf-8 -*-
# @File    : test_lens_calibration.py

import logging
import numpy as np
import pytest
from fringecal import CalibrationSettings, LensCalibration
from fringecal.phase_demod import WRAPPED, UNWRAPPED, SMOOTHED
from fringecal.distortion_profile import AVERAGED, POSITIVE_BRANCH, build_profile, profile_stages
from fringecal.simulator import (RadialModel, CheckerboardScene, render_distorted, render_fringe_set,
                                 ground_truth_delta_r, depth_series, edge_straightness)
from fringecal.exceptions import ParameterError, ShapeError, OrientationError

DIMS = (512, 512)


def profile_error(profile, model):
    """Recovered minus true delta_r over [0, 0.9 r_max]"""
    r = np.arange(0, 0.9 * profile.r_max)
    return profile.delta_r(r) - ground_truth_delta_r(model, r)


def rms(values):
    return float(np.sqrt(np.mean(np.square(values))))


class TestBarrelCalibration:

    @pytest.fixture(autouse=True)
    def _request(self, barrel_calibration, barrel_model, barrel_fringe_set):
        self.calibration = barrel_calibration
        self.profile = barrel_calibration.profile
        self.model = barrel_model
        self.images = barrel_fringe_set

    def test_displacement_accuracy(self):
        error = profile_error(self.profile, self.model)
        assert rms(error) <= 1.0, f"It should be at most 1.0 px RMS instead it is {rms(error)}"
        assert np.max(np.abs(error)) <= 2.0, f"It should be at most 2.0 px instead it is {np.max(np.abs(error))}"

    def test_fundamental_frequency(self):
        assert abs(self.profile.f0 - 0.0625) / 0.0625 < 0.005

    def test_center_undistorted(self):
        assert abs(float(self.profile.delta_r(0.0))) < 0.1
        assert self.calibration.flatness.passed

    def test_profile_fields(self):
        assert self.profile.dims == DIMS
        assert self.profile.center == (256.0, 256.0)
        assert self.profile.r_max == pytest.approx(np.hypot(256, 256))
        assert self.profile.provenance == "simulated barrel lens"
        assert np.all(np.diff(self.profile.forward(self.profile.table_r)) > 0)

    def test_intermediates(self):
        c = self.calibration
        assert c.row == 256
        assert c.dims == DIMS
        assert (c.wrapped.state, c.unwrapped.state, c.smoothed.state) == (WRAPPED, UNWRAPPED, SMOOTHED)
        assert len(c.delta) == 512
        assert c.branch.source == AVERAGED
        assert len(c.branch) == 256
        assert len(c.ridge) == 512

    def test_modulated_phase_antisymmetric(self):
        delta = self.calibration.delta
        u = np.arange(0, int(0.9 * 255))
        assert np.max(np.abs(delta[256 + u] + delta[256 - u])) < 0.05

    def test_checkerboard_straightened(self):
        scene = CheckerboardScene(64, (256, 256))
        distorted = render_distorted(scene, self.model, DIMS)
        calibrated = self.calibration.calibrate(distorted)
        before, after = edge_straightness(distorted), edge_straightness(calibrated)
        assert before >= 10 * after, f"It should improve at least 10x instead it is {before:.3f} -> {after:.3f} px"

    def test_fitted_f0_agrees_with_ridge(self):
        c = self.calibration
        assert c.ridge.grid_steps(c.flatness.median_frequency, c.fit.f0) <= 1
        assert not c.flatness.at_grid_edge

    def test_grid_reused(self):
        assert self.calibration.grid_for(DIMS) is self.calibration.grid_for(DIMS)

    def test_calibrate_size_checks(self):
        with pytest.raises(ShapeError):
            self.calibration.calibrate(np.zeros((100, 100)))
        assert self.calibration.calibrate(np.zeros((100, 120)), rebuild=True).shape == (100, 120)

    def test_calibrate_rgb(self):
        gray = self.images[0]
        rgb = np.stack([gray, 0.5 * gray, gray], axis=-1)
        out = self.calibration.calibrate(rgb)
        np.testing.assert_allclose(out[..., 1], 0.5 * out[..., 0], rtol=1e-12)
        np.testing.assert_allclose(out[..., 0], self.calibration.calibrate(gray), rtol=1e-12)

    def test_report_files(self, tmp_path):
        written = self.calibration.write_report(tmp_path)
        assert sorted(p.name for p in written) == ['delta_r.csv', 'delta_r.svg', 'intensity.csv',
                                                   'modulated_phase.csv', 'ridge.csv']
        assert all(p.exists() for p in written)

    def test_str(self):
        text = str(self.calibration)
        assert "f0 = " in text and "r_max = 362.0 px" in text


class TestCalibrationVariants:

    @pytest.fixture(autouse=True)
    def _request(self, barrel_model, barrel_fringe_set):
        self.model = barrel_model
        self.images = barrel_fringe_set

    def test_scale_invariance(self, barrel_calibration):
        scaled = LensCalibration().run([2.5 * image for image in self.images])
        r = scaled.table_r
        np.testing.assert_allclose(scaled.delta_r(r), barrel_calibration.profile.delta_r(r), atol=1e-9)

    def test_rgb_captures(self, barrel_calibration):
        rgb = [np.stack([image] * 3, axis=-1) for image in self.images]
        profile = LensCalibration().run(rgb)
        r = profile.table_r
        np.testing.assert_allclose(profile.delta_r(r), barrel_calibration.profile.delta_r(r), atol=1e-9)

    def test_positive_branch(self):
        calibration = LensCalibration(CalibrationSettings(SYMMETRIZE=False))
        profile = calibration.run(self.images)
        assert calibration.branch.source == POSITIVE_BRANCH
        assert rms(profile_error(profile, self.model)) <= 1.0

    def test_depth_invariance(self):
        profiles = depth_series(self.model, DIMS, freq_scales=(1.0, 1.5))
        assert sorted(profiles) == [1.0, 1.5]
        r = np.arange(0, 0.9 * profiles[1.0].r_max)
        difference = profiles[1.0].delta_r(r) - profiles[1.5].delta_r(r)
        assert rms(difference) < 0.5, f"It should be below 0.5 px instead it is {rms(difference)}"
        assert profiles[1.5].f0 == pytest.approx(1.5 * 0.0625, rel=0.005)

    @pytest.mark.parametrize("seed", [0, 1, 2, 3, 4], ids=[f"seed {i}" for i in range(5)])
    def test_noise_and_vignetting(self, seed):
        images = render_fringe_set(self.model, DIMS, noise_sigma=2.0, vignetting=0.3, seed=seed)
        profile = LensCalibration().run(images)
        error = rms(profile_error(profile, self.model))
        assert error <= 1.5, f"It should be at most 1.5 px RMS instead it is {error}"

    def test_wrong_orientation(self):
        with pytest.raises(OrientationError):
            LensCalibration().run([np.fliplr(image) for image in self.images])

    def test_mismatched_sizes(self):
        images = list(self.images)
        images[3] = images[3][:, :500]
        with pytest.raises(ShapeError):
            LensCalibration().run(images)

    def test_three_images(self):
        with pytest.raises(ParameterError):
            LensCalibration().run(self.images[:3])

    def test_calibrate_before_run(self):
        with pytest.raises(ParameterError):
            LensCalibration().calibrate(self.images[0])

    def test_kwargs_build_settings(self):
        calibration = LensCalibration(N_POINTS=5)
        assert calibration.settings.N_POINTS == 5


class TestIdentityCalibration:

    @pytest.fixture(autouse=True)
    def _request(self, identity_fringe_set):
        self.images = identity_fringe_set

    def test_zero_distortion(self):
        calibration = LensCalibration()
        profile = calibration.run(self.images)
        assert np.max(np.abs(profile.delta_r(profile.table_r))) < 0.05
        assert calibration.flatness.passed

    def test_narrow_captures_skip_ridge(self, caplog):
        calibration = LensCalibration()
        with caplog.at_level(logging.WARNING):
            profile = calibration.run([image[:, :48] for image in self.images])
        assert calibration.ridge is None
        assert "narrower" in caplog.text
        assert np.max(np.abs(profile.delta_r(profile.table_r))) < 0.05

    def test_carrier_above_frequency_grid(self, caplog):
        # the default grid stops at 4 * 0.0625 = 0.25 cycles/pixel
        dims = (256, 64)
        images = render_fringe_set(RadialModel.identity(dims), dims, f0=0.3)
        calibration = LensCalibration()
        with caplog.at_level(logging.WARNING):
            profile = calibration.run(images)
        assert calibration.flatness.at_grid_edge
        assert not calibration.flatness.passed
        assert "differs from the wavelet ridge" in caplog.text
        assert profile.f0 == pytest.approx(0.3, rel=1e-3)

    def test_stages_match_build_profile(self):
        calibration = LensCalibration()
        profile = calibration.run(self.images)
        fit, delta, branch, staged = profile_stages(calibration.smoothed, calibration.dims)
        assert np.array_equal(staged.cubic, profile.cubic)
        assert np.array_equal(build_profile(calibration.smoothed, calibration.dims).cubic, profile.cubic)
        assert fit.f0 == calibration.fit.f0
        assert np.array_equal(delta, calibration.delta)
        assert branch.source == calibration.branch.source == AVERAGED


def test_full_hd_capture():
    dims = (1920, 1080)
    model = RadialModel.for_dims('division', 3e-8, dims)
    profile = LensCalibration().run(render_fringe_set(model, dims))
    assert profile.table_r[-1] == 1102
    error = profile_error(profile, model)
    assert rms(error) <= 1.0, f"It should be at most 1.0 px RMS instead it is {rms(error)}"
    assert np.max(np.abs(error)) <= 2.0
