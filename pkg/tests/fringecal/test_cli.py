"""
Copyright © 2026 fringecal developers. All rights reserved.

Redistribution and use in source and binary forms, with or without modification,
are permitted under the terms of the BSD 3-clause license found in LICENSE.txt.
"""

# -*- coding: utf-8 -*-
# @File    : test_cli.py

import numpy as np
import pandas as pd
import pytest
from fringecal.cli import main, exit_code, EXIT_OK, EXIT_OTHER, EXIT_PARAMETER, EXIT_SHAPE, EXIT_NUMERIC, EXIT_FORMAT
from fringecal.distortion_profile import DistortionProfile, half_diagonal
from fringecal.io_formats import load_image, save_image, save_profile, load_profile
from fringecal.exceptions import (ParameterError, ShapeError, InsufficientDataError, OrientationError,
                                  NonMonotoneProfileError, ProfileFormatError)


def fringe_paths(directory):
    return [str(directory / f"fringe_{i}.png") for i in range(4)]


def linear_profile(dims, a, f0=0.0625):
    width, height = dims
    return DistortionProfile((width / 2, height / 2), f0, [0, 0, 2 * np.pi * f0 * a, 0],
                             half_diagonal(width, height), dims)


input_list = [
    # error, expected exit code
    [ProfileFormatError("x"), EXIT_FORMAT],
    [ShapeError("x"), EXIT_SHAPE],
    [NonMonotoneProfileError("x"), EXIT_NUMERIC],
    [InsufficientDataError("x"), EXIT_NUMERIC],
    [OrientationError("x"), EXIT_NUMERIC],
    [ParameterError("x"), EXIT_PARAMETER],
    [ValueError("x"), EXIT_OTHER],
]


@pytest.mark.parametrize("error, expected", input_list, ids=[type(i[0]).__name__ for i in input_list])
def test_exit_codes(error, expected):
    assert exit_code(error) == expected, f"It should be {expected} instead it is {exit_code(error)}"


class TestGenTemplates:

    def test_writes_four_templates(self, tmp_path):
        assert main(['gen-templates', '--width', '512', '--height', '64', '--out', str(tmp_path)]) == EXIT_OK
        assert sorted(p.name for p in tmp_path.iterdir()) == [f"template_{i}.png" for i in range(4)]
        i1, bit_depth = load_image(tmp_path / "template_0.png")
        i3, _ = load_image(tmp_path / "template_2.png")
        assert bit_depth == 8
        assert i1.shape == (64, 512)
        assert np.max(np.abs(i1 + i3 - 256)) <= 1

    def test_sixteen_bit_pgm(self, tmp_path):
        assert main(['gen-templates', '--width', '64', '--height', '8', '--bit-depth', '16', '--A', '30000',
                     '--B', '20000', '--format', 'pgm', '--out', str(tmp_path)]) == EXIT_OK
        data, bit_depth = load_image(tmp_path / "template_0.pgm")
        assert bit_depth == 16
        assert data.max() == 50000

    def test_invalid_frequency(self, tmp_path):
        assert main(['gen-templates', '--f0', '0', '--out', str(tmp_path)]) == EXIT_PARAMETER
        assert not any(tmp_path.iterdir())

    def test_out_dir_resolution(self, tmp_path):
        assert main(['--out-dir', str(tmp_path), 'gen-templates', '--width', '64', '--height', '32',
                     '--out', 'templates']) == EXIT_OK
        assert (tmp_path / "templates" / "template_3.png").exists()

    def test_parameter_file(self, tmp_path):
        params = tmp_path / "params.csv"
        params.write_text("PARAMETER,VALUE\nTEMPLATE_WIDTH,40\nTEMPLATE_HEIGHT,20\n")
        assert main(['--params', str(params), 'gen-templates', '--out', str(tmp_path / "t")]) == EXIT_OK
        data, _ = load_image(tmp_path / "t" / "template_0.png")
        assert data.shape == (20, 40)


class TestSimulateAndCalibrate:

    @pytest.fixture(autouse=True)
    def _request(self, tmp_path):
        self.tmp = tmp_path
        self.sim = tmp_path / "sim"
        assert main(['simulate', '--model', 'division', '--lambda', '5e-7', '--dims', '512', '512',
                     '--scene', 'fringe', '--out', str(self.sim)]) == EXIT_OK

    def test_simulated_files(self):
        names = sorted(p.name for p in self.sim.iterdir())
        assert names == ['fringe_0.png', 'fringe_1.png', 'fringe_2.png', 'fringe_3.png', 'ground_truth_delta_r.csv']

    def test_calibrate_recovers_ground_truth(self):
        out = self.tmp / "profile.json"
        assert main(['calibrate', '--images', *fringe_paths(self.sim), '--out', str(out)]) == EXIT_OK
        profile = load_profile(out)
        truth = pd.read_csv(self.sim / "ground_truth_delta_r.csv")
        truth = truth[truth['r'] <= 0.9 * profile.r_max]
        error = profile.delta_r(truth['r'].to_numpy()) - truth['delta_r'].to_numpy()
        rms = float(np.sqrt(np.mean(error ** 2)))
        assert rms <= 1.0, f"It should be at most 1.0 px RMS instead it is {rms}"

    def test_report(self):
        out = self.tmp / "calib" / "profile.json"
        assert main(['calibrate', '--images', *fringe_paths(self.sim), '--out', str(out), '--report']) == EXIT_OK
        for name in ('ridge.csv', 'modulated_phase.csv', 'intensity.csv', 'delta_r.csv', 'delta_r.svg'):
            assert (out.parent / name).exists(), f"{name} should have been written"

    def test_mismatched_sizes(self):
        small, bit_depth = load_image(self.sim / "fringe_3.png")
        save_image(self.sim / "fringe_3.png", small[:, :400], bit_depth)
        assert main(['calibrate', '--images', *fringe_paths(self.sim), '--out',
                     str(self.tmp / "profile.json")]) == EXIT_SHAPE
        assert not (self.tmp / "profile.json").exists()

    def test_flipped_captures(self):
        for path in fringe_paths(self.sim):
            data, bit_depth = load_image(path)
            save_image(path, np.fliplr(data), bit_depth)
        assert main(['calibrate', '--images', *fringe_paths(self.sim), '--out',
                     str(self.tmp / "profile.json")]) == EXIT_NUMERIC


class TestSimulate:

    def test_identity_lens_reproduces_templates(self, tmp_path):
        assert main(['simulate', '--lambda', '0', '--dims', '128', '64', '--scene', 'fringe',
                     '--out', str(tmp_path / "sim")]) == EXIT_OK
        assert main(['gen-templates', '--width', '128', '--height', '64', '--out', str(tmp_path / "tpl")]) == EXIT_OK
        for i in range(4):
            simulated, _ = load_image(tmp_path / "sim" / f"fringe_{i}.png")
            template, _ = load_image(tmp_path / "tpl" / f"template_{i}.png")
            assert np.array_equal(simulated, template), f"fringe_{i} should equal template_{i}"

    def test_ground_truth_independent_of_carrier(self, tmp_path):
        for scale in ('1.0', '1.5'):
            assert main(['simulate', '--dims', '256', '256', '--scene', 'checker', '--freq-scale', scale,
                         '--out', str(tmp_path / scale)]) == EXIT_OK
        assert (tmp_path / "1.0" / "ground_truth_delta_r.csv").read_text() == \
               (tmp_path / "1.5" / "ground_truth_delta_r.csv").read_text()

    def test_scenes_written(self, tmp_path):
        assert main(['simulate', '--dims', '128', '128', '--scene', 'checker', 'grid', '--cell', '32',
                     '--out', str(tmp_path)]) == EXIT_OK
        assert (tmp_path / "checkerboard.png").exists() and (tmp_path / "line_grid.png").exists()
        assert not (tmp_path / "fringe_0.png").exists()

    def test_noise_requires_seed(self, tmp_path):
        assert main(['simulate', '--dims', '64', '64', '--scene', 'checker', '--noise', '2',
                     '--out', str(tmp_path)]) == EXIT_PARAMETER
        assert list(tmp_path.iterdir()) == []

    def test_seeded_noise_reproducible(self, tmp_path):
        for name in ('a', 'b'):
            assert main(['simulate', '--dims', '64', '64', '--scene', 'checker', '--noise', '2', '--seed', '7',
                         '--out', str(tmp_path / name)]) == EXIT_OK
        assert (tmp_path / "a" / "checkerboard.png").read_bytes() == (tmp_path / "b" / "checkerboard.png").read_bytes()

    def test_non_monotone_model(self, tmp_path):
        assert main(['simulate', '--lambda', '5e-6', '--dims', '512', '512', '--out', str(tmp_path)]) == EXIT_NUMERIC

    def test_polynomial_model(self, tmp_path):
        assert main(['simulate', '--model', 'polynomial', '--k1', '1e-7', '--dims', '128', '128', '--scene', 'grid',
                     '--out', str(tmp_path)]) == EXIT_OK
        truth = pd.read_csv(tmp_path / "ground_truth_delta_r.csv")
        assert truth['delta_r'].iloc[0] == 0
        assert truth['delta_r'].iloc[-1] < 0


class TestApply:

    @pytest.fixture(autouse=True)
    def _request(self, tmp_path):
        self.tmp = tmp_path
        self.gray = np.random.default_rng(3).integers(0, 256, (48, 64)).astype(float)
        save_image(tmp_path / "gray.png", self.gray)

    def apply(self, profile_name, image_name, *extra):
        return main(['apply', '--profile', str(self.tmp / profile_name), '--in', str(self.tmp / image_name),
                     '--out', str(self.tmp / "out.png"), *extra])

    def test_identity_profile(self):
        save_profile(DistortionProfile.identity((64, 48)), self.tmp / "identity.json")
        assert self.apply("identity.json", "gray.png") == EXIT_OK
        out, bit_depth = load_image(self.tmp / "out.png")
        assert bit_depth == 8
        assert np.array_equal(out, self.gray)

    def test_rgb_channels_consistent(self):
        save_image(self.tmp / "rgb.png", np.stack([self.gray] * 3, axis=-1))
        save_profile(linear_profile((64, 48), 0.05), self.tmp / "linear.json")
        assert self.apply("linear.json", "rgb.png") == EXIT_OK
        out, _ = load_image(self.tmp / "out.png")
        assert out.shape == (48, 64, 3)
        assert np.array_equal(out[..., 0], out[..., 1]) and np.array_equal(out[..., 0], out[..., 2])

    def test_dimension_mismatch(self):
        save_profile(linear_profile((128, 96), 0.05), self.tmp / "large.json")
        assert self.apply("large.json", "gray.png") == EXIT_SHAPE
        assert self.apply("large.json", "gray.png", '--force-rebuild') == EXIT_OK
        out, _ = load_image(self.tmp / "out.png")
        assert out.shape == (48, 64)

    def test_expanded_canvas(self):
        save_profile(linear_profile((64, 48), 0.1), self.tmp / "linear.json")
        assert self.apply("linear.json", "gray.png", '--expand', '--fill', '255') == EXIT_OK
        out, _ = load_image(self.tmp / "out.png")
        assert out.shape[0] > 48 and out.shape[1] > 64

    def test_malformed_profile(self):
        (self.tmp / "broken.json").write_text("{not json")
        assert self.apply("broken.json", "gray.png") == EXIT_FORMAT

    def test_missing_image(self):
        save_profile(DistortionProfile.identity((64, 48)), self.tmp / "identity.json")
        assert self.apply("identity.json", "absent.png") == EXIT_OTHER
