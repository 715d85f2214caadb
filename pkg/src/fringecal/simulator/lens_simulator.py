# Copyright © 2026 fringecal developers. All rights reserved.

# Redistribution and use in source and binary forms, with or without modification,
# are permitted under the terms of the BSD 3-clause license found in LICENSE.txt.


# -*- coding: utf-8 -*-

import logging
import numpy as np
from typing import List, Tuple, Dict
from fringecal.simulator.radial_model import RadialModel
from fringecal.simulator.scenes import FringeScene
from fringecal.distortion_profile import DistortionProfile, half_diagonal
from fringecal.template_gen import N_SHIFTS
from fringecal.auxiliary_funcs.parallel import parallel_rows
from fringecal.auxiliary_funcs.poly_fit import polyfit_coefficients
from fringecal.exceptions import ParameterError


def _check_model(model: RadialModel, dims):
    width, height = dims
    if width < 1 or height < 1:
        raise ParameterError(f"Frame dimensions should be positive, got {dims}")
    r_frame = half_diagonal(width, height)
    if model.r_d_limit < r_frame:
        raise ParameterError(f"Model covers distorted radii up to {model.r_d_limit:.1f} px, the frame needs "
                             f"{r_frame:.1f} px")


def render_distorted(scene, model: RadialModel, dims: Tuple[int, int], noise_sigma: float = 0.0,
                     vignetting: float = 0.0, rng=None, threads: int = None) -> np.ndarray:
    """
    |  Capture of an ideal scene through a radial lens

    |  The pixel at distorted radius r_d takes the scene value at r_u = model_inverse(r_d) along the same ray,
    |  then optional vignetting 1 - vignetting * (r_d / r_max)^2 and additive Gaussian noise.

    :param scene: callable scene(x, y) of undistorted pixel coordinates
    :param model: RadialModel
    :param dims: (width, height) of the capture
    :param noise_sigma: Gaussian noise standard deviation in gray levels
    :param vignetting: brightness falloff at the frame corner, in [0, 1)
    :param rng: numpy Generator used for the noise
    :param threads: worker threads

    Output:

    :param raster: (height, width) float capture
    """
    _check_model(model, dims)
    if noise_sigma < 0 or not 0 <= vignetting < 1:
        raise ParameterError(f"noise_sigma should be >= 0 and vignetting in [0, 1), got {noise_sigma}, {vignetting}")
    width, height = dims
    cx, cy = model.center
    r_frame = half_diagonal(width, height)

    def rows_block(rows: slice):
        gx, gy = np.meshgrid(np.arange(width, dtype=float), np.arange(rows.start, rows.stop, dtype=float))
        if model.is_identity:
            xu, yu = gx, gy
        else:
            dx, dy = gx - cx, gy - cy
            r_d = np.hypot(dx, dy)
            r_u = model.inverse(r_d)
            with np.errstate(invalid='ignore', divide='ignore'):
                scale = np.where(r_d > 0, r_u / r_d, 1.0)
            xu, yu = cx + scale * dx, cy + scale * dy
        values = scene(xu, yu)
        if vignetting > 0:
            values = values * (1 - vignetting * (np.hypot(gx - cx, gy - cy) / r_frame) ** 2)
        return values

    raster = parallel_rows(rows_block, height, threads)
    if noise_sigma > 0:
        if rng is None:
            rng = np.random.default_rng()
        raster = raster + rng.normal(0.0, noise_sigma, raster.shape)
    return raster


def render_fringe_set(model: RadialModel, dims: Tuple[int, int], f0: float = 0.0625, A: float = 128.0,
                      B: float = 100.0, freq_scale: float = 1.0, noise_sigma: float = 0.0, vignetting: float = 0.0,
                      seed: int = None, threads: int = None) -> List[np.ndarray]:
    """
    The four phase-shifted fringe templates captured through the model, in shift order 0, pi/2, pi, 3pi/2.
    One noise stream seeded by `seed` covers all four captures.
    """
    rng = np.random.default_rng(seed)
    return [render_distorted(FringeScene(f0, A, B, shift_index, freq_scale), model, dims, noise_sigma, vignetting,
                             rng, threads)
            for shift_index in range(N_SHIFTS)]


def ground_truth_delta_r(model: RadialModel, r_d):
    """Exact radial displacement as a function of distorted radius: model_inverse(r_d) - r_d"""
    r_d = np.asarray(r_d, dtype=float)
    return model.inverse(r_d) - r_d


def ground_truth_profile(model: RadialModel, dims: Tuple[int, int], f0: float = 0.0625,
                         degree: int = 9) -> DistortionProfile:
    """
    |  DistortionProfile fitted to the model's exact displacement, independent of any calibration

    :param model: RadialModel centred on the frame
    :param dims: (width, height) of the frame
    :param f0: fundamental frequency stored in the profile
    :param degree: degree of the least-squares polynomial in delta_phi

    Output:

    :param profile: DistortionProfile
    """
    _check_model(model, dims)
    width, height = dims
    r_max = half_diagonal(width, height)
    r = np.arange(0, np.ceil(r_max) + 1, dtype=float)
    delta_phi = 2 * np.pi * f0 * ground_truth_delta_r(model, np.minimum(r, model.r_d_limit))
    coefficients = polyfit_coefficients(r, delta_phi, degree)
    return DistortionProfile((width / 2, height / 2), f0, coefficients, r_max, dims,
                             provenance=f"ground truth of {model!r}")


def depth_series(model: RadialModel, dims: Tuple[int, int], freq_scales=(1.0, 1.5), settings=None,
                 seed: int = None) -> Dict[float, DistortionProfile]:
    """
    |  Calibrate fringe sets rendered at several carrier scalings under one lens

    |  Each scaling stands for one screen-to-lens distance. The recovered displacement curves should
    |  agree whatever the distance.

    :param model: RadialModel
    :param dims: (width, height) of the captures
    :param freq_scales: carrier scalings
    :param settings: CalibrationSettings, default built-in values
    :param seed: noise seed

    Output:

    :param profiles: freq_scale -> DistortionProfile
    """
    from fringecal.lens_calibration import LensCalibration
    from fringecal.calibration_settings import CalibrationSettings

    if settings is None:
        settings = CalibrationSettings()
    profiles = {}
    for scale in freq_scales:
        images = render_fringe_set(model, dims, settings.FRINGE_F0, settings.FRINGE_A, settings.FRINGE_B, scale,
                                   settings.NOISE_SIGMA, settings.VIGNETTING, seed, settings.THREADS)
        calibration = LensCalibration(settings)
        profiles[scale] = calibration.run(images, provenance=f"simulated, freq_scale={scale}")
        logging.info(f"freq_scale={scale}: f0={profiles[scale].f0:.6g}, "
                     f"delta_r(r_max)={float(profiles[scale].delta_r(profiles[scale].r_max)):.3f} px")
    return profiles
