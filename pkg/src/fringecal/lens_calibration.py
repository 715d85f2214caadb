# Copyright © 2026 fringecal developers. All rights reserved.

# Redistribution and use in source and binary forms, with or without modification,
# are permitted under the terms of the BSD 3-clause license found in LICENSE.txt.


# -*- coding: utf-8 -*-

import logging
import pathlib
import numpy as np
from typing import List
from fringecal.calibration_settings import CalibrationSettings
from fringecal.template_gen import raster_data
from fringecal.phase_demod import four_step_phase, unwrap_1d, smooth_cubic, central_row_index
from fringecal.ifreq import wavelet_ifreq, central_flatness, MIN_SIGNAL_LENGTH
from fringecal.distortion_profile import DistortionProfile, profile_stages
from fringecal.remap import build_remap_grid, apply_grid
from fringecal.io_formats.image_io import to_grayscale
from fringecal.io_formats import curve_export
from fringecal.exceptions import ShapeError, ParameterError


class LensCalibration:
    """
    |  One calibration session: four fringe captures in, DistortionProfile out.
    |  Every intermediate result is kept on the object for reporting.
    """

    def __init__(self, settings: CalibrationSettings = None, **kwargs):
        """
        Creating a calibration session

        :param settings: CalibrationSettings object. Built from the default parameter file with kwargs if None
        """
        if settings is None:
            settings = CalibrationSettings(**kwargs)
        self.settings = settings

        # Intermediate variables
        self.images = None          # Grayscale captures I1..I4
        self.dims = None            # (width, height) of the captures
        self.row = None             # Demodulated row index
        self.wrapped = None         # Wrapped central-row phase
        self.unwrapped = None       # Unwrapped phase
        self.smoothed = None        # Polynomial-smoothed phase
        self.ridge = None           # Wavelet ridge of the I1 central row
        self.flatness = None        # Central flatness report
        self.fit = None             # Undistorted phase line
        self.delta = None           # Signed modulated phase per column
        self.branch = None          # Averaged (or positive) modulated phase
        self.profile = None         # Calibration result

        self._grids = {}            # Remap grids by (image dims, expand)

    def run(self, images, provenance: str = '') -> DistortionProfile:
        """
        |  Calibrate from four phase-shifted captures

        :param images: I1..I4 in shift order 0, pi/2, pi, 3pi/2. RGB captures are converted to luma
        :param provenance: free text stored with the profile

        Output:

        :param profile: DistortionProfile
        """
        s = self.settings
        images = [to_grayscale(raster_data(image)) for image in images]
        if len(images) != 4:
            raise ParameterError(f"Calibration needs exactly four fringe images, got {len(images)}")
        shapes = {image.shape for image in images}
        if len(shapes) != 1:
            raise ShapeError(f"Fringe images should share dimensions, got {sorted(shapes)}")
        self.images = images
        height, width = images[0].shape
        self.dims = (width, height)
        self.row = central_row_index(height, s.CENTRAL_ROW)
        self._grids = {}

        # Step 1: phase of the central row, unwrapped and smoothed
        self.wrapped = four_step_phase(*images, row=self.row, eps=s.UNDEFINED_EPS)
        self.unwrapped = unwrap_1d(self.wrapped)
        self.smoothed = smooth_cubic(self.unwrapped, s.SMOOTH_DEGREE)
        logging.info(f"Row {self.row}: phase spans {self.smoothed.values[-1] - self.smoothed.values[0]:.2f} rad "
                     f"over {width} columns")

        # Step 2: instantaneous frequency, evidence that the center is undistorted
        if width >= MIN_SIGNAL_LENGTH:
            f_min, f_max = s.ifreq_grid_bounds(s.FRINGE_F0)
            self.ridge = wavelet_ifreq(images[0][self.row], f_min, f_max, s.IFREQ_N_SCALES, s.WAVELET_OMEGA0,
                                       s.THREADS)
            self.flatness = central_flatness(self.ridge, s.FLATNESS_WINDOW, self.wrapped.center_index)
            if self.flatness.passed:
                logging.info(str(self.flatness))
            else:
                logging.warning(f"Central region is not flat, the undistorted-center assumption is doubtful: "
                                f"{self.flatness}")
        else:
            self.ridge = self.flatness = None
            logging.warning(f"Captures narrower than {MIN_SIGNAL_LENGTH} columns, instantaneous frequency skipped")

        # Steps 3-5: undistorted line, modulated phase, branch, polynomial extension, packaging
        self.fit, self.delta, self.branch, self.profile = profile_stages(
            self.smoothed, self.dims, s.N_POINTS, s.SYMMETRIZE, s.EXTEND_DEGREE, provenance)
        logging.info(f"Fundamental frequency f0={self.fit.f0:.6g} cycles/pixel, k={self.fit.k:.6g} rad/pixel")
        self._cross_check_f0()
        logging.info(f"Profile: r_max={self.profile.r_max:.1f} px, "
                     f"delta_r(r_max)={float(self.profile.delta_r(self.profile.r_max)):.3f} px")
        return self.profile

    def _cross_check_f0(self):
        """Warn when the fitted carrier and the wavelet ridge at the center disagree by more than one grid step"""
        if self.ridge is None or not self.ridge.has_ridge:
            return
        steps = self.ridge.grid_steps(self.flatness.median_frequency, self.fit.f0)
        if steps > 1:
            logging.warning(f"Fitted f0={self.fit.f0:.6g} cycles/pixel differs from the wavelet ridge "
                            f"{self.flatness.median_frequency:.6g} cycles/pixel by {steps:.1f} grid steps, "
                            f"check FRINGE_F0 and the IFREQ_F_MIN/IFREQ_F_MAX range")

    def grid_for(self, dims, expand: bool = None):
        """Remap grid for images of the given (width, height), built once and reused"""
        if self.profile is None:
            raise ParameterError("Run the calibration before calibrating images")
        expand = self.settings.EXPAND if expand is None else expand
        key = (tuple(dims), bool(expand))
        if key not in self._grids:
            src_dims = None if tuple(dims) == self.profile.dims else tuple(dims)
            self._grids[key] = build_remap_grid(self.profile, expand=expand, src_dims=src_dims,
                                                threads=self.settings.THREADS)
        return self._grids[key]

    def calibrate(self, image, fill_value: float = None, expand: bool = None, rebuild: bool = False) -> np.ndarray:
        """
        Undistort an image (grayscale or RGB) with the session profile
        """
        data = raster_data(image)
        dims = (data.shape[1], data.shape[0])
        if self.profile is not None and dims != self.profile.dims and not rebuild:
            raise ShapeError(f"Image is {dims[0]}x{dims[1]} but the profile was calibrated on "
                             f"{self.profile.dims[0]}x{self.profile.dims[1]}")
        fill_value = self.settings.FILL_VALUE if fill_value is None else fill_value
        return apply_grid(data, self.grid_for(dims, expand), fill_value, self.settings.THREADS)

    def write_report(self, directory) -> List[pathlib.Path]:
        """
        Report files of the last run: ridge, modulated phase, central-row intensity and delta_r curve
        """
        if self.profile is None:
            raise ParameterError("Run the calibration before writing a report")
        directory = pathlib.Path(directory)
        written = []
        if self.ridge is not None:
            written.append(directory / 'ridge.csv')
            curve_export.export_ridge_csv(self.ridge, written[-1])
        written.append(directory / 'modulated_phase.csv')
        curve_export.export_modulated_phase_csv(self.delta, self.smoothed.center_index, written[-1],
                                                self.branch.values)
        written.append(directory / 'intensity.csv')
        curve_export.export_intensity_csv(self.images, self.row, written[-1])
        written.append(directory / 'delta_r.csv')
        curve_export.export_curve_csv(self.profile, written[-1])
        written.append(directory / 'delta_r.svg')
        curve_export.export_curve_svg(self.profile, written[-1])
        return written

    def __str__(self):
        if self.profile is None:
            return "LensCalibration(not run)"
        lines = [f"f0 = {self.profile.f0:.6g} cycles/pixel",
                 f"r_max = {self.profile.r_max:.1f} px",
                 "cubic = [" + ", ".join(f"{c:.5g}" for c in self.profile.cubic) + "]",
                 f"delta_r(r_max) = {float(self.profile.delta_r(self.profile.r_max)):.3f} px"]
        if self.flatness is not None:
            lines.append(str(self.flatness))
        return "\n".join(lines)
