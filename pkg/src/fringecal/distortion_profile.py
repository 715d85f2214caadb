# Copyright © 2026 fringecal developers. All rights reserved.

# Redistribution and use in source and binary forms, with or without modification,
# are permitted under the terms of the BSD 3-clause license found in LICENSE.txt.


# -*- coding: utf-8 -*-

import logging
import numpy as np
from typing import Tuple
from fringecal.phase_demod import PhaseProfile, SMOOTHED, UNWRAPPED
from fringecal.auxiliary_funcs.poly_fit import polyfit_coefficients
from fringecal.exceptions import (ParameterError, ShapeError, InsufficientDataError, OrientationError,
                                  NonMonotoneProfileError)

POSITIVE_BRANCH = 'positive-branch'
AVERAGED = 'averaged'


class LinearFit:
    """
    |  Undistorted phase phi(x) = k * x + phi0 fitted on the central samples

    :param k: carrier slope in radians/pixel
    :param phi0: phase at x = 0 in radians
    :param center_index: column the fit window is centred on
    :param phi_center: fitted phase at center_index
    """

    def __init__(self, k: float, phi0: float, center_index: int, phi_center: float, residual_rms: float = 0.0):
        self.k = k
        self.phi0 = phi0
        self.f0 = k / (2 * np.pi)               # Fundamental frequency in cycles/pixel
        self.center_index = center_index
        self.phi_center = phi_center
        self.residual_rms = residual_rms        # RMS of the fit residual over the window

    def evaluate(self, x):
        """Undistorted phase at columns x, evaluated about the center for precision"""
        return self.k * (np.asarray(x, dtype=float) - self.center_index) + self.phi_center

    def __repr__(self):
        return f"LinearFit(k={self.k!r}, phi0={self.phi0!r}, f0={self.f0!r})"


class ModulatedPhase:
    """
    Modulated phase indexed by radial distance u = 0, 1, 2, ... from the center
    """

    def __init__(self, values, source: str):
        if source not in (POSITIVE_BRANCH, AVERAGED):
            raise ParameterError(f"Modulated phase source should be '{POSITIVE_BRANCH}' or '{AVERAGED}'")
        self.values = np.asarray(values, dtype=float)
        self.source = source

    @property
    def u(self):
        return np.arange(self.values.size, dtype=float)

    def __len__(self):
        return self.values.size


def phase_to_distortion(coefficients, f0: float, r):
    """
    |  Radial displacement from modulated phase: delta_r = delta_phi / (2 pi f0)

    :param coefficients: delta_phi polynomial ordered from high order items to low order items
    :param f0: fundamental frequency in cycles/pixel
    :param r: distorted radius in pixels

    Output:

    :param delta_r: radial displacement in pixels
    """
    if not f0 > 0:
        raise ParameterError(f"Fundamental frequency f0 should be greater than 0, got {f0}")
    return np.polyval(coefficients, r) / (2 * np.pi * f0)


def half_diagonal(width: int, height: int) -> float:
    return float(np.hypot(width / 2, height / 2))


def forward_map_is_monotone(coefficients, f0: float, r_max: float) -> bool:
    """
    True when m(r) = r + delta_r(r) is strictly increasing on [0, r_max].
    m'(r) is checked on a 1-px grid and at every stationary point of m'.
    """
    coefficients = np.asarray(coefficients, dtype=float)
    d1 = np.polyder(coefficients) if coefficients.size > 1 else np.zeros(1)
    r = np.append(np.arange(0, np.floor(r_max) + 1), r_max)
    if d1.size > 1:
        roots = np.roots(np.polyder(d1)) if d1.size > 2 else np.array([])
        roots = roots[np.isreal(roots)].real
        r = np.concatenate([r, roots[(roots >= 0) & (roots <= r_max)]])
    slope = 1 + np.polyval(d1, r) / (2 * np.pi * f0)
    return bool(np.all(slope > 0) and np.all(np.isfinite(slope)))


class DistortionProfile:
    """
    |  Radial distortion profile of one lens

    |  The modulated phase is measured along distorted-image columns, so the profile is a
    |  function of distorted radius r'. The undistorted radius is r = m(r') = r' + delta_r(r').

    :param center: (x0, y0) distortion center in pixels
    :param f0: fundamental frequency in cycles/pixel
    :param cubic: delta_phi(r') polynomial coefficients, from high order items to low order items
    :param r_max: half-diagonal of the calibration capture in pixels
    :param dims: (width, height) of the calibration capture
    :param provenance: free text describing the capture
    """

    def __init__(self, center: Tuple[float, float], f0: float, cubic, r_max: float, dims: Tuple[int, int],
                 provenance: str = ''):
        if not f0 > 0:
            raise ParameterError(f"Fundamental frequency f0 should be greater than 0, got {f0}")
        self.center = (float(center[0]), float(center[1]))
        self.f0 = float(f0)
        self.cubic = np.asarray(cubic, dtype=float)
        self.r_max = float(r_max)
        self.dims = (int(dims[0]), int(dims[1]))
        self.provenance = provenance

        expected = half_diagonal(*self.dims)
        if abs(self.r_max - expected) > 0.5:
            raise ParameterError(f"r_max {self.r_max} does not match the half-diagonal {expected:.3f} of {self.dims}")
        if not np.all(np.isfinite(self.delta_r(self.table_r))):
            raise NonMonotoneProfileError("delta_r is not finite on [0, r_max]")
        if not forward_map_is_monotone(self.cubic, self.f0, np.ceil(self.r_max)):
            raise NonMonotoneProfileError("The forward map r' + delta_r(r') is not strictly increasing on "
                                          f"[0, {self.r_max:.1f}], the profile cannot be inverted")

    @classmethod
    def identity(cls, dims: Tuple[int, int], f0: float = 0.0625, provenance: str = 'identity'):
        width, height = dims
        return cls((width / 2, height / 2), f0, np.zeros(4), half_diagonal(width, height), dims, provenance)

    @property
    def is_identity(self) -> bool:
        return not np.any(self.cubic)

    @property
    def table_r(self) -> np.ndarray:
        """Radii of the sampled table, 1-px steps covering [0, r_max]"""
        return np.arange(0, np.ceil(self.r_max) + 1, dtype=float)

    @property
    def table(self) -> np.ndarray:
        """(r, delta_r) pairs at 1-px steps"""
        r = self.table_r
        return np.column_stack([r, self.delta_r(r)])

    def delta_phi(self, r):
        return np.polyval(self.cubic, r)

    def delta_r(self, r):
        return phase_to_distortion(self.cubic, self.f0, r)

    def forward(self, r_prime):
        """Undistorted radius of a distorted radius"""
        r_prime = np.asarray(r_prime, dtype=float)
        return r_prime + self.delta_r(r_prime)

    def forward_slope(self, r_prime):
        return 1 + np.polyval(np.polyder(self.cubic), r_prime) / (2 * np.pi * self.f0)

    @property
    def r_out_max(self) -> float:
        """Largest undistorted radius the profile can invert"""
        return float(self.forward(self.table_r[-1]))

    def inverse(self, r):
        """
        |  Distorted radius r' with r' + delta_r(r') = r.
        |  Interpolated on the 1-px table, then refined by one Newton step on the polynomial.
        |  Radii beyond the table are returned as NaN, radii below delta_r(0) as 0.
        """
        r = np.asarray(r, dtype=float)
        if self.is_identity:
            return r.copy()
        table_r = self.table_r
        table_m = self.forward(table_r)
        r_prime = np.interp(r, table_m, table_r, right=np.nan)
        r_prime = r_prime - (self.forward(r_prime) - r) / self.forward_slope(r_prime)
        # radii below delta_r(0) map to the center, never onto the opposite ray
        return np.maximum(r_prime, 0.0)

    def __str__(self):
        coeffs = ", ".join(f"{c:.5g}" for c in self.cubic)
        return (f"DistortionProfile(dims={self.dims}, center={self.center}, f0={self.f0:.6g}, "
                f"r_max={self.r_max:.1f}, cubic=[{coeffs}], delta_r(r_max)={float(self.delta_r(self.r_max)):.3f} px)")


def fit_undistorted_line(phase: PhaseProfile, n_points: int = 9) -> LinearFit:
    """
    |  Least-squares line over the n_points samples centred on the center column

    :param phase: smoothed (or unwrapped) PhaseProfile
    :param n_points: odd window size, at least 3

    Output:

    :param fit: LinearFit with k > 0
    """
    if n_points < 3 or n_points % 2 == 0:
        raise ParameterError(f"n_points should be odd and at least 3, got {n_points}")
    if phase.state not in (SMOOTHED, UNWRAPPED):
        raise ParameterError(f"The line fit needs an unwrapped or smoothed profile, got {phase.state}")

    c = phase.center_index
    half = (n_points - 1) // 2
    if c - half < 0 or c + half > len(phase) - 1:
        raise ParameterError(f"Fit window {c - half}..{c + half} is outside the profile of length {len(phase)}")

    u = np.arange(-half, half + 1, dtype=float)
    window = phase.values[c - half:c + half + 1]
    k, phi_center = polyfit_coefficients(u, window, 1)
    if k <= 0:
        raise OrientationError(f"Fitted carrier slope k={k:.4g} rad/pixel is not positive, the fringe "
                               f"templates were captured in the wrong orientation")

    residual_rms = float(np.sqrt(np.mean((window - (k * u + phi_center)) ** 2)))
    return LinearFit(float(k), float(phi_center - k * c), c, float(phi_center), residual_rms)


def modulated_phase(phase: PhaseProfile, fit: LinearFit) -> np.ndarray:
    """Signed modulated phase per column: measured phase minus the undistorted line"""
    x = np.arange(len(phase), dtype=float)
    return phase.values - fit.evaluate(x)


def _check_center(delta, center_index):
    delta = np.asarray(delta, dtype=float)
    if not 0 < center_index < delta.size - 1:
        raise ParameterError(f"center_index {center_index} should be interior to the profile of length {delta.size}")
    return delta


def symmetrize(delta, center_index: int) -> ModulatedPhase:
    """
    |  Rotate the negative branch by 180 degrees about the center and average it with the positive branch
    |  avg(u) = (delta(x0 + u) - delta(x0 - u)) / 2,  u = 0..min(x0, width - 1 - x0)
    """
    delta = _check_center(delta, center_index)
    u_max = min(center_index, delta.size - 1 - center_index)
    u = np.arange(u_max + 1)
    avg = (delta[center_index + u] - delta[center_index - u]) / 2
    return ModulatedPhase(avg, AVERAGED)


def positive_branch(delta, center_index: int) -> ModulatedPhase:
    """Modulated phase along the positive direction only"""
    delta = _check_center(delta, center_index)
    return ModulatedPhase(delta[center_index:], POSITIVE_BRANCH)


def extend_profile(avg: ModulatedPhase, r_max: float, degree: int = 3) -> np.ndarray:
    """
    |  Least-squares polynomial (cubic by default) of the modulated phase over the measured radii,
    |  used to extrapolate out to r_max

    Output:

    :param coefficients: ordered from high order items to low order items
    """
    if len(avg) < degree + 1:
        raise InsufficientDataError(f"Extending with degree {degree} needs at least {degree + 1} samples, "
                                    f"got {len(avg)}")
    if r_max < len(avg) - 1:
        raise ParameterError(f"r_max {r_max} is inside the measured range 0..{len(avg) - 1}")
    return polyfit_coefficients(avg.u, avg.values, degree)


def profile_stages(phase: PhaseProfile, dims: Tuple[int, int], n_points: int = 9, symmetrize_branches: bool = True,
                   extend_degree: int = 3, provenance: str = ''):
    """
    |  Smoothed central-row phase to distortion profile, keeping every stage:
    |  line fit, modulated phase, symmetrization, polynomial extension, packaging

    :param phase: smoothed PhaseProfile of the central row
    :param dims: (width, height) of the capture
    :param n_points: line fit window
    :param symmetrize_branches: average both branches (True) or use the positive branch only (False)
    :param extend_degree: degree of the extension polynomial
    :param provenance: free text stored with the profile

    Output:

    :param fit: LinearFit of the undistorted center
    :param delta: signed modulated phase per column
    :param branch: averaged or positive-branch ModulatedPhase
    :param profile: DistortionProfile centred at (width / 2, height / 2)
    """
    width, height = dims
    if len(phase) != width:
        raise ShapeError(f"Phase profile has {len(phase)} columns but the capture is {width} wide")

    fit = fit_undistorted_line(phase, n_points)
    delta = modulated_phase(phase, fit)
    branch = symmetrize(delta, phase.center_index) if symmetrize_branches else \
        positive_branch(delta, phase.center_index)
    r_max = half_diagonal(width, height)
    coefficients = extend_profile(branch, r_max, extend_degree)
    logging.info(f"Profile built: f0={fit.f0:.6g} cycles/pixel, {len(branch)} {branch.source} samples "
                 f"extended to r_max={r_max:.1f} px")
    profile = DistortionProfile((width / 2, height / 2), fit.f0, coefficients, r_max, dims, provenance)
    return fit, delta, branch, profile


def build_profile(phase: PhaseProfile, dims: Tuple[int, int], n_points: int = 9, symmetrize_branches: bool = True,
                  extend_degree: int = 3, provenance: str = '') -> DistortionProfile:
    """Smoothed central-row phase to DistortionProfile, see profile_stages"""
    return profile_stages(phase, dims, n_points, symmetrize_branches, extend_degree, provenance)[-1]
