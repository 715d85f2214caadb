# Copyright © 2026 fringecal developers. All rights reserved.

# Redistribution and use in source and binary forms, with or without modification,
# are permitted under the terms of the BSD 3-clause license found in LICENSE.txt.


# -*- coding: utf-8 -*-

"""
Instantaneous frequency of a fringe row by continuous-wavelet ridge detection.

The row is convolved in the spatial domain with complex Morlet wavelets on a
geometric frequency grid. For each column the frequency of the largest
coefficient magnitude is the ridge. Wavelets are L1 normalized so that a pure
sinusoid produces the same peak magnitude at every scale and the ridge sits on
the true frequency.
"""

import logging
import numpy as np
import scipy.signal as ssig
from fringecal.auxiliary_funcs.parallel import parallel_map
from fringecal.exceptions import ParameterError, InsufficientDataError

MIN_SIGNAL_LENGTH = 64
SUPPORT_SIGMAS = 4          # Wavelet support truncated at +-4 standard deviations
DEFAULT_OMEGA0 = 6.0


class RidgeResult:
    """
    |  Wavelet ridge of one row

    :param frequencies: ridge frequency per column in cycles/pixel (NaN when there is no ridge)
    :param coefficients_max: winning wavelet coefficient magnitude per column
    :param scale_grid: analysed frequency grid, increasing
    :param scale_index: grid index of the ridge per column (-1 when there is no ridge)
    :param low_confidence: columns within half a wavelet support of either edge
    :param has_ridge: False for a constant signal or a degenerate grid
    """

    def __init__(self, frequencies, coefficients_max, scale_grid, scale_index=None, low_confidence=None,
                 has_ridge=True):
        self.frequencies = np.asarray(frequencies, dtype=float)
        self.coefficients_max = np.asarray(coefficients_max, dtype=float)
        self.scale_grid = np.asarray(scale_grid, dtype=float)
        if scale_index is None:
            scale_index = nearest_grid_index(self.scale_grid, self.frequencies)
        self.scale_index = np.asarray(scale_index, dtype=int)
        if low_confidence is None:
            low_confidence = np.zeros(self.frequencies.size, dtype=bool)
        self.low_confidence = np.asarray(low_confidence, dtype=bool)
        self.has_ridge = has_ridge

    def __len__(self):
        return self.frequencies.size

    @property
    def grid_ratio(self):
        """Ratio between neighbouring grid frequencies"""
        if self.scale_grid.size < 2:
            return np.nan
        return self.scale_grid[1] / self.scale_grid[0]

    def grid_steps(self, f_a, f_b) -> float:
        """Distance between two frequencies in steps of the geometric grid"""
        return float(abs(np.log(f_a / f_b)) / np.log(self.grid_ratio))


class FlatnessReport:
    """
    Central flatness check of a ridge
    """

    def __init__(self, deviation_steps, deviation_frequency, median_frequency, window, passed, at_grid_edge=False):
        self.deviation_steps = deviation_steps              # max |index - median index| over the window
        self.deviation_frequency = deviation_frequency      # max |f - median f| over the window, cycles/pixel
        self.median_frequency = median_frequency            # median ridge frequency in the window
        self.window = window                                # (first, last) column of the window
        self.passed = passed                                # within one grid step and clear of the grid edges
        self.at_grid_edge = at_grid_edge                    # ridge pinned to the first or last analysed frequency

    def __str__(self):
        verdict = "pass" if self.passed else "fail"
        return (f"central flatness {verdict}: deviation {self.deviation_steps} grid steps "
                f"({self.deviation_frequency:.3g} cycles/pixel) over columns {self.window[0]}..{self.window[1]}, "
                f"median frequency {self.median_frequency:.6g} cycles/pixel"
                + (", ridge at the edge of the frequency grid" if self.at_grid_edge else ""))


def nearest_grid_index(scale_grid, frequencies):
    scale_grid = np.asarray(scale_grid, dtype=float)
    frequencies = np.asarray(frequencies, dtype=float)
    if scale_grid.size == 0:
        return np.full(frequencies.shape, -1)
    idx = np.abs(frequencies[..., None] - scale_grid).argmin(axis=-1)
    return np.where(np.isfinite(frequencies), idx, -1)


def frequency_grid(f_min: float, f_max: float, n_scales: int) -> np.ndarray:
    """Geometric grid of n_scales frequencies spanning [f_min, f_max]"""
    return np.geomspace(f_min, f_max, n_scales)


def morlet_wavelet(frequency: float, omega0: float = DEFAULT_OMEGA0) -> np.ndarray:
    """
    |  Complex Morlet wavelet tuned to frequency (cycles/pixel), sampled on integer offsets

    |  psi(t) = (exp(i omega0 t / s) - exp(-omega0^2 / 2)) exp(-t^2 / (2 s^2)) / s,  s = omega0 / (2 pi f)
    |  The second term makes the wavelet zero mean. The 1/s factor is the L1 normalization.
    """
    s = omega0 / (2 * np.pi * frequency)
    half = int(np.ceil(SUPPORT_SIGMAS * s))
    t = np.arange(-half, half + 1, dtype=float)
    envelope = np.exp(-t ** 2 / (2 * s ** 2))
    return (np.exp(1j * omega0 * t / s) - np.exp(-omega0 ** 2 / 2)) * envelope / s


def _no_ridge(n, scale_grid):
    return RidgeResult(np.full(n, np.nan), np.zeros(n), scale_grid, np.full(n, -1), np.ones(n, dtype=bool),
                       has_ridge=False)


def wavelet_ifreq(signal, f_min: float, f_max: float, n_scales: int = 200, omega0: float = DEFAULT_OMEGA0,
                  threads: int = None) -> RidgeResult:
    """
    |  Ridge instantaneous frequency of a 1-D intensity signal

    :param signal: 1-D intensity array, at least 64 samples
    :param f_min: lowest analysed frequency, cycles/pixel
    :param f_max: highest analysed frequency, below Nyquist
    :param n_scales: number of grid frequencies
    :param omega0: Morlet centre frequency parameter
    :param threads: worker threads for the scale sweep

    Output:

    :param ridge: RidgeResult. A constant signal or a degenerate grid gives has_ridge=False
    """
    signal = np.asarray(signal, dtype=float)
    if signal.ndim != 1:
        raise ParameterError(f"wavelet_ifreq expects a 1-D signal, got shape {signal.shape}")
    n = signal.size
    if n < MIN_SIGNAL_LENGTH:
        raise InsufficientDataError(f"Signal should have at least {MIN_SIGNAL_LENGTH} samples, got {n}")
    if not f_min > 0 or not f_max < 0.5:
        raise ParameterError(f"Frequency range should satisfy 0 < f_min < f_max < 0.5, got [{f_min}, {f_max}]")

    if f_min >= f_max or n_scales < 2:
        logging.warning(f"Degenerate wavelet grid [{f_min}, {f_max}] with {n_scales} scales, no ridge computed")
        return _no_ridge(n, np.array([]) if n_scales < 1 else np.geomspace(f_min, f_max, max(n_scales, 1)))

    scale_grid = frequency_grid(f_min, f_max, n_scales)
    if np.ptp(signal) == 0:
        logging.warning("Constant signal, no wavelet ridge")
        return _no_ridge(n, scale_grid)
    centered = signal - signal.mean()

    def magnitude(frequency):
        return np.abs(ssig.convolve(centered, morlet_wavelet(frequency, omega0), mode='same', method='direct'))

    coefficients = np.vstack(parallel_map(magnitude, scale_grid, threads))      # (n_scales, n)

    scale_index = coefficients.argmax(axis=0)
    columns = np.arange(n)
    coefficients_max = coefficients[scale_index, columns]
    frequencies = scale_grid[scale_index]

    half_support = SUPPORT_SIGMAS * omega0 / (2 * np.pi * frequencies)
    low_confidence = (columns < half_support) | (columns > n - 1 - half_support)

    return RidgeResult(frequencies, coefficients_max, scale_grid, scale_index, low_confidence)


def central_flatness(ridge: RidgeResult, window: int = 9, center_index: int = None) -> FlatnessReport:
    """
    |  Flatness of the ridge over a window centred on the image center

    :param ridge: RidgeResult of the central row
    :param window: odd number of columns
    :param center_index: window centre, default len(ridge) // 2

    Output:

    :param report: FlatnessReport, passed when the ridge stays within one grid step of its median
                   and never touches the first or last grid frequency
    """
    n = len(ridge)
    if center_index is None:
        center_index = n // 2
    if window < 1 or window % 2 == 0:
        raise ParameterError(f"Flatness window should be a positive odd number of columns, got {window}")
    half = (window - 1) // 2
    first, last = center_index - half, center_index + half
    if first < 0 or last > n - 1:
        raise ParameterError(f"Flatness window {first}..{last} is outside the ridge of length {n}")

    if not ridge.has_ridge:
        return FlatnessReport(np.inf, np.inf, np.nan, (first, last), False)

    idx = ridge.scale_index[first:last + 1]
    freqs = ridge.frequencies[first:last + 1]
    median_idx = np.median(idx)
    median_f = float(np.median(freqs))
    deviation_steps = float(np.max(np.abs(idx - median_idx)))
    deviation_frequency = float(np.max(np.abs(freqs - median_f)))

    # a ridge pinned to either end of the grid means the carrier lies outside the analysed range
    at_grid_edge = bool(np.any((idx == 0) | (idx == ridge.scale_grid.size - 1)))
    return FlatnessReport(deviation_steps, deviation_frequency, median_f, (first, last),
                          deviation_steps <= 1 and not at_grid_edge, at_grid_edge)
