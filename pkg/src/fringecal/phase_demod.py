# Copyright © 2026 fringecal developers. All rights reserved.

# Redistribution and use in source and binary forms, with or without modification,
# are permitted under the terms of the BSD 3-clause license found in LICENSE.txt.


# -*- coding: utf-8 -*-

import logging
import numpy as np
from fringecal.template_gen import raster_data
from fringecal.auxiliary_funcs.poly_fit import polyfit_smooth
from fringecal.exceptions import ParameterError, ShapeError, InsufficientDataError

WRAPPED = 'wrapped'
UNWRAPPED = 'unwrapped'
SMOOTHED = 'smoothed'
STATES = (WRAPPED, UNWRAPPED, SMOOTHED)


class PhaseProfile:
    """
    |  Phase along the central row, in radians, indexed by column.

    :param values: 1-D phase array
    :param state: 'wrapped', 'unwrapped' or 'smoothed'
    :param center_index: column index of the image center x0
    :param undefined: boolean mask of contrast-dropout columns (filled from a neighbor)
    """

    def __init__(self, values, state: str, center_index: int, undefined=None):
        values = np.asarray(values, dtype=float)
        if values.ndim != 1:
            raise ShapeError(f"Phase profile should be 1-D, got shape {values.shape}")
        if state not in STATES:
            raise ParameterError(f"Phase profile state should be one of {STATES}, got {state}")
        if not 0 <= center_index < values.size:
            raise ParameterError(f"center_index {center_index} is outside the profile of length {values.size}")
        if state == WRAPPED and (np.any(values > np.pi) or np.any(values <= -np.pi)):
            raise ParameterError("Wrapped phase values should lie in (-pi, pi]")

        self.values = values
        self.state = state
        self.center_index = int(center_index)
        self.undefined = np.zeros(values.size, dtype=bool) if undefined is None else np.asarray(undefined, bool)

    def __len__(self):
        return self.values.size

    def is_jump_free(self) -> bool:
        return bool(np.all(np.abs(np.diff(self.values)) < np.pi))

    def __repr__(self):
        return f"PhaseProfile({self.state}, n={self.values.size}, center_index={self.center_index})"


def central_row_index(height: int, row: int = None) -> int:
    """Row used for demodulation: floor(height / 2) unless given"""
    if row is None:
        return height // 2
    if not 0 <= row < height:
        raise ParameterError(f"Row {row} is outside an image of height {height}")
    return int(row)


def wrap_phase(values) -> np.ndarray:
    """Wrap into (-pi, pi]"""
    values = np.asarray(values, dtype=float)
    return np.pi - np.mod(np.pi - values, 2 * np.pi)


def _fill_from_nearest(values: np.ndarray, undefined: np.ndarray) -> np.ndarray:
    valid_idx = np.flatnonzero(~undefined)
    idx = np.arange(values.size)
    pos = np.searchsorted(valid_idx, idx)
    left = valid_idx[np.clip(pos - 1, 0, valid_idx.size - 1)]
    right = valid_idx[np.clip(pos, 0, valid_idx.size - 1)]
    nearest = np.where(np.abs(idx - left) <= np.abs(right - idx), left, right)
    return values[nearest]


def four_step_phase(I1, I2, I3, I4, row: int = None, eps: float = 1e-9) -> PhaseProfile:
    """
    |  Four-step phase demodulation of one row
    |  phi = atan2(I4 - I2, I1 - I3), full four-quadrant range (-pi, pi]

    :param I1: fringe image with shift 0 (FringePattern or array)
    :param I2: fringe image with shift pi/2
    :param I3: fringe image with shift pi
    :param I4: fringe image with shift 3pi/2
    :param row: row index, default floor(height / 2)
    :param eps: columns where both |I4 - I2| and |I1 - I3| are below eps are undefined

    Output:

    :param phase: wrapped PhaseProfile. Undefined columns take the nearest valid column's value
    """
    images = [raster_data(image) for image in (I1, I2, I3, I4)]
    shape = images[0].shape
    if any(image.shape != shape for image in images[1:]):
        raise ShapeError(f"Fringe images should share dimensions, got {[image.shape for image in images]}")
    if len(shape) != 2:
        raise ShapeError(f"Fringe images should be 2-D grayscale rasters, got shape {shape}")

    height, width = shape
    row = central_row_index(height, row)
    i1, i2, i3, i4 = (image[row] for image in images)

    numerator = i4 - i2         # 2B sin(phi)
    denominator = i1 - i3       # 2B cos(phi)
    phi = wrap_phase(np.arctan2(numerator, denominator))

    undefined = (np.abs(numerator) < eps) & (np.abs(denominator) < eps)
    if np.all(undefined):
        raise InsufficientDataError(f"Row {row} carries no fringe contrast")
    if np.any(undefined):
        logging.warning(f"{int(undefined.sum())} columns of row {row} have no fringe contrast and take the "
                        f"nearest valid phase")
        phi = _fill_from_nearest(phi, undefined)

    return PhaseProfile(phi, WRAPPED, width // 2, undefined)


def unwrap_1d(wrapped: PhaseProfile) -> PhaseProfile:
    """
    Sequential (Itoh) unwrapping outward from the center column in both directions.
    The center sample keeps its wrapped value.
    """
    if wrapped.state != WRAPPED:
        raise ParameterError(f"unwrap_1d expects a wrapped profile, got {wrapped.state}")

    c = wrapped.center_index
    right = np.unwrap(wrapped.values[c:])
    left = np.unwrap(wrapped.values[:c + 1][::-1])[::-1]
    values = np.concatenate([left[:-1], right])
    return PhaseProfile(values, UNWRAPPED, c, wrapped.undefined)


def smooth_cubic(unwrapped: PhaseProfile, degree: int = 3) -> PhaseProfile:
    """
    Least-squares polynomial (cubic by default) de-noising of the unwrapped phase
    """
    if unwrapped.state == WRAPPED:
        raise ParameterError("smooth_cubic expects an unwrapped profile")
    if len(unwrapped) < degree + 1:
        raise InsufficientDataError(f"Smoothing with degree {degree} needs at least {degree + 1} samples, "
                                    f"got {len(unwrapped)}")

    x = np.arange(len(unwrapped), dtype=float)
    values = polyfit_smooth(x, unwrapped.values, degree)
    return PhaseProfile(values, SMOOTHED, unwrapped.center_index, unwrapped.undefined)
