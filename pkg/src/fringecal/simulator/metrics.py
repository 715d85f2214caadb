# Copyright © 2026 fringecal developers. All rights reserved.

# Redistribution and use in source and binary forms, with or without modification,
# are permitted under the terms of the BSD 3-clause license found in LICENSE.txt.


# -*- coding: utf-8 -*-

import logging
import numpy as np
from fringecal.template_gen import raster_data
from fringecal.auxiliary_funcs.poly_fit import polyfit_coefficients
from fringecal.exceptions import ParameterError, InsufficientDataError

CROSSING_REACH = 3          # columns searched on each side of the gradient peak


def _edge_position(row, nominal, search):
    """
    Sub-pixel position of the strongest intensity step within +-search of the nominal column:
    the crossing of the local mid level (max + min) / 2 nearest the gradient peak, linearly
    interpolated between samples. Returns (position, strength).
    """
    lo = max(int(np.floor(nominal - search)), 0)
    hi = min(int(np.ceil(nominal + search)), row.size - 1)
    if hi - lo < 2 * CROSSING_REACH + 1:
        return np.nan, 0.0
    segment = row[lo:hi + 1]
    gradient = np.abs(np.diff(segment))     # gradient[i] sits between columns lo + i and lo + i + 1
    peak = int(np.argmax(gradient))
    level = (segment.max() + segment.min()) / 2

    shifted = segment - level
    first = max(peak - CROSSING_REACH, 0)
    last = min(peak + CROSSING_REACH, gradient.size - 1)
    candidates = [i for i in range(first, last + 1)
                  if shifted[i] * shifted[i + 1] <= 0 and shifted[i] != shifted[i + 1]]
    if not candidates:
        return np.nan, 0.0
    i = min(candidates, key=lambda c: abs(c - peak))
    t = shifted[i] / (shifted[i] - shifted[i + 1])
    return lo + i + t, gradient[peak]


def edge_straightness(image, edge_offsets=(-192, -128, -64, 64, 128, 192), row_halfspan: int = 200,
                      search: float = 16, center=None, min_contrast: float = 0.25) -> float:
    """
    |  Straightness of the vertical edges of a checkerboard capture

    |  Each edge near center_x + offset is located to sub-pixel precision on every row within
    |  row_halfspan of the center, a straight line x = a + b * y is fitted per edge, and the pooled
    |  RMS of the fit residuals is returned. Rows where an edge has less than min_contrast of its
    |  strongest step (close to a horizontal cell border) are skipped.

    :param image: (height, width) grayscale raster
    :param edge_offsets: nominal edge columns relative to the center
    :param row_halfspan: rows used on each side of the center
    :param search: half-width of the search window around each nominal edge
    :param center: (x0, y0), default (width / 2, height / 2)
    :param min_contrast: relative gradient threshold

    Output:

    :param rms: pooled straightness residual in pixels
    """
    data = raster_data(image)
    if data.ndim != 2:
        raise ParameterError("edge_straightness expects a grayscale raster")
    height, width = data.shape
    cx, cy = (width / 2, height / 2) if center is None else center
    rows = np.arange(max(int(cy - row_halfspan), 0), min(int(cy + row_halfspan), height - 1) + 1)

    residuals = []
    for offset in edge_offsets:
        found = np.array([_edge_position(data[y], cx + offset, search) for y in rows])
        positions, strength = found[:, 0], found[:, 1]
        keep = np.isfinite(positions) & (strength >= min_contrast * np.max(strength))
        if keep.sum() < 3:
            logging.warning(f"Edge at offset {offset} was found on fewer than 3 rows and is skipped")
            continue
        y = rows[keep].astype(float)
        slope, intercept = polyfit_coefficients(y, positions[keep], 1)
        residuals.append(positions[keep] - (slope * y + intercept))

    if not residuals:
        raise InsufficientDataError("No checkerboard edge could be located")
    residuals = np.concatenate(residuals)
    return float(np.sqrt(np.mean(residuals ** 2)))
