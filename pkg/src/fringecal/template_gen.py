# Copyright © 2026 fringecal developers. All rights reserved.

# Redistribution and use in source and binary forms, with or without modification,
# are permitted under the terms of the BSD 3-clause license found in LICENSE.txt.


# -*- coding: utf-8 -*-

import numpy as np
from typing import List, Union
from fringecal.exceptions import ParameterError, ShapeError

N_SHIFTS = 4        # Four-step phase shifting: 0, pi/2, pi, 3pi/2


class FringeParams:
    """
    |  Parameters of one sinusoidal fringe template
    |  I(x, y) = A + B * cos(2 * pi * f0 * x + shift_index * pi / 2)
    """

    def __init__(self, width: int, height: int, f0: float, A: float = 128.0, B: float = 100.0,
                 shift_index: int = 0, bit_depth: int = None):
        """
        :param width: template width in pixels
        :param height: template height in pixels
        :param f0: carrier frequency in cycles/pixel along x
        :param A: background intensity
        :param B: modulation amplitude
        :param shift_index: phase shift index in {0, 1, 2, 3}
        :param bit_depth: export bit depth (8 or 16) used to check A + B is representable. None to skip the check
        """
        self.width = width
        self.height = height
        self.f0 = f0
        self.A = A
        self.B = B
        self.shift_index = shift_index
        self.bit_depth = bit_depth
        self.validity_check()

    @property
    def width(self):
        return self._width

    @width.setter
    def width(self, width):
        if int(width) != width or width < 1:
            raise ParameterError(f"Template width should be a positive integer, got {width}")
        self._width = int(width)

    @property
    def height(self):
        return self._height

    @height.setter
    def height(self, height):
        if int(height) != height or height < 1:
            raise ParameterError(f"Template height should be a positive integer, got {height}")
        self._height = int(height)

    @property
    def f0(self):
        return self._f0

    @f0.setter
    def f0(self, f0):
        if not np.isfinite(f0) or f0 <= 0:
            raise ParameterError(f"Carrier frequency f0 should be greater than 0, got {f0}")
        self._f0 = float(f0)

    @property
    def shift_index(self):
        return self._shift_index

    @shift_index.setter
    def shift_index(self, shift_index):
        if shift_index not in range(N_SHIFTS):
            raise ParameterError(f"shift_index should be one of 0, 1, 2, 3, got {shift_index}")
        self._shift_index = int(shift_index)

    def validity_check(self):
        if not self.A > 0 or not self.B > 0:
            raise ParameterError(f"A and B should be greater than 0, got A={self.A}, B={self.B}")
        if self.A - self.B < 0:
            raise ParameterError(f"A - B should be non-negative, got A={self.A}, B={self.B}")
        if self.bit_depth is not None and self.A + self.B > 2 ** self.bit_depth - 1:
            raise ParameterError(f"A + B = {self.A + self.B} is not representable at {self.bit_depth} bits")

    @property
    def shift(self):
        return self.shift_index * np.pi / 2


class FringePattern:
    """
    Real-valued grayscale raster, stored as a (height, width) float array.
    Also used to carry captured images through the pipeline.
    """

    def __init__(self, data, params: FringeParams = None):
        data = np.asarray(data, dtype=float)
        if data.ndim != 2:
            raise ShapeError(f"A fringe pattern is a 2-D raster, got shape {data.shape}")
        if not np.all(np.isfinite(data)):
            raise ParameterError("Fringe pattern intensities should all be finite")
        self.data = data        # Intensities, data[y, x]
        self.params = params    # Generating parameters, None for captured images

    @property
    def width(self):
        return self.data.shape[1]

    @property
    def height(self):
        return self.data.shape[0]

    @property
    def dims(self):
        return self.width, self.height

    def __repr__(self):
        return f"FringePattern({self.width}x{self.height})"


def raster_data(image: Union[FringePattern, np.ndarray]) -> np.ndarray:
    """Plain float array of a FringePattern or array-like raster."""
    if isinstance(image, FringePattern):
        return image.data
    return np.asarray(image, dtype=float)


def fringe_intensity(x, f0: float, A: float, B: float, shift_index: int = 0):
    """
    Ideal fringe intensity at (possibly fractional) column positions x
    """
    return A + B * np.cos(2 * np.pi * f0 * np.asarray(x, dtype=float) + shift_index * np.pi / 2)


def generate_fringe(params: FringeParams) -> FringePattern:
    """
    |  One phase-shifted template. Constant along y, every row bit-identical.

    :param params: FringeParams

    Output:

    :param pattern: FringePattern of shape (height, width)
    """
    row = fringe_intensity(np.arange(params.width), params.f0, params.A, params.B, params.shift_index)
    return FringePattern(np.tile(row, (params.height, 1)), params)


def generate_template_set(width: int, height: int, f0: float, A: float = 128.0, B: float = 100.0,
                          bit_depth: int = None) -> List[FringePattern]:
    """
    Four templates in shift order 0, pi/2, pi, 3pi/2
    """
    return [generate_fringe(FringeParams(width, height, f0, A, B, shift_index, bit_depth))
            for shift_index in range(N_SHIFTS)]


def quantize(data, bit_depth: int = 8) -> np.ndarray:
    """
    Round to the nearest gray level and clip to the full scale of the export depth
    """
    if bit_depth == 8:
        dtype = np.uint8
    elif bit_depth == 16:
        dtype = np.uint16
    else:
        raise ParameterError(f"bit_depth should be 8 or 16, got {bit_depth}")
    data = np.rint(raster_data(data))
    return np.clip(data, 0, 2 ** bit_depth - 1).astype(dtype)
