# Copyright © 2026 fringecal developers. All rights reserved.

# Redistribution and use in source and binary forms, with or without modification,
# are permitted under the terms of the BSD 3-clause license found in LICENSE.txt.


# -*- coding: utf-8 -*-

"""
Ideal scenes, evaluated at undistorted pixel coordinates (x, y).
"""

import numpy as np
from fringecal.template_gen import fringe_intensity
from fringecal.exceptions import ParameterError


class FringeScene:
    """
    One phase-shifted fringe template. freq_scale stands in for the screen distance: moving the
    screen closer makes the displayed fringes appear coarser in the capture.
    """

    def __init__(self, f0: float = 0.0625, A: float = 128.0, B: float = 100.0, shift_index: int = 0,
                 freq_scale: float = 1.0):
        if not f0 > 0 or not freq_scale > 0:
            raise ParameterError(f"f0 and freq_scale should be greater than 0, got {f0}, {freq_scale}")
        self.f0 = f0
        self.A = A
        self.B = B
        self.shift_index = shift_index
        self.freq_scale = freq_scale

    @property
    def frequency(self):
        return self.f0 * self.freq_scale

    def __call__(self, x, y):
        x = np.asarray(x, dtype=float)
        return fringe_intensity(x, self.frequency, self.A, self.B, self.shift_index) * np.ones_like(y)


class CheckerboardScene:
    """
    Checkerboard of square cells with softened edges, one cell corner at the origin (x0, y0).
    Each axis is a tanh-saturated sine, so edges sit exactly at x0 + m * size and have a width of
    about `softness` pixels.
    """

    def __init__(self, size: float = 64, origin=(0.0, 0.0), A: float = 128.0, B: float = 100.0,
                 softness: float = 1.5):
        if not size > 0 or not softness > 0:
            raise ParameterError(f"Cell size and softness should be greater than 0, got {size}, {softness}")
        self.size = size
        self.origin = origin
        self.A = A
        self.B = B
        self.softness = softness

    def _square(self, t):
        return np.tanh(np.sin(np.pi * t / self.size) * self.size / (np.pi * self.softness))

    def __call__(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        return self.A + self.B * self._square(x - self.origin[0]) * self._square(y - self.origin[1])


class LineGridScene:
    """
    Bright straight lines of Gaussian cross-section on a dark background, spaced `spacing`
    pixels apart in both directions through the origin.
    """

    def __init__(self, spacing: float = 48, origin=(0.0, 0.0), background: float = 20.0, peak: float = 235.0,
                 line_width: float = 1.5):
        if not spacing > 0 or not line_width > 0:
            raise ParameterError(f"Spacing and line width should be greater than 0, got {spacing}, {line_width}")
        self.spacing = spacing
        self.origin = origin
        self.background = background
        self.peak = peak
        self.line_width = line_width        # Gaussian sigma in pixels

    def _line(self, t):
        d = np.abs(np.remainder(t + self.spacing / 2, self.spacing) - self.spacing / 2)
        return np.exp(-d ** 2 / (2 * self.line_width ** 2))

    def __call__(self, x, y):
        x = np.asarray(x, dtype=float)
        y = np.asarray(y, dtype=float)
        lines = np.maximum(self._line(x - self.origin[0]), self._line(y - self.origin[1]))
        return self.background + (self.peak - self.background) * lines
