# Copyright © 2026 fringecal developers. All rights reserved.

# Redistribution and use in source and binary forms, with or without modification,
# are permitted under the terms of the BSD 3-clause license found in LICENSE.txt.


# -*- coding: utf-8 -*-

import numpy as np
from typing import Tuple
from fringecal.exceptions import ParameterError, NonMonotoneProfileError

POLYNOMIAL = 'polynomial'
DIVISION = 'division'

NEWTON_ITERATIONS = 6
GRID_SAMPLES = 20001
GRID_EXTENT = 10            # monotone range searched up to GRID_EXTENT * r_max


class RadialModel:
    """
    |  Parametric radial lens model, undistorted radius r_u to distorted radius r_d

    |  polynomial: r_d = r_u * (1 + k1 * r_u^2 + k2 * r_u^4), params (k1, k2)
    |  division:   r_d = r_u / (1 + lam * r_u^2), params (lam,)

    :param kind: 'polynomial' or 'division'
    :param params: model coefficients, radii in pixels
    :param center: (x0, y0) distortion center in pixels
    :param r_max: largest distorted radius the model has to cover (frame half-diagonal)
    """

    def __init__(self, kind: str, params, center: Tuple[float, float], r_max: float):
        kind = str(kind).lower()
        params = tuple(float(p) for p in np.atleast_1d(params))
        if kind == POLYNOMIAL:
            if len(params) == 1:
                params = params + (0.0,)
            if len(params) != 2:
                raise ParameterError(f"The polynomial model takes (k1, k2), got {params}")
        elif kind == DIVISION:
            if len(params) != 1:
                raise ParameterError(f"The division model takes (lambda,), got {params}")
        else:
            raise ParameterError(f"Model kind should be '{POLYNOMIAL}' or '{DIVISION}', got '{kind}'")
        if not np.all(np.isfinite(params)):
            raise ParameterError(f"Model coefficients should be finite, got {params}")
        if not r_max > 0:
            raise ParameterError(f"r_max should be greater than 0, got {r_max}")

        self.kind = kind
        self.params = params
        self.center = (float(center[0]), float(center[1]))
        self.r_max = float(r_max)

        # Tabulated monotone part of the forward map, used to seed the inverse
        r_u = np.linspace(0, GRID_EXTENT * self.r_max, GRID_SAMPLES)
        r_d = self.forward(r_u)
        rising = np.diff(r_d) > 0
        end = r_u.size if np.all(rising) else int(np.argmin(rising)) + 1
        self._grid_u = r_u[:end]
        self._grid_d = r_d[:end]
        self.r_d_limit = float(self._grid_d[-1])    # largest distorted radius the model reaches monotonically
        if self.r_d_limit < self.r_max:
            raise NonMonotoneProfileError(f"{kind} model {params} is not strictly increasing over the frame: "
                                          f"r_d peaks at {self.r_d_limit:.1f} px below r_max={self.r_max:.1f} px")

    @classmethod
    def for_dims(cls, kind: str, params, dims: Tuple[int, int]):
        """Model centred on a (width, height) frame, covering its half-diagonal"""
        width, height = dims
        return cls(kind, params, (width / 2, height / 2), float(np.hypot(width / 2, height / 2)))

    @classmethod
    def identity(cls, dims: Tuple[int, int]):
        return cls.for_dims(POLYNOMIAL, (0.0, 0.0), dims)

    @property
    def is_identity(self) -> bool:
        return not any(self.params)

    def forward(self, r_u):
        r_u = np.asarray(r_u, dtype=float)
        if self.kind == DIVISION:
            lam, = self.params
            return r_u / (1 + lam * r_u ** 2)
        k1, k2 = self.params
        return r_u * (1 + k1 * r_u ** 2 + k2 * r_u ** 4)

    def derivative(self, r_u):
        r_u = np.asarray(r_u, dtype=float)
        if self.kind == DIVISION:
            lam, = self.params
            return (1 - lam * r_u ** 2) / (1 + lam * r_u ** 2) ** 2
        k1, k2 = self.params
        return 1 + 3 * k1 * r_u ** 2 + 5 * k2 * r_u ** 4

    def inverse(self, r_d):
        r_d = np.asarray(r_d, dtype=float)
        if np.any(r_d < 0) or np.any(r_d > self.r_d_limit) or not np.all(np.isfinite(r_d)):
            raise ParameterError(f"Distorted radius outside the model's monotone range [0, {self.r_d_limit:.1f}]")
        if self.is_identity:
            return r_d.copy()

        if self.kind == DIVISION:
            lam, = self.params
            # Stable root of lam * r_d * r_u^2 - r_u + r_d = 0
            return 2 * r_d / (1 + np.sqrt(np.maximum(1 - 4 * lam * r_d ** 2, 0.0)))

        r_u = np.interp(r_d, self._grid_d, self._grid_u)
        for _ in range(NEWTON_ITERATIONS):
            r_u = r_u - (self.forward(r_u) - r_d) / self.derivative(r_u)
        return r_u

    def __repr__(self):
        return f"RadialModel({self.kind!r}, {self.params}, center={self.center}, r_max={self.r_max:.1f})"


def model_forward(model: RadialModel, r_u):
    """Distorted radius of an undistorted radius"""
    r_u = np.asarray(r_u, dtype=float)
    if np.any(r_u < 0):
        raise ParameterError("Undistorted radius should be non-negative")
    return model.forward(r_u)


def model_inverse(model: RadialModel, r_d):
    """Undistorted radius of a distorted radius"""
    return model.inverse(r_d)
