# Copyright © 2026 fringecal developers. All rights reserved.

# Redistribution and use in source and binary forms, with or without modification,
# are permitted under the terms of the BSD 3-clause license found in LICENSE.txt.

import numpy as np
from fringecal.exceptions import InsufficientDataError


def polyfit_coefficients(x, y, degree: int) -> np.ndarray:
    """
    |  Least-squares polynomial fit

    :param x: sample positions
    :param y: sample values
    :param degree: polynomial degree

    Output:

    :param coefficients: ordered from high order items to low order items (np.polyval order)
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size < degree + 1:
        raise InsufficientDataError(f"A degree {degree} fit needs at least {degree + 1} samples, got {x.size}")
    return np.polyfit(x, y, degree)


def polyfit_smooth(x, y, degree: int) -> np.ndarray:
    """
    |  Replace y by its least-squares polynomial evaluated at x.
    |  Fitted in a scaled domain so long rows (1920+ samples) stay well conditioned.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.size < degree + 1:
        raise InsufficientDataError(f"A degree {degree} fit needs at least {degree + 1} samples, got {x.size}")
    poly = np.polynomial.Polynomial.fit(x, y, degree)
    return poly(x)
