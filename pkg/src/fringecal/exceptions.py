# Copyright © 2026 fringecal developers. All rights reserved.

# Redistribution and use in source and binary forms, with or without modification,
# are permitted under the terms of the BSD 3-clause license found in LICENSE.txt.

"""
Error taxonomy. Every error is a ValueError so that callers written against plain
ValueError (the way parameter checks have always failed) keep working.
"""


class ParameterError(ValueError):
    """Invalid numeric or categorical parameter."""


class ShapeError(ValueError):
    """Raster dimensions do not agree."""


class InsufficientDataError(ValueError):
    """Too few samples for the requested fit."""


class OrientationError(ValueError):
    """Fitted carrier slope is not positive: the fringes run the wrong way."""


class NonMonotoneProfileError(ValueError):
    """Radial map r -> r + delta_r(r) is not strictly increasing."""


class ProfileFormatError(ValueError):
    """Malformed or unsupported distortion profile document."""
