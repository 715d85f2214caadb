# Copyright © 2026 fringecal developers. All rights reserved.

# Redistribution and use in source and binary forms, with or without modification,
# are permitted under the terms of the BSD 3-clause license found in LICENSE.txt.

__version__ = '1.0.0'

from .exceptions import (ParameterError, ShapeError, InsufficientDataError, OrientationError,
                         NonMonotoneProfileError, ProfileFormatError)
from .calibration_settings import CalibrationSettings
from .template_gen import FringeParams, FringePattern, generate_fringe, generate_template_set, quantize
from .phase_demod import PhaseProfile, four_step_phase, unwrap_1d, smooth_cubic, wrap_phase
from .ifreq import RidgeResult, wavelet_ifreq, central_flatness
from .distortion_profile import (LinearFit, ModulatedPhase, DistortionProfile, fit_undistorted_line, modulated_phase,
                                 symmetrize, positive_branch, extend_profile, phase_to_distortion, build_profile)
from .remap import RemapGrid, build_remap_grid, bilinear_sample, calibrate_image, apply_grid
from .lens_calibration import LensCalibration
from . import simulator
from . import io_formats
