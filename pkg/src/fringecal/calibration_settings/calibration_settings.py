# Copyright © 2026 fringecal developers. All rights reserved.

# Redistribution and use in source and binary forms, with or without modification,
# are permitted under the terms of the BSD 3-clause license found in LICENSE.txt.


# -*- coding: utf-8 -*-

import pandas as pd
import numpy as np
import pathlib
import os
import logging
from fringecal.exceptions import ParameterError


class CalibrationSettings:
    """
    |  Calibration session parameters.
    |  Defaults are assigned first, then overridden from the parameter CSV file, then from keyword arguments.
    |  Every setter validates against the preconditions of the module that consumes the parameter.
    """
    parameters_list = ['FRINGE_F0', 'FRINGE_A', 'FRINGE_B', 'TEMPLATE_WIDTH', 'TEMPLATE_HEIGHT', 'BIT_DEPTH',

                       'CENTRAL_ROW', 'N_POINTS', 'SMOOTH_DEGREE', 'EXTEND_DEGREE', 'SYMMETRIZE', 'UNDEFINED_EPS',

                       'WAVELET_OMEGA0', 'IFREQ_N_SCALES', 'IFREQ_F_MIN', 'IFREQ_F_MAX', 'FLATNESS_WINDOW',

                       'FILL_VALUE', 'EXPAND', 'THREADS',

                       'NOISE_SIGMA', 'VIGNETTING', 'SEED',
                       ]

    # Creating object slots, so incorrect usage of variable names are rejected.
    __slots__ = tuple(['_' + param for param in parameters_list]) + tuple(['param_inputs'])

    def __init__(self,
                 param_file_path=pathlib.Path(os.path.dirname(__file__)).joinpath("../Parameters",
                                                                                  "calibration-parameters.csv"),
                 **kwargs):
        """
        Creating a calibration settings object

        :param param_file_path: Parameter CSV file (PARAMETER,VALUE rows). None to use built-in defaults only.
        """

        # Template defaults
        self._FRINGE_F0 = 0.0625
        self._FRINGE_A = 128.0
        self._FRINGE_B = 100.0
        self._TEMPLATE_WIDTH = 1920
        self._TEMPLATE_HEIGHT = 1080
        self._BIT_DEPTH = 8

        # Phase analysis and profile defaults
        self._CENTRAL_ROW = None
        self._N_POINTS = 9
        self._SMOOTH_DEGREE = 3
        self._EXTEND_DEGREE = 3
        self._SYMMETRIZE = True
        self._UNDEFINED_EPS = 1e-9

        # Instantaneous frequency defaults
        self._WAVELET_OMEGA0 = 6.0
        self._IFREQ_N_SCALES = 200
        self._IFREQ_F_MIN = None
        self._IFREQ_F_MAX = None
        self._FLATNESS_WINDOW = 9

        # Remap defaults
        self._FILL_VALUE = 0.0
        self._EXPAND = False
        self._THREADS = None

        # Simulator defaults
        self._NOISE_SIGMA = 0.0
        self._VIGNETTING = 0.0
        self._SEED = None

        self.param_inputs = pd.Series(dtype=object)

        if param_file_path is not None:
            df = pd.read_csv(param_file_path, index_col=0)
            df = df.reindex(index=self._get_parameter_list())

            def convert_to_numeric(value):
                try:
                    return pd.to_numeric(value)
                except (ValueError, TypeError):
                    return value

            self.param_inputs = df["VALUE"].apply(convert_to_numeric)

            for param in self._get_parameter_list():
                value = self.param_inputs[param]
                if self.isNotNaN(value):
                    setattr(self, param, value)

        for key, value in kwargs.items():
            if key in self._get_parameter_list():
                setattr(self, key, value)
            else:
                logging.warning(f"'{key}' is not in the parameter list, please double check")

        self.fringe_value_validity_check()

    def _get_parameter_list(self):
        return self.__class__.parameters_list

    def fringe_value_validity_check(self):
        """
        Validity check for parameters that constrain each other.
        Single-parameter checks are performed in variable setters
        """
        if self._FRINGE_A - self._FRINGE_B < 0:
            raise ParameterError(f"Background FRINGE_A={self._FRINGE_A} should be at least the modulation "
                                 f"FRINGE_B={self._FRINGE_B}, otherwise the template goes negative")

        full_scale = 2 ** self._BIT_DEPTH - 1
        if self._FRINGE_A + self._FRINGE_B > full_scale:
            raise ParameterError(f"FRINGE_A + FRINGE_B = {self._FRINGE_A + self._FRINGE_B} exceeds the "
                                 f"{self._BIT_DEPTH}-bit full scale {full_scale}")

        if self._IFREQ_F_MIN is not None and self._IFREQ_F_MAX is not None \
                and self._IFREQ_F_MIN >= self._IFREQ_F_MAX:
            raise ParameterError("IFREQ_F_MIN should be less than IFREQ_F_MAX")

    def check_enabled(self, value):
        """
        Change ENABLED and DISABLED to bool True and False.

        Parameters
        ----------
        value: str, Value with ENABLED or DISABLED

        Returns
        -------
        : bool, True or False

        """
        if isinstance(value, (bool, np.bool_)):
            return bool(value)
        elif isinstance(value, (int, float, np.integer, np.floating)) and value in (0, 1):
            return bool(value)
        elif str(value).upper() in ("ENABLED", "ENABLE", "TRUE", "YES"):
            return True
        elif str(value).upper() in ("DISABLED", "DISABLE", "FALSE", "NO"):
            return False
        else:
            logging.warning(f"Issue with ENABLED and DISABLED values: {value}")

    def isNotNaN(self, param):
        # if param is NaN (Not a number), Python considers param != param. This function checks whether param is valid.
        return (param == param) and (param is not None)

    def _optional(self, value):
        # Empty cells and the literal NONE leave an optional parameter unset
        if not self.isNotNaN(value) or str(value).upper() == 'NONE':
            return None
        return value

    def ifreq_grid_bounds(self, f0: float):
        """
        Frequency range analysed by the wavelet ridge: [f0/4, min(4 f0, 0.45)] unless set explicitly.
        """
        f_min = self._IFREQ_F_MIN if self._IFREQ_F_MIN is not None else f0 / 4
        f_max = self._IFREQ_F_MAX if self._IFREQ_F_MAX is not None else min(4 * f0, 0.45)
        if f_min >= f_max:
            raise ParameterError(f"Empty wavelet frequency range [{f_min}, {f_max}]")
        return f_min, f_max

    def __str__(self):
        return ", ".join(f"{param}={getattr(self, param)}" for param in self._get_parameter_list())

    @property
    def FRINGE_F0(self):
        return self._FRINGE_F0

    @FRINGE_F0.setter
    def FRINGE_F0(self, FRINGE_F0):
        FRINGE_F0 = float(FRINGE_F0)
        if not 0 < FRINGE_F0 < 0.5:
            raise ParameterError(f"Carrier frequency FRINGE_F0 should be in (0, 0.5) cycles/pixel, got {FRINGE_F0}")
        self._FRINGE_F0 = FRINGE_F0

    @property
    def FRINGE_A(self):
        return self._FRINGE_A

    @FRINGE_A.setter
    def FRINGE_A(self, FRINGE_A):
        FRINGE_A = float(FRINGE_A)
        if FRINGE_A <= 0:
            raise ParameterError("Background intensity FRINGE_A should be greater than 0")
        self._FRINGE_A = FRINGE_A

    @property
    def FRINGE_B(self):
        return self._FRINGE_B

    @FRINGE_B.setter
    def FRINGE_B(self, FRINGE_B):
        FRINGE_B = float(FRINGE_B)
        if FRINGE_B <= 0:
            raise ParameterError("Modulation amplitude FRINGE_B should be greater than 0")
        self._FRINGE_B = FRINGE_B

    @property
    def TEMPLATE_WIDTH(self):
        return self._TEMPLATE_WIDTH

    @TEMPLATE_WIDTH.setter
    def TEMPLATE_WIDTH(self, TEMPLATE_WIDTH):
        if int(TEMPLATE_WIDTH) < 1:
            raise ParameterError("TEMPLATE_WIDTH should be at least 1 pixel")
        self._TEMPLATE_WIDTH = int(TEMPLATE_WIDTH)

    @property
    def TEMPLATE_HEIGHT(self):
        return self._TEMPLATE_HEIGHT

    @TEMPLATE_HEIGHT.setter
    def TEMPLATE_HEIGHT(self, TEMPLATE_HEIGHT):
        if int(TEMPLATE_HEIGHT) < 1:
            raise ParameterError("TEMPLATE_HEIGHT should be at least 1 pixel")
        self._TEMPLATE_HEIGHT = int(TEMPLATE_HEIGHT)

    @property
    def BIT_DEPTH(self):
        return self._BIT_DEPTH

    @BIT_DEPTH.setter
    def BIT_DEPTH(self, BIT_DEPTH):
        if int(BIT_DEPTH) in (8, 16):
            self._BIT_DEPTH = int(BIT_DEPTH)
        else:
            logging.error("Error: Value of BIT_DEPTH should be either 8 or 16, 8 is used by default")
            self._BIT_DEPTH = 8

    @property
    def CENTRAL_ROW(self):
        return self._CENTRAL_ROW

    @CENTRAL_ROW.setter
    def CENTRAL_ROW(self, CENTRAL_ROW):
        CENTRAL_ROW = self._optional(CENTRAL_ROW)
        if CENTRAL_ROW is not None:
            CENTRAL_ROW = int(CENTRAL_ROW)
            if CENTRAL_ROW < 0:
                raise ParameterError("CENTRAL_ROW should be a non-negative row index")
        self._CENTRAL_ROW = CENTRAL_ROW

    @property
    def N_POINTS(self):
        return self._N_POINTS

    @N_POINTS.setter
    def N_POINTS(self, N_POINTS):
        N_POINTS = int(N_POINTS)
        if N_POINTS < 3 or N_POINTS % 2 == 0:
            raise ParameterError(f"N_POINTS should be odd and at least 3, got {N_POINTS}")
        self._N_POINTS = N_POINTS

    @property
    def SMOOTH_DEGREE(self):
        return self._SMOOTH_DEGREE

    @SMOOTH_DEGREE.setter
    def SMOOTH_DEGREE(self, SMOOTH_DEGREE):
        if int(SMOOTH_DEGREE) < 1:
            raise ParameterError("SMOOTH_DEGREE should be at least 1")
        self._SMOOTH_DEGREE = int(SMOOTH_DEGREE)

    @property
    def EXTEND_DEGREE(self):
        return self._EXTEND_DEGREE

    @EXTEND_DEGREE.setter
    def EXTEND_DEGREE(self, EXTEND_DEGREE):
        if int(EXTEND_DEGREE) < 1:
            raise ParameterError("EXTEND_DEGREE should be at least 1")
        if int(EXTEND_DEGREE) != 3:
            logging.info(f"Extension degree {int(EXTEND_DEGREE)} selected instead of the cubic default")
        self._EXTEND_DEGREE = int(EXTEND_DEGREE)

    @property
    def SYMMETRIZE(self):
        return self._SYMMETRIZE

    @SYMMETRIZE.setter
    def SYMMETRIZE(self, SYMMETRIZE):
        value = self.check_enabled(SYMMETRIZE)
        self._SYMMETRIZE = True if value is None else value

    @property
    def UNDEFINED_EPS(self):
        return self._UNDEFINED_EPS

    @UNDEFINED_EPS.setter
    def UNDEFINED_EPS(self, UNDEFINED_EPS):
        if float(UNDEFINED_EPS) <= 0:
            raise ParameterError("UNDEFINED_EPS should be greater than 0")
        self._UNDEFINED_EPS = float(UNDEFINED_EPS)

    @property
    def WAVELET_OMEGA0(self):
        return self._WAVELET_OMEGA0

    @WAVELET_OMEGA0.setter
    def WAVELET_OMEGA0(self, WAVELET_OMEGA0):
        WAVELET_OMEGA0 = float(WAVELET_OMEGA0)
        if WAVELET_OMEGA0 <= 0:
            raise ParameterError("WAVELET_OMEGA0 should be greater than 0")
        if WAVELET_OMEGA0 < 5:
            logging.warning("Warning: Morlet wavelets with WAVELET_OMEGA0 below 5 are poorly localized in frequency")
        self._WAVELET_OMEGA0 = WAVELET_OMEGA0

    @property
    def IFREQ_N_SCALES(self):
        return self._IFREQ_N_SCALES

    @IFREQ_N_SCALES.setter
    def IFREQ_N_SCALES(self, IFREQ_N_SCALES):
        if int(IFREQ_N_SCALES) < 2:
            raise ParameterError("IFREQ_N_SCALES should be at least 2")
        self._IFREQ_N_SCALES = int(IFREQ_N_SCALES)

    @property
    def IFREQ_F_MIN(self):
        return self._IFREQ_F_MIN

    @IFREQ_F_MIN.setter
    def IFREQ_F_MIN(self, IFREQ_F_MIN):
        IFREQ_F_MIN = self._optional(IFREQ_F_MIN)
        if IFREQ_F_MIN is not None:
            IFREQ_F_MIN = float(IFREQ_F_MIN)
            if not 0 < IFREQ_F_MIN < 0.5:
                raise ParameterError("IFREQ_F_MIN should be in (0, 0.5) cycles/pixel")
        self._IFREQ_F_MIN = IFREQ_F_MIN

    @property
    def IFREQ_F_MAX(self):
        return self._IFREQ_F_MAX

    @IFREQ_F_MAX.setter
    def IFREQ_F_MAX(self, IFREQ_F_MAX):
        IFREQ_F_MAX = self._optional(IFREQ_F_MAX)
        if IFREQ_F_MAX is not None:
            IFREQ_F_MAX = float(IFREQ_F_MAX)
            if not 0 < IFREQ_F_MAX < 0.5:
                raise ParameterError("IFREQ_F_MAX should be in (0, 0.5) cycles/pixel")
        self._IFREQ_F_MAX = IFREQ_F_MAX

    @property
    def FLATNESS_WINDOW(self):
        return self._FLATNESS_WINDOW

    @FLATNESS_WINDOW.setter
    def FLATNESS_WINDOW(self, FLATNESS_WINDOW):
        FLATNESS_WINDOW = int(FLATNESS_WINDOW)
        if FLATNESS_WINDOW < 1 or FLATNESS_WINDOW % 2 == 0:
            raise ParameterError("FLATNESS_WINDOW should be a positive odd number of columns")
        self._FLATNESS_WINDOW = FLATNESS_WINDOW

    @property
    def FILL_VALUE(self):
        return self._FILL_VALUE

    @FILL_VALUE.setter
    def FILL_VALUE(self, FILL_VALUE):
        FILL_VALUE = float(FILL_VALUE)
        if not np.isfinite(FILL_VALUE):
            raise ParameterError("FILL_VALUE should be a finite number")
        self._FILL_VALUE = FILL_VALUE

    @property
    def EXPAND(self):
        return self._EXPAND

    @EXPAND.setter
    def EXPAND(self, EXPAND):
        value = self.check_enabled(EXPAND)
        self._EXPAND = False if value is None else value

    @property
    def THREADS(self):
        return self._THREADS

    @THREADS.setter
    def THREADS(self, THREADS):
        THREADS = self._optional(THREADS)
        if THREADS is not None:
            THREADS = int(THREADS)
            if THREADS < 1:
                raise ParameterError("THREADS should be at least 1")
        self._THREADS = THREADS

    @property
    def NOISE_SIGMA(self):
        return self._NOISE_SIGMA

    @NOISE_SIGMA.setter
    def NOISE_SIGMA(self, NOISE_SIGMA):
        if float(NOISE_SIGMA) < 0:
            raise ParameterError("NOISE_SIGMA should be greater than or equal to 0")
        self._NOISE_SIGMA = float(NOISE_SIGMA)

    @property
    def VIGNETTING(self):
        return self._VIGNETTING

    @VIGNETTING.setter
    def VIGNETTING(self, VIGNETTING):
        if not 0 <= float(VIGNETTING) < 1:
            raise ParameterError("VIGNETTING should be in [0, 1)")
        self._VIGNETTING = float(VIGNETTING)

    @property
    def SEED(self):
        return self._SEED

    @SEED.setter
    def SEED(self, SEED):
        SEED = self._optional(SEED)
        self._SEED = None if SEED is None else int(SEED)
