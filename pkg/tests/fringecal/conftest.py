"""
Copyright © 2026 fringecal developers. All rights reserved.

Redistribution and use in source and binary forms, with or without modification,
are permitted under the terms of the BSD 3-clause license found in LICENSE.txt.
"""

# -*- coding: utf-8 -*-
# @File    : conftest.py

import pytest
import pathlib
import os
from fringecal import CalibrationSettings, LensCalibration
from fringecal.simulator import RadialModel, render_fringe_set

DIMS = (512, 512)
LAMBDA = 5e-7


@pytest.fixture
def param_file_path():
    script_path = pathlib.Path(os.path.dirname(__file__)).parent.parent
    return script_path.joinpath("src", "fringecal", "Parameters", "calibration-parameters.csv")


@pytest.fixture
def settings_obj_creation(param_file_path):
    return CalibrationSettings(param_file_path)


@pytest.fixture(scope="session")
def barrel_model():
    return RadialModel.for_dims('division', LAMBDA, DIMS)


@pytest.fixture(scope="session")
def identity_model():
    return RadialModel.identity(DIMS)


@pytest.fixture(scope="session")
def barrel_fringe_set(barrel_model):
    return render_fringe_set(barrel_model, DIMS, f0=0.0625)


@pytest.fixture(scope="session")
def identity_fringe_set(identity_model):
    return render_fringe_set(identity_model, DIMS, f0=0.0625)


@pytest.fixture(scope="session")
def barrel_calibration(barrel_fringe_set):
    calibration = LensCalibration(CalibrationSettings())
    calibration.run(barrel_fringe_set, provenance="simulated barrel lens")
    return calibration
