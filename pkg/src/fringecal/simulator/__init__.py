# Copyright © 2026 fringecal developers. All rights reserved.

# Redistribution and use in source and binary forms, with or without modification,
# are permitted under the terms of the BSD 3-clause license found in LICENSE.txt.

from .radial_model import RadialModel, model_forward, model_inverse, POLYNOMIAL, DIVISION
from .scenes import FringeScene, CheckerboardScene, LineGridScene
from .lens_simulator import (render_distorted, render_fringe_set, ground_truth_delta_r, ground_truth_profile,
                             depth_series)
from .metrics import edge_straightness
