# Copyright © 2026 fringecal developers. All rights reserved.

# Redistribution and use in source and binary forms, with or without modification,
# are permitted under the terms of the BSD 3-clause license found in LICENSE.txt.

# -*- coding: utf-8 -*-

import pathlib
import os
import numpy as np
import matplotlib.pyplot as plt
import fringecal as fc
from fringecal import simulator


# Define calibration parameter file (optional)
script_path = pathlib.Path(os.path.dirname(__file__))
param_file_path = script_path.joinpath("src", "fringecal", "Parameters", "calibration-parameters.csv")
settings = fc.CalibrationSettings(param_file_path)

# simulated capture size and barrel lens
dims = (512, 512)
model = simulator.RadialModel.for_dims('division', 5e-7, dims)

# calibrate at two screen distances, represented by carrier scalings
profiles = simulator.depth_series(model, dims, freq_scales=(1.0, 1.5), settings=settings)

# distorted checkerboard, calibrated with the first profile
scene = simulator.CheckerboardScene(64, (dims[0] / 2, dims[1] / 2))
distorted = simulator.render_distorted(scene, model, dims)
calibrated = fc.calibrate_image(distorted, profiles[1.0])

print(f"straightness before calibration: {simulator.edge_straightness(distorted):.3f} px")
print(f"straightness after calibration: {simulator.edge_straightness(calibrated):.3f} px")

# prepare arrays for plotting
r = np.arange(0, int(0.9 * profiles[1.0].r_max))
truth = simulator.ground_truth_delta_r(model, r)

# plot
fig, ax = plt.subplots(1, 3, figsize=(15, 5))
for scale, profile in profiles.items():
    ax[0].plot(r, profile.delta_r(r), label=f'freq scale {scale}')
ax[0].plot(r, truth, 'k--', label='ground truth')
ax[0].set_xlabel('distorted radius (pixels)')
ax[0].set_ylabel('delta r (pixels)')
ax[0].legend()
ax[0].grid()
ax[1].imshow(distorted, cmap='gray')
ax[1].set_title('distorted')
ax[2].imshow(calibrated, cmap='gray')
ax[2].set_title('calibrated')
plt.show()
