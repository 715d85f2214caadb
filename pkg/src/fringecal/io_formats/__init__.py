# Copyright © 2026 fringecal developers. All rights reserved.

# Redistribution and use in source and binary forms, with or without modification,
# are permitted under the terms of the BSD 3-clause license found in LICENSE.txt.

from .image_io import load_image, save_image, to_grayscale
from .profile_doc import (save_profile, load_profile, profile_to_document, document_to_profile,
                          PROFILE_VERSION)
from .curve_export import (curve_table, export_curve_csv, export_curve_svg, export_ridge_csv,
                           export_modulated_phase_csv, export_intensity_csv, export_delta_r_csv)
