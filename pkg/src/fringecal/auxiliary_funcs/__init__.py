# Copyright © 2026 fringecal developers. All rights reserved.

# Redistribution and use in source and binary forms, with or without modification,
# are permitted under the terms of the BSD 3-clause license found in LICENSE.txt.

from . import poly_fit
from . import parallel
from . import atomic_write
