# Copyright © 2026 fringecal developers. All rights reserved.

# Redistribution and use in source and binary forms, with or without modification,
# are permitted under the terms of the BSD 3-clause license found in LICENSE.txt.


# -*- coding: utf-8 -*-

"""
DistortionProfile persistence as a versioned JSON document.
Floats are written with Python's shortest round-trip representation, so every
numeric field is reread bit for bit.
"""

import json
import logging
import pathlib
import numpy as np
from fringecal.distortion_profile import DistortionProfile
from fringecal.auxiliary_funcs.atomic_write import write_text_atomic
from fringecal.exceptions import ProfileFormatError, NonMonotoneProfileError

PROFILE_VERSION = 1
TABLE_TOLERANCE = 1e-6      # px, table vs polynomial disagreement that is reported

REQUIRED_FIELDS = ('version', 'dims', 'center', 'f0', 'cubic', 'r_max', 'table')


def profile_to_document(profile: DistortionProfile) -> dict:
    return {
        'version': PROFILE_VERSION,
        'dims': list(profile.dims),
        'center': list(profile.center),
        'f0': profile.f0,
        'cubic': [float(c) for c in profile.cubic],
        'r_max': profile.r_max,
        'table': [[float(r), float(dr)] for r, dr in profile.table],
        'provenance': profile.provenance,
    }


def _number_list(document, key, length=None):
    value = document[key]
    if not isinstance(value, list) or (length is not None and len(value) != length) or \
            not all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in value):
        expected = f"a list of {length} numbers" if length else "a list of numbers"
        raise ProfileFormatError(f"Field '{key}' should be {expected}, got {value!r}")
    return value


def document_to_profile(document: dict) -> DistortionProfile:
    """
    |  Validate a profile document and build the DistortionProfile

    |  Rejects unknown versions, missing or mistyped fields, and tables whose forward map
    |  r + delta_r(r) is not strictly increasing.
    """
    if not isinstance(document, dict):
        raise ProfileFormatError("A profile document is a JSON object")
    missing = [key for key in REQUIRED_FIELDS if key not in document]
    if missing:
        raise ProfileFormatError(f"Profile document is missing {missing}")
    version = document['version']
    if version != PROFILE_VERSION or isinstance(version, bool):
        raise ProfileFormatError(f"Unsupported profile version {version!r}, expected {PROFILE_VERSION}")

    dims = _number_list(document, 'dims', 2)
    center = _number_list(document, 'center', 2)
    cubic = _number_list(document, 'cubic')
    if not cubic:
        raise ProfileFormatError("Field 'cubic' should hold at least one coefficient")
    for key in ('f0', 'r_max'):
        if not isinstance(document[key], (int, float)) or isinstance(document[key], bool):
            raise ProfileFormatError(f"Field '{key}' should be a number, got {document[key]!r}")
    if any(int(d) != d or d < 1 for d in dims):
        raise ProfileFormatError(f"Field 'dims' should hold positive integers, got {dims}")

    table = document['table']
    if not isinstance(table, list) or len(table) < 2 or \
            not all(isinstance(row, list) and len(row) == 2 for row in table):
        raise ProfileFormatError("Field 'table' should be a list of [r, delta_r] pairs")
    table = np.asarray(table, dtype=float)
    if not np.all(np.isfinite(table)):
        raise ProfileFormatError("Field 'table' holds non-finite values")
    if np.any(np.diff(table[:, 0] + table[:, 1]) <= 0):
        raise NonMonotoneProfileError("Profile table is not monotone: r + delta_r(r) does not strictly increase")

    provenance = document.get('provenance', '')
    profile = DistortionProfile(tuple(center), document['f0'], cubic, document['r_max'],
                                (int(dims[0]), int(dims[1])), provenance if isinstance(provenance, str) else '')

    disagreement = np.max(np.abs(profile.delta_r(table[:, 0]) - table[:, 1]))
    if disagreement > TABLE_TOLERANCE:
        logging.warning(f"Profile table differs from its polynomial by up to {disagreement:.3g} px, "
                        f"the polynomial is used")
    return profile


def save_profile(profile: DistortionProfile, path=None) -> str:
    """
    |  Serialize a profile

    :param profile: DistortionProfile
    :param path: optional destination, written atomically

    Output:

    :param document: JSON text
    """
    text = json.dumps(profile_to_document(profile), indent=2, allow_nan=False)
    if path is not None:
        write_text_atomic(path, text + '\n')
    return text


def load_profile(source) -> DistortionProfile:
    """
    Load a profile from a JSON document: a dict, JSON text, or the path of a JSON file
    """
    if isinstance(source, dict):
        return document_to_profile(source)
    if isinstance(source, str) and source.lstrip().startswith('{'):
        text = source
    else:
        text = pathlib.Path(source).read_text(encoding='utf-8')
    try:
        document = json.loads(text)
    except json.JSONDecodeError as e:
        raise ProfileFormatError(f"Profile document is not valid JSON: {e}") from e
    return document_to_profile(document)
