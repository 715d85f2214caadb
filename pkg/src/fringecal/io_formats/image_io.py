# Copyright © 2026 fringecal developers. All rights reserved.

# Redistribution and use in source and binary forms, with or without modification,
# are permitted under the terms of the BSD 3-clause license found in LICENSE.txt.


# -*- coding: utf-8 -*-

import pathlib
import numpy as np
from PIL import Image
from typing import Tuple
from fringecal.template_gen import quantize, raster_data
from fringecal.auxiliary_funcs.atomic_write import atomic_path
from fringecal.exceptions import ParameterError, ShapeError

FORMATS = {'.png': 'PNG', '.pgm': 'PPM', '.ppm': 'PPM', '.pnm': 'PPM'}
SIXTEEN_BIT_MODES = ('I', 'I;16', 'I;16B', 'I;16L')
BT601 = np.array([0.299, 0.587, 0.114])


def image_format(path) -> str:
    suffix = pathlib.Path(path).suffix.lower()
    if suffix not in FORMATS:
        raise ParameterError(f"Unsupported image extension '{suffix}', use one of {sorted(FORMATS)}")
    return FORMATS[suffix]


def load_image(path) -> Tuple[np.ndarray, int]:
    """
    |  Read a PNG, PGM or PPM image

    Output:

    :param data: float raster, (height, width) grayscale or (height, width, 3) RGB
    :param bit_depth: 8 or 16
    """
    image_format(path)
    with Image.open(path) as img:
        img.load()
        if img.mode in SIXTEEN_BIT_MODES:
            return np.array(img).astype(float), 16
        if img.mode in ('L', 'RGB'):
            return np.array(img).astype(float), 8
        if img.mode in ('1', 'LA'):
            return np.array(img.convert('L')).astype(float), 8
        return np.array(img.convert('RGB')).astype(float), 8


def save_image(path, data, bit_depth: int = 8) -> None:
    """
    Write a grayscale (8 or 16 bit) or RGB (8 bit) raster, rounding and clipping to the full scale.
    The file appears atomically.
    """
    fmt = image_format(path)
    data = raster_data(data)
    if data.ndim == 3 and data.shape[2] == 3:
        if bit_depth != 8:
            raise ParameterError("RGB images are written at 8 bits")
        img = Image.fromarray(quantize(data, 8))
    elif data.ndim == 2:
        if bit_depth == 16 and fmt == 'PNG':
            # uint16 arrays become mode I;16, written natively by the PNG encoder
            img = Image.fromarray(quantize(data, 16))
        elif bit_depth == 16:
            # the PNM encoder writes mode I as 16-bit P5
            img = Image.fromarray(quantize(data, 16).astype(np.int32))
        else:
            img = Image.fromarray(quantize(data, bit_depth))
    else:
        raise ShapeError(f"Cannot write an image of shape {data.shape}")

    if fmt == 'PPM' and img.mode == 'RGB' and pathlib.Path(path).suffix.lower() == '.pgm':
        raise ParameterError("An RGB image cannot be written as PGM, use .ppm or .png")

    with atomic_path(path) as tmp:
        img.save(tmp, format=fmt)


def to_grayscale(data) -> np.ndarray:
    """Luma of an RGB raster with ITU-R BT.601 weights. Grayscale input is returned unchanged."""
    data = raster_data(data)
    if data.ndim == 2:
        return data
    if data.ndim == 3 and data.shape[2] == 3:
        return data @ BT601
    raise ShapeError(f"Expected a grayscale or RGB raster, got shape {data.shape}")
