# Copyright © 2026 fringecal developers. All rights reserved.

# Redistribution and use in source and binary forms, with or without modification,
# are permitted under the terms of the BSD 3-clause license found in LICENSE.txt.


# -*- coding: utf-8 -*-

import logging
import numpy as np
from typing import Tuple
from fringecal.distortion_profile import DistortionProfile
from fringecal.template_gen import raster_data
from fringecal.auxiliary_funcs.parallel import parallel_rows
from fringecal.exceptions import ParameterError, ShapeError


class RemapGrid:
    """
    |  Per-output-pixel fractional source coordinates

    :param src_x: (height, width) source column of every output pixel
    :param src_y: (height, width) source row of every output pixel
    :param valid: (height, width) True where the source lies inside the distorted image
    :param src_dims: (width, height) of the images the grid samples from
    :param origin: undistorted coordinate of output pixel (0, 0), nonzero on an expanded canvas
    """

    def __init__(self, src_x, src_y, valid, src_dims: Tuple[int, int], origin: Tuple[int, int] = (0, 0)):
        self.src_x = src_x
        self.src_y = src_y
        self.valid = valid
        self.src_dims = (int(src_dims[0]), int(src_dims[1]))
        self.origin = origin

    @property
    def width(self):
        return self.src_x.shape[1]

    @property
    def height(self):
        return self.src_x.shape[0]

    @property
    def dims(self):
        return self.width, self.height

    def __repr__(self):
        return (f"RemapGrid({self.width}x{self.height} from {self.src_dims[0]}x{self.src_dims[1]}, "
                f"{int(self.valid.sum())} valid pixels)")


def expanded_canvas(profile: DistortionProfile, center, src_dims):
    """
    Bounding box of the undistorted frame: the capture border pushed through the forward map.

    Output: origin (x, y) and dims (width, height) of the canvas
    """
    width, height = src_dims
    cx, cy = center
    xs = np.arange(width, dtype=float)
    ys = np.arange(height, dtype=float)
    border_x = np.concatenate([xs, xs, np.zeros(height), np.full(height, width - 1.0)])
    border_y = np.concatenate([np.zeros(width), np.full(width, height - 1.0), ys, ys])
    dx, dy = border_x - cx, border_y - cy
    r_prime = np.hypot(dx, dy)
    with np.errstate(invalid='ignore', divide='ignore'):
        scale = np.where(r_prime > 0, profile.forward(r_prime) / r_prime, 1.0)
    ux, uy = cx + scale * dx, cy + scale * dy
    x_lo, y_lo = int(np.floor(ux.min())), int(np.floor(uy.min()))
    x_hi, y_hi = int(np.ceil(ux.max())), int(np.ceil(uy.max()))
    return (x_lo, y_lo), (x_hi - x_lo + 1, y_hi - y_lo + 1)


def build_remap_grid(profile: DistortionProfile, out_dims: Tuple[int, int] = None, expand: bool = False,
                     src_dims: Tuple[int, int] = None, threads: int = None) -> RemapGrid:
    """
    |  Source coordinate of every output pixel

    |  An output pixel at undistorted radius r from the center samples the distorted image at
    |  radius r' = m^-1(r) along the same ray. r = 0 maps to the center.

    :param profile: DistortionProfile
    :param out_dims: (width, height) of the output canvas, default the source dims
    :param expand: size the canvas to the whole undistorted frame instead
    :param src_dims: (width, height) of the images to sample, default the profile dims.
                     The distortion center moves to the center of these dims
    :param threads: worker threads

    Output:

    :param grid: RemapGrid
    """
    if src_dims is None:
        src_dims = profile.dims
        center = profile.center
    else:
        center = (src_dims[0] / 2, src_dims[1] / 2)
    src_w, src_h = src_dims
    if src_w < 1 or src_h < 1:
        raise ParameterError(f"Source dimensions should be positive, got {src_dims}")

    origin = (0, 0)
    if expand:
        origin, out_dims = expanded_canvas(profile, center, src_dims)
        logging.info(f"Expanded canvas {out_dims[0]}x{out_dims[1]} with origin {origin}")
    elif out_dims is None:
        out_dims = src_dims
    out_w, out_h = out_dims
    cx, cy = center

    identity = profile.is_identity

    def rows_block(rows: slice):
        ys = np.arange(rows.start, rows.stop, dtype=float) + origin[1]
        xs = np.arange(out_w, dtype=float) + origin[0]
        gx, gy = np.meshgrid(xs, ys)
        if identity:
            src_x, src_y = gx, gy
        else:
            dx, dy = gx - cx, gy - cy
            r = np.hypot(dx, dy)
            r_prime = profile.inverse(r)
            with np.errstate(invalid='ignore', divide='ignore'):
                scale = np.where(r > 0, r_prime / r, 1.0)
            src_x = cx + scale * dx
            src_y = cy + scale * dy
        with np.errstate(invalid='ignore'):
            valid = np.isfinite(src_x) & np.isfinite(src_y) & \
                (src_x >= 0) & (src_x <= src_w - 1) & (src_y >= 0) & (src_y <= src_h - 1)
        return src_x, src_y, valid

    src_x, src_y, valid = parallel_rows(rows_block, out_h, threads)
    return RemapGrid(src_x, src_y, valid, src_dims, origin)


def bilinear_sample(image, x, y):
    """
    |  Bilinear interpolation at fractional coordinates

    |  D(x', y') = (1 - a)(1 - b) D(x1, y1) + a (1 - b) D(x1 + 1, y1) + (1 - a) b D(x1, y1 + 1) + a b D(x1 + 1, y1 + 1)
    |  with x1 = floor(x'), y1 = floor(y'), a = x' - x1, b = y' - y1. The +1 neighbours are clamped at the last
    |  column and row.

    :param image: (height, width) or (height, width, channels) raster
    :param x: column coordinates in [0, width - 1]
    :param y: row coordinates in [0, height - 1], same shape as x

    Output:

    :param values: sampled intensities, shape of x (plus the channel axis)
    """
    data = raster_data(image)
    height, width = data.shape[:2]
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(~np.isfinite(x)) or np.any(~np.isfinite(y)) or np.any(x < 0) or np.any(x > width - 1) \
            or np.any(y < 0) or np.any(y > height - 1):
        raise ParameterError(f"Sample coordinates should lie in [0, {width - 1}] x [0, {height - 1}]")

    x1 = np.floor(x).astype(int)
    y1 = np.floor(y).astype(int)
    alpha = x - x1
    beta = y - y1
    x2 = np.minimum(x1 + 1, width - 1)
    y2 = np.minimum(y1 + 1, height - 1)

    if data.ndim == 3:
        alpha = alpha[..., None]
        beta = beta[..., None]

    return (1 - alpha) * (1 - beta) * data[y1, x1] + alpha * (1 - beta) * data[y1, x2] \
        + (1 - alpha) * beta * data[y2, x1] + alpha * beta * data[y2, x2]


def apply_grid(image, grid: RemapGrid, fill_value: float = 0.0, threads: int = None) -> np.ndarray:
    """
    Resample an image through a prebuilt grid. Pixels whose source is outside the image get fill_value.
    """
    data = raster_data(image)
    if (data.shape[1], data.shape[0]) != grid.src_dims:
        raise ShapeError(f"Image is {data.shape[1]}x{data.shape[0]} but the grid samples "
                         f"{grid.src_dims[0]}x{grid.src_dims[1]} images")

    def rows_block(rows: slice):
        valid = grid.valid[rows]
        out = np.full(valid.shape + data.shape[2:], fill_value, dtype=float)
        out[valid] = bilinear_sample(data, grid.src_x[rows][valid], grid.src_y[rows][valid])
        return out

    return parallel_rows(rows_block, grid.height, threads)


def calibrate_image(image, profile: DistortionProfile, fill_value: float = 0.0, expand: bool = False,
                    rebuild: bool = False, threads: int = None) -> np.ndarray:
    """
    |  Undistort one image with a profile

    :param image: (height, width) or (height, width, channels) raster
    :param profile: DistortionProfile
    :param fill_value: value of output pixels whose source falls outside the image
    :param expand: grow the canvas to the undistorted frame
    :param rebuild: accept an image whose dims differ from the profile's, re-centering the profile on it
    :param threads: worker threads

    Output:

    :param calibrated: float raster
    """
    data = raster_data(image)
    dims = (data.shape[1], data.shape[0])
    if dims != profile.dims:
        if not rebuild:
            raise ShapeError(f"Image is {dims[0]}x{dims[1]} but the profile was calibrated on "
                             f"{profile.dims[0]}x{profile.dims[1]}")
        logging.warning(f"Rebuilding the remap grid for {dims[0]}x{dims[1]}, the profile was calibrated on "
                        f"{profile.dims[0]}x{profile.dims[1]}")
        grid = build_remap_grid(profile, expand=expand, src_dims=dims, threads=threads)
    else:
        grid = build_remap_grid(profile, expand=expand, threads=threads)
    return apply_grid(data, grid, fill_value, threads)
