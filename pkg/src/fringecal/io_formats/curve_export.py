# Copyright © 2026 fringecal developers. All rights reserved.

# Redistribution and use in source and binary forms, with or without modification,
# are permitted under the terms of the BSD 3-clause license found in LICENSE.txt.


# -*- coding: utf-8 -*-

import numpy as np
import pandas as pd
import matplotlib
from matplotlib.figure import Figure
from typing import Dict, Union
from fringecal.distortion_profile import DistortionProfile
from fringecal.ifreq import RidgeResult
from fringecal.template_gen import raster_data
from fringecal.auxiliary_funcs.atomic_write import atomic_path


def _write_csv(df: pd.DataFrame, path) -> None:
    with atomic_path(path) as tmp:
        df.to_csv(tmp, index=False)


def curve_table(profile: DistortionProfile, step: float = 1.0) -> pd.DataFrame:
    """delta_phi and delta_r sampled over [0, r_max]"""
    r = np.append(np.arange(0, profile.r_max, step), profile.r_max)
    return pd.DataFrame({'r': r, 'delta_phi': profile.delta_phi(r), 'delta_r': profile.delta_r(r)})


def export_curve_csv(profile: DistortionProfile, path, step: float = 1.0) -> pd.DataFrame:
    """CSV with columns r, delta_phi, delta_r"""
    df = curve_table(profile, step)
    _write_csv(df, path)
    return df


def export_curve_svg(profiles: Union[DistortionProfile, Dict[str, DistortionProfile]], path,
                     title: str = 'Radial distortion') -> None:
    """
    |  SVG plot of delta_r against r

    :param profiles: one profile, or labelled profiles drawn on the same axes
    :param path: destination .svg
    :param title: plot title
    """
    if isinstance(profiles, DistortionProfile):
        profiles = {'profile': profiles}

    with matplotlib.rc_context({'svg.fonttype': 'none'}):
        fig = Figure(figsize=(6, 4))
        ax = fig.subplots()
        for label, profile in profiles.items():
            df = curve_table(profile)
            ax.plot(df['r'], df['delta_r'], label=str(label))
        ax.set_xlabel('distorted radius r (pixels)')
        ax.set_ylabel('delta r (pixels)')
        ax.set_title(title)
        ax.grid(True)
        if len(profiles) > 1:
            ax.legend()
        fig.tight_layout()
        with atomic_path(path) as tmp:
            fig.savefig(tmp, format='svg')


def export_ridge_csv(ridge: RidgeResult, path) -> pd.DataFrame:
    """CSV with columns column, frequency, magnitude, low_confidence"""
    df = pd.DataFrame({'column': np.arange(len(ridge)), 'frequency': ridge.frequencies,
                       'magnitude': ridge.coefficients_max, 'low_confidence': ridge.low_confidence})
    _write_csv(df, path)
    return df


def export_modulated_phase_csv(delta, center_index: int, path, averaged=None) -> pd.DataFrame:
    """
    CSV of the signed modulated phase per column (column, u, delta_phi), with the averaged
    branch alongside for u >= 0 when given
    """
    delta = np.asarray(delta, dtype=float)
    columns = np.arange(delta.size)
    df = pd.DataFrame({'column': columns, 'u': columns - center_index, 'delta_phi': delta})
    if averaged is not None:
        values = np.asarray(averaged, dtype=float)
        avg = np.full(delta.size, np.nan)
        u = np.arange(min(values.size, delta.size - center_index))
        avg[center_index + u] = values[u]
        df['averaged'] = avg
    _write_csv(df, path)
    return df


def export_intensity_csv(images, row: int, path) -> pd.DataFrame:
    """CSV of one row of each fringe image: column, I1, I2, ..."""
    rows = [raster_data(image)[row] for image in images]
    df = pd.DataFrame({'column': np.arange(rows[0].size)})
    for i, values in enumerate(rows):
        df[f'I{i + 1}'] = values
    _write_csv(df, path)
    return df


def export_delta_r_csv(r, delta_r, path) -> pd.DataFrame:
    """CSV with columns r, delta_r, for ground-truth curves"""
    df = pd.DataFrame({'r': np.asarray(r, dtype=float), 'delta_r': np.asarray(delta_r, dtype=float)})
    _write_csv(df, path)
    return df
