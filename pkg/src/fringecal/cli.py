# Copyright © 2026 fringecal developers. All rights reserved.

# Redistribution and use in source and binary forms, with or without modification,
# are permitted under the terms of the BSD 3-clause license found in LICENSE.txt.


# -*- coding: utf-8 -*-

"""
fringecal command line

    fringecal gen-templates --width 1920 --height 1080 --f0 0.0625 --out templates
    fringecal calibrate --images t0.png t1.png t2.png t3.png --out profile.json --report
    fringecal apply --profile profile.json --in capture.png --out calibrated.png
    fringecal simulate --model division --lambda 5e-7 --dims 512 512 --scene fringe checker --out sim

Exit codes: 0 success, 2 invalid parameter, 3 shape mismatch, 4 numeric failure
(non-monotone profile or model, too few samples, wrong fringe orientation),
5 malformed profile document, 1 anything else.
"""

import sys
import argparse
import logging
import pathlib
import numpy as np
from fringecal import __version__
from fringecal.calibration_settings import CalibrationSettings
from fringecal.template_gen import generate_template_set
from fringecal.lens_calibration import LensCalibration
from fringecal.remap import calibrate_image
from fringecal.simulator import (RadialModel, CheckerboardScene, LineGridScene, render_distorted,
                                 render_fringe_set, ground_truth_delta_r)
from fringecal.distortion_profile import half_diagonal
from fringecal.io_formats import load_image, save_image, save_profile, load_profile, export_delta_r_csv
from fringecal.exceptions import (ParameterError, ShapeError, InsufficientDataError, OrientationError,
                                  NonMonotoneProfileError, ProfileFormatError)

EXIT_OK = 0
EXIT_OTHER = 1
EXIT_PARAMETER = 2
EXIT_SHAPE = 3
EXIT_NUMERIC = 4
EXIT_FORMAT = 5

EXIT_CODES = [(ProfileFormatError, EXIT_FORMAT),
              (ShapeError, EXIT_SHAPE),
              ((NonMonotoneProfileError, InsufficientDataError, OrientationError), EXIT_NUMERIC),
              (ParameterError, EXIT_PARAMETER)]

SCENES = ('fringe', 'checker', 'grid')


def exit_code(error: Exception) -> int:
    for kinds, code in EXIT_CODES:
        if isinstance(error, kinds):
            return code
    return EXIT_OTHER


class CliConfig:
    """
    Settings of one command: the calibration parameters plus the command's paths
    """

    def __init__(self, args: argparse.Namespace, **overrides):
        self.args = args
        self.out_dir = pathlib.Path(args.out_dir) if args.out_dir else None
        overrides = {key: value for key, value in overrides.items() if value is not None}
        param_file = self.path(args.params) if args.params else None
        if param_file is None:
            self.settings = CalibrationSettings(**overrides)
        else:
            self.settings = CalibrationSettings(param_file, **overrides)

    def path(self, path) -> pathlib.Path:
        path = pathlib.Path(path)
        if self.out_dir is not None and not path.is_absolute():
            return self.out_dir / path
        return path


def cmd_gen_templates(args) -> int:
    config = CliConfig(args, TEMPLATE_WIDTH=args.width, TEMPLATE_HEIGHT=args.height, FRINGE_F0=args.f0,
                       FRINGE_A=args.A, FRINGE_B=args.B, BIT_DEPTH=args.bit_depth)
    s = config.settings
    out = config.path(args.out)
    templates = generate_template_set(s.TEMPLATE_WIDTH, s.TEMPLATE_HEIGHT, s.FRINGE_F0, s.FRINGE_A, s.FRINGE_B,
                                      s.BIT_DEPTH)
    for i, template in enumerate(templates):
        save_image(out / f"template_{i}.{args.format}", template, s.BIT_DEPTH)
    print(f"Wrote 4 templates {s.TEMPLATE_WIDTH}x{s.TEMPLATE_HEIGHT} to {out}, f0 = {s.FRINGE_F0} cycles/pixel")
    return EXIT_OK


def cmd_calibrate(args) -> int:
    config = CliConfig(args, CENTRAL_ROW=args.row, N_POINTS=args.n_points, FRINGE_F0=args.f0,
                       IFREQ_F_MIN=args.f_min, IFREQ_F_MAX=args.f_max, IFREQ_N_SCALES=args.n_scales,
                       SYMMETRIZE=False if args.positive_branch else None)
    images = [load_image(config.path(path))[0] for path in args.images]
    calibration = LensCalibration(config.settings)
    profile = calibration.run(images, provenance="captures: " + ", ".join(str(p) for p in args.images))

    out = config.path(args.out)
    save_profile(profile, out)
    print(f"f0 = {profile.f0:.6g} cycles/pixel")
    print(f"r_max = {profile.r_max:.1f} px")
    if calibration.flatness is not None:
        print(calibration.flatness)
    if args.report:
        for path in calibration.write_report(out.parent):
            print(f"Wrote {path}")
    print(f"Wrote {out}")
    return EXIT_OK


def cmd_apply(args) -> int:
    config = CliConfig(args, FILL_VALUE=args.fill, EXPAND=True if args.expand else None)
    s = config.settings
    profile = load_profile(config.path(args.profile))
    data, bit_depth = load_image(config.path(args.input))
    calibrated = calibrate_image(data, profile, s.FILL_VALUE, s.EXPAND, rebuild=args.force_rebuild,
                                 threads=s.THREADS)
    out = config.path(args.out)
    save_image(out, calibrated, bit_depth)
    print(f"Wrote {out} ({calibrated.shape[1]}x{calibrated.shape[0]})")
    return EXIT_OK


def cmd_simulate(args) -> int:
    config = CliConfig(args, FRINGE_F0=args.f0, NOISE_SIGMA=args.noise, VIGNETTING=args.vignetting, SEED=args.seed)
    s = config.settings
    if s.NOISE_SIGMA > 0 and s.SEED is None:
        raise ParameterError(f"Noise sigma {s.NOISE_SIGMA} needs an explicit --seed")
    width, height = args.dims
    if args.model == 'division':
        params = (args.lam,)
    else:
        params = (args.k1, args.k2)
    model = RadialModel.for_dims(args.model, params, (width, height))
    out = config.path(args.out)
    rng = np.random.default_rng(s.SEED)

    if 'fringe' in args.scene:
        images = render_fringe_set(model, (width, height), s.FRINGE_F0, s.FRINGE_A, s.FRINGE_B, args.freq_scale,
                                   s.NOISE_SIGMA, s.VIGNETTING, s.SEED, s.THREADS)
        for i, image in enumerate(images):
            save_image(out / f"fringe_{i}.png", image, s.BIT_DEPTH)
    center = (width / 2, height / 2)
    if 'checker' in args.scene:
        scene = CheckerboardScene(args.cell, center, s.FRINGE_A, s.FRINGE_B)
        save_image(out / "checkerboard.png", render_distorted(scene, model, (width, height), s.NOISE_SIGMA,
                                                              s.VIGNETTING, rng, s.THREADS), s.BIT_DEPTH)
    if 'grid' in args.scene:
        scene = LineGridScene(args.cell, center)
        save_image(out / "line_grid.png", render_distorted(scene, model, (width, height), s.NOISE_SIGMA,
                                                           s.VIGNETTING, rng, s.THREADS), s.BIT_DEPTH)

    r = np.arange(0, np.ceil(half_diagonal(width, height)) + 1, dtype=float)
    r = r[r <= model.r_d_limit]
    export_delta_r_csv(r, ground_truth_delta_r(model, r), out / "ground_truth_delta_r.csv")
    print(f"Wrote {', '.join(args.scene)} scene(s) and ground_truth_delta_r.csv to {out}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog='fringecal', description="Radial lens distortion calibration from "
                                                                   "four-step phase-shifted fringe images")
    parser.add_argument('--version', action='version', version=f"%(prog)s {__version__}")
    parser.add_argument('-v', '--verbose', action='count', default=0, help="-v for progress, -vv for debug")
    parser.add_argument('--out-dir', help="directory all relative paths are resolved against")
    parser.add_argument('--params', help="parameter CSV (PARAMETER,VALUE rows) overriding the defaults")
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('gen-templates', help="write the four phase-shifted fringe templates")
    p.add_argument('--width', type=int)
    p.add_argument('--height', type=int)
    p.add_argument('--f0', type=float, help="carrier frequency in cycles/pixel")
    p.add_argument('--A', type=float, help="background intensity")
    p.add_argument('--B', type=float, help="modulation amplitude")
    p.add_argument('--bit-depth', type=int, choices=(8, 16))
    p.add_argument('--format', choices=('png', 'pgm'), default='png')
    p.add_argument('--out', default='.', help="output directory")
    p.set_defaults(func=cmd_gen_templates)

    p = sub.add_parser('calibrate', help="measure a distortion profile from four captures")
    p.add_argument('--images', nargs=4, required=True, metavar=('I1', 'I2', 'I3', 'I4'))
    p.add_argument('--out', default='profile.json')
    p.add_argument('--row', type=int, help="demodulated row, default the central row")
    p.add_argument('--n-points', type=int, help="central samples of the line fit")
    p.add_argument('--f0', type=float, help="nominal carrier frequency for the wavelet grid")
    p.add_argument('--f-min', type=float)
    p.add_argument('--f-max', type=float)
    p.add_argument('--n-scales', type=int)
    p.add_argument('--positive-branch', action='store_true', help="use the positive branch instead of averaging")
    p.add_argument('--report', action='store_true', help="also write ridge, modulated phase and delta_r curves")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser('apply', help="undistort an image with a profile")
    p.add_argument('--profile', required=True)
    p.add_argument('--in', dest='input', required=True)
    p.add_argument('--out', required=True)
    p.add_argument('--fill', type=float, help="value of pixels mapping outside the capture")
    p.add_argument('--expand', action='store_true', help="grow the canvas to the whole undistorted frame")
    p.add_argument('--force-rebuild', action='store_true', help="accept images whose size differs from the profile")
    p.set_defaults(func=cmd_apply)

    p = sub.add_parser('simulate', help="render captures through a synthetic radial lens")
    p.add_argument('--model', choices=('division', 'polynomial'), default='division')
    p.add_argument('--lambda', dest='lam', type=float, default=5e-7, help="division model coefficient")
    p.add_argument('--k1', type=float, default=0.0)
    p.add_argument('--k2', type=float, default=0.0)
    p.add_argument('--dims', type=int, nargs=2, default=(512, 512), metavar=('WIDTH', 'HEIGHT'))
    p.add_argument('--scene', nargs='+', choices=SCENES, default=['fringe', 'checker'])
    p.add_argument('--freq-scale', type=float, default=1.0, help="carrier scaling standing for screen distance")
    p.add_argument('--f0', type=float)
    p.add_argument('--cell', type=float, default=64, help="checkerboard cell size or line spacing in pixels")
    p.add_argument('--noise', type=float, help="Gaussian noise sigma in gray levels")
    p.add_argument('--vignetting', type=float)
    p.add_argument('--seed', type=int)
    p.add_argument('--out', default='.', help="output directory")
    p.set_defaults(func=cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=max(logging.WARNING - 10 * args.verbose, logging.DEBUG),
                        format='%(levelname)s: %(message)s')
    try:
        return args.func(args)
    except ValueError as e:
        logging.error(f"{type(e).__name__}: {e}")
        return exit_code(e)
    except OSError as e:
        logging.error(f"{type(e).__name__}: {e}")
        return EXIT_OTHER


if __name__ == '__main__':
    sys.exit(main())
