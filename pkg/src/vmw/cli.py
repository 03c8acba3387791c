"""Command-line surface: every computation as a subcommand with CSV/JSON
output, a run manifest next to every file artifact, and the verification
suites as an exit-code gate.

Determinism contract: identical invocations produce byte-identical CSV
(12 significant digits, '.' decimal separator, newline line endings).
"""

from __future__ import annotations

import argparse
import json
import math
import re
import sys
import time
from importlib.metadata import PackageNotFoundError, version as pkg_version
from pathlib import Path

import numpy as np

from .correlations import CorrelationInput, mstate_correlation_closed, \
    mstate_correlation_exact, mstate_correlation_vm
from .exact import CGKey, cg_exact, wigner_d_exact
from .qnum import HalfInt, as_halfint
from .semicg import (RegionError, RegionKind, cg_allowed, cg_forbidden,
                     cg_sq_avg, cg_wkb, classify_region, coupling_geometry)
from .semiwigd import (SingularAngleError, TurningRegionError, WigdQuery,
                       wigd_asymptotic, wigd_wkb)
from .precession import LobeTrackingError, PrecessionConfig, from_field_frame, \
    track_rotation
from .verify import run_suite
from .wavepacket import (FitFailureError, JWavepacket, WavepacketSpec,
                         build_j_wavepacket, make_grid, particle_density,
                         q_distribution, uncertainty_report)

try:
    __version__ = pkg_version("vmw")
except PackageNotFoundError:
    __version__ = "0.0.0+local"

CG_METHODS = ("exact", "exact_sq", "avg", "avg_variant", "allowed",
              "forbidden", "wkb")
WIGD_METHODS = ("exact", "asym", "wkb")


def fmt(x: float) -> str:
    return format(float(x), ".12g")


def half_int_arg(text: str) -> HalfInt:
    try:
        return HalfInt.parse(text)
    except (ValueError, TypeError) as exc:
        raise argparse.ArgumentTypeError(
            f"{text!r} is not a half-integer (use forms like 3, 7/2, 3.5)"
        ) from exc


def _write_output(path: Path | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        path.write_text(text, encoding="utf-8")


def _write_manifest(args: argparse.Namespace, outputs: list[Path],
                    started: float) -> None:
    if not outputs:
        return
    manifest = {
        "command": args.command,
        "parameters": {k: str(v) for k, v in sorted(vars(args).items())
                       if k not in {"command", "func"} and v is not None},
        "outputs": [str(p) for p in outputs],
        "tool_version": __version__,
        "wall_time_s": round(time.monotonic() - started, 6),
    }
    target = outputs[0].with_suffix(outputs[0].suffix + ".manifest.json")
    target.write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n",
                      encoding="utf-8")


def cmd_cg(args: argparse.Namespace) -> int:
    started = time.monotonic()
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m not in CG_METHODS:
            print(f"unknown method {m!r}; choose from {', '.join(CG_METHODS)}",
                  file=sys.stderr)
            return 2
    j1, m1, j2, m2 = args.j1, args.m1, args.j2, args.m2
    m3 = args.m3 if args.m3 is not None else m1 + m2
    if m1 + m2 != m3:
        print("m3 must equal m1 + m2", file=sys.stderr)
        return 2
    rows = []
    tj_lo, tj_hi = abs(j1.twice - j2.twice), j1.twice + j2.twice
    for tj3 in range(tj_lo, tj_hi + 1, 2):
        j3 = HalfInt(tj3)
        if abs(m3.twice) > tj3:
            continue
        geom = coupling_geometry(j1, m1, j2, m2, j3, m3)
        region = classify_region(geom).kind.value
        cells = [str(j3), region]
        for method in methods:
            value: float | None
            try:
                if method == "exact":
                    value = cg_exact(CGKey(j1, m1, j2, m2, j3, m3))
                elif method == "exact_sq":
                    value = cg_exact(CGKey(j1, m1, j2, m2, j3, m3)) ** 2
                elif method == "avg":
                    value = cg_sq_avg(j1, m1, j2, m2, j3)
                elif method == "avg_variant":
                    value = cg_sq_avg(j1, m1, j2, m2, j3, variant=True)
                elif method == "allowed":
                    value = cg_allowed(geom, j3)
                elif method == "forbidden":
                    value = cg_forbidden(geom, j3)
                else:
                    value = cg_wkb(j1, m1, j2, m2, j3, m3)
            except RegionError:
                value = None
            cells.append("" if value is None else fmt(value))
        rows.append(",".join(cells))
    text = "j3,region," + ",".join(methods) + "\n" + "\n".join(rows) + "\n"
    _write_output(args.out, text)
    if args.out is not None:
        _write_manifest(args, [args.out], started)
    return 0


def cmd_wigd(args: argparse.Namespace) -> int:
    started = time.monotonic()
    methods = [m.strip() for m in args.methods.split(",") if m.strip()]
    for m in methods:
        if m not in WIGD_METHODS:
            print(f"unknown method {m!r}; choose from {', '.join(WIGD_METHODS)}",
                  file=sys.stderr)
            return 2
    scale = math.pi / 180.0 if args.degrees else 1.0
    thetas = np.linspace(args.theta_min * scale, args.theta_max * scale,
                         args.grid)
    rows = []
    for theta in thetas:
        cells = [fmt(theta)]
        for method in methods:
            value: float | None
            try:
                if method == "exact":
                    value = wigner_d_exact(args.j, args.mp, args.m, float(theta))
                elif method == "asym":
                    value = wigd_asymptotic(
                        WigdQuery.of(args.j, args.mp, args.m, float(theta)))
                else:
                    value = wigd_wkb(
                        WigdQuery.of(args.j, args.mp, args.m, float(theta)))
            except (TurningRegionError, SingularAngleError):
                value = None
            cells.append("" if value is None else fmt(value))
        rows.append(",".join(cells))
    text = "theta," + ",".join(methods) + "\n" + "\n".join(rows) + "\n"
    _write_output(args.out, text)
    if args.out is not None:
        _write_manifest(args, [args.out], started)
    return 0


def _density_csv(density) -> str:
    lines = ["theta,phi,value"]
    for i, theta in enumerate(density.theta):
        for k, phi in enumerate(density.phi):
            lines.append(f"{fmt(theta)},{fmt(phi)},{fmt(density.values[i, k])}")
    return "\n".join(lines) + "\n"


def cmd_wavepacket(args: argparse.Namespace) -> int:
    started = time.monotonic()
    spec = WavepacketSpec(args.j, args.m, args.dj, args.dm)
    if args.report == "widths":
        report = uncertainty_report(spec, build_j_wavepacket(spec))
        text = json.dumps(report.as_dict(), indent=2, sort_keys=True) + "\n"
    elif args.report == "density":
        text = _density_csv(particle_density(build_j_wavepacket(spec)))
    elif args.report == "q":
        text = _density_csv(q_distribution(build_j_wavepacket(spec)))
    else:
        text = _corrected_angles_csv(args)
    _write_output(args.out, text)
    if args.out is not None:
        _write_manifest(args, [args.out], started)
    return 0


def _corrected_angles_csv(args: argparse.Namespace) -> str:
    """Corrected polar angle vs projection: the rectified prediction next to
    the numerically maximized population-lobe direction."""
    from .wavepacket import measured_q_polar_angle, rectified_stats
    j = args.j
    lines = ["m,theta_corrected,theta_measured"]
    for tm in range(j.twice % 2, j.twice + 1, 2):
        m = HalfInt(tm)
        spec = WavepacketSpec(j, m, 0.0, args.dm)
        predicted = rectified_stats(j, m, args.dm).theta_bar
        measured = measured_q_polar_angle(build_j_wavepacket(spec))
        lines.append(f"{fmt(float(m))},{fmt(predicted)},{fmt(measured)}")
    return "\n".join(lines) + "\n"


def cmd_precess(args: argparse.Namespace) -> int:
    started = time.monotonic()
    spec = WavepacketSpec(args.j, args.m, args.dj, args.dm)
    times = tuple(np.linspace(0.0, args.tmax, args.samples))
    config = PrecessionConfig(spec, args.omega, times)
    trace = track_rotation(config)
    lines = ["t,j_azimuth,particle_azimuth"]
    for t, ja, pa in zip(trace.times, trace.j_azimuth, trace.particle_azimuth):
        lines.append(f"{fmt(t)},{fmt(ja)},{fmt(pa)}")
    outputs: list[Path] = []
    text = "\n".join(lines) + "\n"
    _write_output(args.out, text)
    if args.out is not None:
        outputs.append(args.out)
    if args.frames and args.out is not None:
        from .precession import evolve
        axis = config.axis_polar()
        grid = make_grid()
        for idx, state in enumerate(evolve(config)):
            amplitudes = from_field_frame(state, axis)
            blocks = {}
            for tj, c in amplitudes.items():
                tms = np.arange(-tj, tj + 1, 2)
                keep = np.abs(c) > 1e-14
                blocks[tj] = (tms[keep], np.abs(c[keep]))
            frame_packet = JWavepacket(blocks=blocks, norm=1.0)
            density = particle_density(frame_packet, grid)
            frame_path = args.out.with_name(
                f"{args.out.stem}_frame_{idx:04d}.csv")
            frame_path.write_text(_density_csv(density), encoding="utf-8")
            outputs.append(frame_path)
    if outputs:
        _write_manifest(args, outputs, started)
    return 0


def cmd_correlate(args: argparse.Namespace) -> int:
    started = time.monotonic()
    inp = CorrelationInput(args.j1, args.j2, args.j3, args.m3)
    payload = {
        "vm": mstate_correlation_vm(inp),
        "closed": mstate_correlation_closed(inp),
        "exact": mstate_correlation_exact(inp),
    }
    text = json.dumps({k: float(fmt(v)) for k, v in payload.items()},
                      indent=2, sort_keys=True) + "\n"
    _write_output(args.out, text)
    if args.out is not None:
        _write_manifest(args, [args.out], started)
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    try:
        results = run_suite(args.suite)
    except KeyError:
        print(f"unknown suite {args.suite!r}; use a1..a12, an alias, or 'all'",
              file=sys.stderr)
        return 2
    width = max(len(f"{suite} {check.name}") for suite, check in results)
    failed = 0
    for suite, check in results:
        status = "PASS" if check.passed else "FAIL"
        if not check.passed:
            failed += 1
        print(f"{suite + ' ' + check.name:<{width}}  {status}  {check.detail}")
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 1


# lets bare negative half-integers like -1/2 pass as option values
_NEGATIVE_VALUE = re.compile(r"^-\d+(/\d+)?$|^-\d*\.\d+$")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vmw",
        description="Semiclassical angular-momentum toolkit: exact kernels, "
                    "uniform WKB approximations, wavepackets, precession, "
                    "and correlation identities.")
    parser._negative_number_matcher = _NEGATIVE_VALUE
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_cg = sub.add_parser("cg", help="coupling-coefficient sweep over j3")
    p_cg.add_argument("--j1", type=half_int_arg, required=True)
    p_cg.add_argument("--m1", type=half_int_arg, required=True)
    p_cg.add_argument("--j2", type=half_int_arg, required=True)
    p_cg.add_argument("--m2", type=half_int_arg, required=True)
    p_cg.add_argument("--m3", type=half_int_arg, default=None)
    p_cg.add_argument("--sweep", choices=["j3"], default="j3")
    p_cg.add_argument("--methods", default="exact,wkb")
    p_cg.add_argument("--out", type=Path, default=None)
    p_cg.set_defaults(func=cmd_cg)

    p_wd = sub.add_parser("wigd", help="rotation matrix element sweep over theta")
    p_wd.add_argument("--j", type=half_int_arg, required=True)
    p_wd.add_argument("--mp", type=half_int_arg, required=True)
    p_wd.add_argument("--m", type=half_int_arg, required=True)
    p_wd.add_argument("--sweep", choices=["theta"], default="theta")
    p_wd.add_argument("--theta-min", type=float, default=0.05)
    p_wd.add_argument("--theta-max", type=float, default=math.pi - 0.05)
    p_wd.add_argument("--grid", type=int, default=64)
    p_wd.add_argument("--degrees", action="store_true",
                      help="interpret the theta bounds in degrees")
    p_wd.add_argument("--methods", default="exact,wkb")
    p_wd.add_argument("--out", type=Path, default=None)
    p_wd.set_defaults(func=cmd_wigd)

    p_wp = sub.add_parser("wavepacket", help="build a packet and report on it")
    p_wp.add_argument("--j", type=half_int_arg, required=True)
    p_wp.add_argument("--m", type=half_int_arg, required=True)
    p_wp.add_argument("--dj", type=float, required=True)
    p_wp.add_argument("--dm", type=float, required=True)
    p_wp.add_argument("--report", choices=["widths", "density", "q", "angles"],
                      default="widths")
    p_wp.add_argument("--out", type=Path, default=None)
    p_wp.set_defaults(func=cmd_wavepacket)

    p_pr = sub.add_parser("precess", help="Larmor precession trace")
    p_pr.add_argument("--j", type=half_int_arg, required=True)
    p_pr.add_argument("--m", type=half_int_arg, required=True)
    p_pr.add_argument("--dj", type=float, required=True)
    p_pr.add_argument("--dm", type=float, required=True)
    p_pr.add_argument("--omega", type=float, default=1.0)
    p_pr.add_argument("--tmax", type=float, default=2.0 * math.pi)
    p_pr.add_argument("--samples", type=int, default=17)
    p_pr.add_argument("--frames", action="store_true",
                      help="write one density CSV per sample next to --out")
    p_pr.add_argument("--out", type=Path, default=None)
    p_pr.set_defaults(func=cmd_precess)

    p_co = sub.add_parser("correlate", help="transverse correlation, three routes")
    p_co.add_argument("--j1", type=half_int_arg, required=True)
    p_co.add_argument("--j2", type=half_int_arg, required=True)
    p_co.add_argument("--j3", type=half_int_arg, required=True)
    p_co.add_argument("--m3", type=half_int_arg, required=True)
    p_co.add_argument("--out", type=Path, default=None)
    p_co.set_defaults(func=cmd_correlate)

    p_vf = sub.add_parser("verify", help="run an acceptance suite")
    p_vf.add_argument("suite", help="a1..a12, a descriptive alias, or 'all'")
    p_vf.set_defaults(func=cmd_verify)

    for sp in (p_cg, p_wd, p_wp, p_pr, p_co, p_vf):
        sp._negative_number_matcher = _NEGATIVE_VALUE
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (FitFailureError, LobeTrackingError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
