"""Command-line front door: batch rendering, assessment charts, profile
validation and the render service."""

from __future__ import annotations

import glob as globmod
import json
import os
import sys
import time as timemod

import click

from .assessment import AmslerSpec, ContrastChartSpec, render_amsler, render_contrast_chart
from .errors import ParameterError, SpecError
from .frame import load_image, save_image
from .gaze import ScriptedPathSource
from .geometry import DEFAULT_GEOMETRY, ViewingGeometry
from .pipeline import render, validate
from .profiles import ProfileError, load as load_profile
from .symptoms import RenderContext, schema

EXIT_IO = 1
EXIT_VALIDATION = 2


def _parse_gaze(text: str) -> tuple[float, float]:
    try:
        x, y = (float(p) for p in text.split(","))
    except ValueError:
        raise click.UsageError(f"--gaze must be 'x,y' with normalized coordinates, got {text!r}")
    return (min(max(x, 0.0), 1.0), min(max(y, 0.0), 1.0))


def _parse_size(text: str) -> tuple[int, int]:
    try:
        w, h = (int(p) for p in text.lower().split("x"))
    except ValueError:
        raise click.UsageError(f"--size must be WxH, got {text!r}")
    if w < 1 or h < 1:
        raise click.UsageError("--size must be positive")
    return w, h


def _geometry(distance_m: float, pitch_mm: float, size: str) -> ViewingGeometry:
    w, h = _parse_size(size)
    return ViewingGeometry(
        screen_width_px=w,
        screen_height_px=h,
        pixel_pitch=pitch_mm / 1000.0,
        viewing_distance=distance_m,
    )


@click.group()
@click.version_option()
def main():
    """Vision-impairment simulation: apply symptom filters to images,
    generate assessment charts, and serve the interactive panel."""


@main.command()
@click.argument("input_path")
@click.option("--profile", "-p", "profile_path", required=True, help="Profile JSON to apply.")
@click.option("--output", "-o", "output_path", required=True, help="Output image (PNG or PPM).")
@click.option("--gaze", default="0.5,0.5", show_default=True, help="Fixed normalized gaze 'x,y'.")
@click.option("--gaze-path", default=None, help="Scripted gaze file: 't x y valid' per line.")
@click.option("--frames", default=1, show_default=True, help="Number of frames to render.")
@click.option("--fps", default=30.0, show_default=True, help="Timeline rate for --frames > 1.")
@click.option("--time", "time_s", default=0.0, show_default=True, help="Timeline start (seconds).")
@click.option("--seed", default=None, type=int, help="Override the profile seed.")
def apply(input_path, profile_path, output_path, gaze, gaze_path, frames, fps, time_s, seed):
    """Render INPUT_PATH (a file, directory or glob) through a profile.

    Frame k of a sequence is rendered at time k/fps, with gaze from the
    scripted path (if given) or the fixed point. Multi-frame output paths
    get a frame number suffix."""
    try:
        profile = load_profile(profile_path)
    except FileNotFoundError as e:
        click.echo(f"cannot read profile: {e}", err=True)
        sys.exit(EXIT_IO)
    except ProfileError as e:
        click.echo(f"profile rejected: {e}", err=True)
        sys.exit(EXIT_VALIDATION)

    report = validate(profile.stack)
    if not report.ok:
        for msg in report.messages():
            click.echo(msg, err=True)
        sys.exit(EXIT_VALIDATION)

    inputs = _resolve_inputs(input_path)
    if not inputs:
        click.echo(f"no inputs match {input_path!r}", err=True)
        sys.exit(EXIT_IO)

    n_frames = max(int(frames), 1)
    if len(inputs) > 1:
        n_frames = len(inputs)

    gaze_source = None
    if gaze_path is not None:
        try:
            gaze_source = ScriptedPathSource.from_file(gaze_path)
        except (OSError, ParameterError) as e:
            click.echo(f"cannot read gaze path: {e}", err=True)
            sys.exit(EXIT_IO)
    fixed_gaze = _parse_gaze(gaze)

    use_seed = profile.seed if seed is None else seed
    total_ms = 0.0
    try:
        source_frame = load_image(inputs[0]) if len(inputs) == 1 else None
    except Exception as e:
        click.echo(f"cannot read {inputs[0]}: {e}", err=True)
        sys.exit(EXIT_IO)

    for k in range(n_frames):
        t = time_s + k / fps
        try:
            frame = source_frame if source_frame is not None else load_image(inputs[k])
        except Exception as e:
            click.echo(f"cannot read {inputs[k]}: {e}", err=True)
            sys.exit(EXIT_IO)
        if gaze_source is not None:
            s = gaze_source.poll(t)
            gx, gy = s.x, s.y
        else:
            gx, gy = fixed_gaze
        ctx = RenderContext(
            gaze=(gx * (frame.width - 1), gy * (frame.height - 1)),
            time=t,
            geometry=DEFAULT_GEOMETRY,
            seed=use_seed,
        )
        t0 = timemod.perf_counter()
        out = render(frame, profile.stack, ctx)
        ms = (timemod.perf_counter() - t0) * 1000.0
        total_ms += ms
        path = _numbered(output_path, k) if n_frames > 1 else output_path
        try:
            save_image(out, path)
        except OSError as e:
            click.echo(f"cannot write {path}: {e}", err=True)
            sys.exit(EXIT_IO)
        click.echo(f"frame {k}: {ms:.1f} ms -> {path}")
    click.echo(f"total: {total_ms:.1f} ms for {n_frames} frame(s)")


def _resolve_inputs(input_path: str) -> list[str]:
    if os.path.isdir(input_path):
        return sorted(
            os.path.join(input_path, f)
            for f in os.listdir(input_path)
            if f.lower().endswith((".png", ".ppm", ".jpg", ".jpeg"))
        )
    if any(c in input_path for c in "*?["):
        return sorted(globmod.glob(input_path))
    return [input_path] if os.path.isfile(input_path) else []


def _numbered(path: str, k: int) -> str:
    stem, ext = os.path.splitext(path)
    return f"{stem}_{k:04d}{ext or '.png'}"


@main.command()
@click.argument("kind", type=click.Choice(["amsler", "contrast"]))
@click.option("--distance-m", required=True, type=float, help="Viewing distance in meters.")
@click.option("--pitch-mm", required=True, type=float, help="Pixel pitch in millimeters.")
@click.option("--size", default="2560x1440", show_default=True, help="Screen size WxH in pixels.")
@click.option("--output", "-o", "output_path", required=True, help="Output PNG.")
@click.option("--extent", default=10, show_default=True, help="Amsler: degrees on each side.")
@click.option("--triplets", default=8, show_default=True, help="Contrast chart: triplet count.")
@click.option("--step", default=0.15, show_default=True, help="Contrast chart: log step.")
@click.option("--chart-seed", default=0, show_default=True, help="Contrast chart: letter seed.")
def assess(kind, distance_m, pitch_mm, size, output_path, extent, triplets, step, chart_seed):
    """Render an assessment chart sized from the viewing geometry."""
    try:
        geometry = _geometry(distance_m, pitch_mm, size)
        if kind == "amsler":
            frame = render_amsler(AmslerSpec(geometry=geometry, grid_extent_degrees=extent))
        else:
            chart = render_contrast_chart(
                ContrastChartSpec(triplets=triplets, contrast_step=step, seed=chart_seed)
            )
            frame = chart.frame
            click.echo(f"triplets rendered: {chart.triplets_rendered}")
    except (ParameterError, SpecError) as e:
        click.echo(str(e), err=True)
        sys.exit(EXIT_VALIDATION)
    try:
        save_image(frame, output_path)
    except OSError as e:
        click.echo(f"cannot write {output_path}: {e}", err=True)
        sys.exit(EXIT_IO)
    click.echo(f"wrote {output_path}")


@main.command("validate")
@click.argument("profile_path")
def validate_cmd(profile_path):
    """Check a profile document; exit 2 with the report if invalid."""
    try:
        with open(profile_path, "r", encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        click.echo(str(e), err=True)
        sys.exit(EXIT_IO)
    from .profiles import loads

    try:
        profile = loads(text)
    except ProfileError as e:
        click.echo(str(e), err=True)
        sys.exit(EXIT_VALIDATION)
    report = validate(profile.stack)
    if not report.ok:
        for msg in report.messages():
            click.echo(msg, err=True)
        sys.exit(EXIT_VALIDATION)
    click.echo(f"{profile.name or profile_path}: ok")


@main.command()
def symptoms():
    """Print the symptom/parameter schema as JSON."""
    click.echo(json.dumps(schema(), indent=2, sort_keys=True))


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", default=8765, show_default=True)
@click.option("--profile-dir", default=None, help="Preset storage directory (or $VISIM_PROFILE_DIR).")
def serve(host, port, profile_dir):
    """Run the local render service (and the panel at /ui if built)."""
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(profile_dir), host=host, port=port, log_level="warning")


if __name__ == "__main__":
    main()
