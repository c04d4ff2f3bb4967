"""Command-line interface.

Exit codes are stable contracts: 0 success, 2 spec parse/document error,
3 engine planning error (the message names the violated precondition),
4 verification violation.
"""

from __future__ import annotations

import csv
import sys
from pathlib import Path

import click

from .errors import AquanimError, SpecError
from .geometry import liquid_areas
from .render import emit_animated_svg, emit_keyframes_doc, emit_svg, sample_frames
from .specdoc import load_spec_doc, plan_from_doc
from .transitions import evaluate
from .verify import check_script

EXIT_OK = 0
EXIT_SPEC_ERROR = 2
EXIT_PLANNING_ERROR = 3
EXIT_VERIFY_FAILED = 4


def _plan(spec_path: str):
    doc = load_spec_doc(spec_path)
    return plan_from_doc(doc, Path(spec_path).resolve().parent)


def cmd_render(spec_path: str, out_path: str, format: str = "frames") -> int:
    """Render a spec to numbered SVG frames, one animated SVG, or keyframes."""
    try:
        script, cfg = _plan(spec_path)
        frames = sample_frames(script, cfg)
        out = Path(out_path)
        if format == "frames":
            out.mkdir(parents=True, exist_ok=True)
            pad = max(3, len(str(len(frames) - 1)))
            for i, frame in enumerate(frames):
                (out / f"{i:0{pad}d}.svg").write_bytes(emit_svg(frame, cfg))
            click.echo(f"wrote {len(frames)} frames to {out}")
        elif format == "animated-svg":
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_bytes(emit_animated_svg(frames, cfg))
            click.echo(f"wrote animated SVG to {out}")
        elif format == "keyframes":
            out.parent.mkdir(parents=True, exist_ok=True)
            out.write_bytes(emit_keyframes_doc(frames, cfg))
            click.echo(f"wrote keyframe document to {out}")
        else:
            click.echo(f"unknown format {format!r}", err=True)
            return EXIT_SPEC_ERROR
    except SpecError as exc:
        click.echo(f"spec error: {exc}", err=True)
        return EXIT_SPEC_ERROR
    except AquanimError as exc:
        click.echo(f"planning error: {exc.code}: {exc}", err=True)
        return EXIT_PLANNING_ERROR
    return EXIT_OK


def cmd_verify(spec_path: str, samples: int = 101, tolerance: float = 1e-9) -> int:
    """Check conservation, occlusion, endpoints and continuity on a spec."""
    try:
        script, _ = _plan(spec_path)
        violations = check_script(script, samples=samples, tolerance=tolerance)
    except SpecError as exc:
        click.echo(f"spec error: {exc}", err=True)
        return EXIT_SPEC_ERROR
    except AquanimError as exc:
        click.echo(f"planning error: {exc.code}: {exc}", err=True)
        return EXIT_PLANNING_ERROR
    if violations:
        click.echo(f"FAIL: {len(violations)} violation(s); first: {violations[0]}",
                   err=True)
        return EXIT_VERIFY_FAILED
    click.echo(f"ok: conservation, occlusion, endpoints and continuity hold "
               f"({samples} samples, tolerance {tolerance})")
    return EXIT_OK


def cmd_report(spec_path: str, out_path: str, samples: int = 101) -> int:
    """Write the per-liquid area ledger as CSV plus diagnostic figures."""
    try:
        script, cfg = _plan(spec_path)
    except SpecError as exc:
        click.echo(f"spec error: {exc}", err=True)
        return EXIT_SPEC_ERROR
    except AquanimError as exc:
        click.echo(f"planning error: {exc.code}: {exc}", err=True)
        return EXIT_PLANNING_ERROR

    out = Path(out_path)
    out.mkdir(parents=True, exist_ok=True)
    ts = [i / (samples - 1) for i in range(samples)]
    ledgers = [(t, liquid_areas(evaluate(script, t))) for t in ts]
    liquids = sorted({lid for _, areas in ledgers for lid in areas})

    csv_path = out / "conservation.csv"
    with csv_path.open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(["t", "liquid", "area"])
        for t, areas in ledgers:
            for lid in liquids:
                writer.writerow([f"{t:.6f}", lid, f"{areas.get(lid, 0.0):.12f}"])

    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
    from matplotlib.patches import Rectangle

    fig, ax = plt.subplots(figsize=(7, 4))
    for lid in liquids:
        ax.plot(ts, [areas.get(lid, 0.0) for _, areas in ledgers], label=lid)
    ax.set_xlabel("t")
    ax.set_ylabel("liquid area")
    ax.set_title("Per-liquid area over the transition")
    ax.legend(loc="best", fontsize=8)
    fig.tight_layout()
    fig.savefig(out / "conservation.png", dpi=120)
    plt.close(fig)

    strip_ts = [0.0, 0.25, 0.5, 0.75, 1.0]
    fig, axes = plt.subplots(1, len(strip_ts), figsize=(3 * len(strip_ts), 3))
    for ax, t in zip(axes, strip_ts):
        frame = evaluate(script, t)
        for prim in frame.primitives:
            if prim.rect is None:
                continue
            face = (prim.fill.r, prim.fill.g, prim.fill.b, prim.fill.a) \
                if prim.fill is not None else "none"
            edge = (prim.stroke.r, prim.stroke.g, prim.stroke.b, prim.stroke.a) \
                if prim.stroke is not None else "none"
            ax.add_patch(Rectangle((prim.rect.x_min, prim.rect.y_min),
                                   prim.rect.width, prim.rect.height,
                                   facecolor=face, edgecolor=edge, linewidth=0.8))
        vp = frame.viewport
        ax.set_xlim(vp.x_min, vp.x_max)
        ax.set_ylim(vp.y_min, vp.y_max)
        ax.set_aspect("equal")
        ax.set_title(f"t={t:g}", fontsize=9)
        ax.set_xticks([])
        ax.set_yticks([])
    fig.tight_layout()
    fig.savefig(out / "frames_strip.png", dpi=120)
    plt.close(fig)

    click.echo(f"wrote {csv_path}, conservation.png, frames_strip.png")
    return EXIT_OK


@click.group()
def main() -> None:
    """Area-preserving animated transitions for statistical charts."""


@main.command("render")
@click.option("--spec", "spec_path", required=True, type=click.Path(), help="Spec document path.")
@click.option("--out", "out_path", required=True, type=click.Path(), help="Output file or directory.")
@click.option("--format", "format_", default="frames",
              type=click.Choice(["frames", "animated-svg", "keyframes"]))
def render_command(spec_path: str, out_path: str, format_: str) -> None:
    sys.exit(cmd_render(spec_path, out_path, format_))


@main.command("verify")
@click.option("--spec", "spec_path", required=True, type=click.Path())
@click.option("--samples", default=101, show_default=True, type=int)
@click.option("--tolerance", default=1e-9, show_default=True, type=float)
def verify_command(spec_path: str, samples: int, tolerance: float) -> None:
    sys.exit(cmd_verify(spec_path, samples, tolerance))


@main.command("report")
@click.option("--spec", "spec_path", required=True, type=click.Path())
@click.option("--out", "out_path", required=True, type=click.Path())
@click.option("--samples", default=101, show_default=True, type=int)
def report_command(spec_path: str, out_path: str, samples: int) -> None:
    sys.exit(cmd_report(spec_path, out_path, samples))


@main.command("serve")
@click.option("--bind", default="127.0.0.1", show_default=True)
@click.option("--port", default=8008, show_default=True, type=int)
def serve_command(bind: str, port: int) -> None:
    from .service import serve

    serve(bind, port)


if __name__ == "__main__":
    main()
