"""Batch command-line entry points for every pipeline stage.

Each subcommand is a thin adapter over the library: machine output goes to
stdout or files, diagnostics to stderr, exit code 0 iff no error.
"""

from __future__ import annotations

import sys
from pathlib import Path

import click
import numpy as np

from . import evaluation, pngio, template_store
from .errors import CoachError
from .masks import (
    DEFAULT_CLEAN_RADIUS,
    DEFAULT_DIFF_THRESHOLD,
    clean_mask,
    subtract_background,
)
from .similarity import DEFAULT_PASS_THRESHOLD, classify
from .template_store import (
    Perturbation,
    builtin_store,
    generate_synthetic_dataset,
    load_dataset,
    load_store,
    save_dataset,
    save_store,
)


def _open_store(root: str | None) -> template_store.TemplateStore:
    if root is None:
        return builtin_store()
    return load_store(root)


def _parse_sweep(spec: str) -> list[float]:
    """start:stop:step with inclusive endpoints."""
    try:
        start, stop, step = (float(p) for p in spec.split(":"))
    except ValueError:
        raise click.BadParameter(f"sweep must be start:stop:step, got {spec!r}")
    if step <= 0 or stop < start:
        raise click.BadParameter(f"bad sweep range {spec!r}")
    n = int(round((stop - start) / step))
    thresholds = [round(start + i * step, 10) for i in range(n + 1)]
    return [t for t in thresholds if t <= stop + 1e-12]


@click.group()
@click.option("--store", "store_root", type=click.Path(file_okay=False), default=None,
              help="Template store root; omit to use the builtin templates.")
@click.option("--verbose", is_flag=True, default=False)
@click.pass_context
def main(ctx, store_root, verbose):
    """Silhouette-based exercise scoring toolkit."""
    ctx.ensure_object(dict)
    ctx.obj["store_root"] = store_root
    ctx.obj["verbose"] = verbose


@main.command()
@click.argument("background", type=click.Path(exists=True, dir_okay=False))
@click.argument("frame", type=click.Path(exists=True, dir_okay=False))
@click.argument("out", type=click.Path(dir_okay=False))
@click.option("--diff-threshold", type=int, default=DEFAULT_DIFF_THRESHOLD, show_default=True)
@click.option("--clean-radius", type=int, default=DEFAULT_CLEAN_RADIUS, show_default=True)
def subtract(background, frame, out, diff_threshold, clean_radius):
    """Background-subtract FRAME against BACKGROUND; write the mask PNG to OUT."""
    try:
        bg = pngio.load_gray(background)
        fr = pngio.load_gray(frame)
        mask = clean_mask(subtract_background(bg, fr, diff_threshold), clean_radius)
    except CoachError as exc:
        raise click.ClickException(str(exc))
    pngio.save_mask(mask, out)
    click.echo(int(np.count_nonzero(mask)))


@main.command()
@click.argument("attempt", type=click.Path(exists=True, dir_okay=False))
@click.option("--threshold", type=float, default=DEFAULT_PASS_THRESHOLD, show_default=True)
@click.pass_context
def match(ctx, attempt, threshold):
    """Nearest-neighbor match ATTEMPT (a mask PNG) against the store."""
    try:
        store = _open_store(ctx.obj["store_root"])
        mask = pngio.load_mask(attempt)
        accepted, result = classify(mask, store.templates, threshold)
    except CoachError as exc:
        raise click.ClickException(str(exc))
    click.echo(f"{result.template_id}\t{result.alpha:.6f}\t{'accepted' if accepted else 'rejected'}")


@main.command()
@click.argument("dataset", type=click.Path(exists=True, file_okay=False))
@click.option("--sweep", default="0.0:1.0:0.1", show_default=True,
              help="Threshold sweep start:stop:step, inclusive endpoints.")
@click.option("--report", "report_path", type=click.Path(dir_okay=False), default=None,
              help="Write the per-threshold CSV report here.")
@click.pass_context
def evaluate(ctx, dataset, sweep, report_path):
    """Score a labeled DATASET tree and print the ROC sweep."""
    thresholds = _parse_sweep(sweep)
    try:
        store = _open_store(ctx.obj["store_root"])
        attempts = load_dataset(dataset)
        scored = evaluation.score_attempts(store, attempts)
        rows = evaluation.evaluation_rows(scored, thresholds)
        curve = evaluation.roc_curve(scored, thresholds)
        best = evaluation.optimal_threshold(curve)
    except CoachError as exc:
        raise click.ClickException(str(exc))
    click.echo(evaluation.summary_table(rows))
    best_row = next(r for r in rows if r["threshold"] == best)
    click.echo(f"optimal_threshold\t{best:.6f}")
    click.echo(f"accuracy_at_optimal\t{best_row['accuracy']:.6f}")
    if report_path:
        evaluation.write_report(rows, report_path)
        if ctx.obj["verbose"]:
            click.echo(f"report written to {report_path}", err=True)


@main.command()
@click.argument("out", type=click.Path(file_okay=False))
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--attempts-per-template", "-n", type=int, default=5, show_default=True)
@click.option("--dilate-px", type=int, default=1, show_default=True)
@click.option("--erode-px", type=int, default=0, show_default=True)
@click.option("--translate-px", type=int, default=0, show_default=True)
@click.pass_context
def synth(ctx, out, seed, attempts_per_template, dilate_px, erode_px, translate_px):
    """Generate a deterministic synthetic labeled dataset under OUT."""
    try:
        store = _open_store(ctx.obj["store_root"])
        attempts = generate_synthetic_dataset(
            seed,
            store,
            attempts_per_template=attempts_per_template,
            perturbation=Perturbation(dilate_px, erode_px, translate_px),
        )
        save_dataset(attempts, out)
    except CoachError as exc:
        raise click.ClickException(str(exc))
    click.echo(len(attempts))


@main.command("init-store")
@click.argument("out", type=click.Path(file_okay=False))
@click.option("--canvas", type=int, default=template_store.DEFAULT_CANVAS, show_default=True)
def init_store(out, canvas):
    """Write the builtin template store to OUT for editing or serving."""
    store = builtin_store(canvas)
    save_store(store, out)
    click.echo(len(store))


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
@click.option("--pass-threshold", type=float, default=DEFAULT_PASS_THRESHOLD, show_default=True)
@click.option("--max-attempts", type=int, default=3, show_default=True)
@click.pass_context
def serve(ctx, host, port, pass_threshold, max_attempts):
    """Run the coaching HTTP service until terminated."""
    import uvicorn

    from .service import create_app
    from .session import SessionConfig

    try:
        store = _open_store(ctx.obj["store_root"])
    except CoachError as exc:
        raise click.ClickException(str(exc))
    app = create_app(
        store,
        SessionConfig(pass_threshold=pass_threshold, max_attempts_per_template=max_attempts),
    )
    uvicorn.run(app, host=host, port=port, log_level="info")


if __name__ == "__main__":
    main()
