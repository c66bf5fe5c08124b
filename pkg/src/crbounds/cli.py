"""Command-line front end.

Commands write boundary CSVs (`R1,R2` header, 9 significant digits) and JSON
summaries with sorted keys so outputs diff cleanly.  Exit codes: 0 success,
1 gap-certification failure, 2 usage error.
"""

from __future__ import annotations

import json
import os
import sys
from pathlib import Path

import click

from .channel import ChannelParams, classify_regime, make_channel
from .errors import CRBoundsError, InfeasibleTransformError
from .gap import certify, sweep
from .inner import inner_region
from .outer import (TransformParams, outer_cifc_p2p, outer_I_region,
                    outer_p2p_bc, outer_piecewise_region)
from .regions import additive_gap, intersect_regions, Region

FIG4_CHANNEL = make_channel(1.0, 5.0, 0.5, 1.0)


def _resolve_channel(h11, h22, h1c, h2c, channel_path) -> ChannelParams:
    inline = [v for v in (h11, h22, h1c, h2c) if v is not None]
    if channel_path is not None:
        if inline:
            raise click.UsageError("give either --channel or inline gains, not both")
        with open(channel_path) as fh:
            return ChannelParams.from_dict(json.load(fh))
    if len(inline) != 4:
        raise click.UsageError("all of --h11 --h22 --h1c --h2c are required "
                               "(or use --channel FILE)")
    return make_channel(h11, h22, h1c, h2c)


def _parse_sigma_list(text: str):
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError as exc:
        raise click.BadParameter(f"bad sigma list {text!r}") from exc
    if not vals or not all(0 < v <= 1 for v in vals):
        raise click.BadParameter("sigma values must lie in (0, 1]")
    return vals


def _write_csv(region: Region, path: Path) -> None:
    with open(path, "w") as fh:
        region.to_csv(fh)


def _dump_json(obj, path: Path | None = None) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2)
    if path is None:
        click.echo(text)
    else:
        path.write_text(text + "\n")


def channel_options(fn):
    fn = click.option("--channel", "channel_path", type=click.Path(exists=True),
                      help="JSON file with keys h11, h22, h1c, h2c.")(fn)
    for name in ("h2c", "h1c", "h22", "h11"):
        fn = click.option(f"--{name}", type=float, default=None)(fn)
    return fn


@click.group()
def main():
    """Capacity-region bounds for the parallel channel with a cognitive relay."""


@main.command()
@channel_options
@click.option("--grid", type=int, default=512, show_default=True,
              help="Boundary samples per region.")
@click.option("--rho-grid", type=int, default=64, show_default=True,
              help="Correlation grid resolution for the tightest bound.")
@click.option("--sigma-list", default="0.5", show_default=True,
              help="Comma-separated noise-split variances; the transformed "
                   "bounds are intersected over the list.")
@click.option("--out", type=click.Path(file_okay=False), default=".",
              show_default=True)
def bounds(h11, h22, h1c, h2c, channel_path, grid, rho_grid, sigma_list, out):
    """Evaluate all four outer bounds and export their boundaries."""
    ch = _resolve_channel(h11, h22, h1c, h2c, channel_path)
    sigmas = _parse_sigma_list(sigma_list)
    outdir = Path(out)
    outdir.mkdir(parents=True, exist_ok=True)

    th1 = outer_I_region(ch, rho_grid=rho_grid, grid=grid)
    th2 = outer_piecewise_region(ch, grid=grid)
    th3 = intersect_regions([outer_cifc_p2p(ch, sigma11sq=s, grid=th2.grid)
                             for s in sigmas])
    _write_csv(th1, outdir / "outer-th1.csv")
    _write_csv(th2, outdir / "outer-th2.csv")
    _write_csv(th3, outdir / "outer-th3.csv")

    th4_status = "ok"
    th4_parts = []
    for s1 in sigmas:
        for s2 in sigmas:
            try:
                th4_parts.append(outer_p2p_bc(
                    ch, TransformParams(sigma11sq=s1, sigma22sq=s2), grid=th2.grid))
            except InfeasibleTransformError:
                continue
    if th4_parts:
        _write_csv(intersect_regions(th4_parts), outdir / "outer-th4.csv")
    else:
        th4_status = "infeasible: degradedness condition fails for every sigma pair"

    _dump_json({
        "channel": ch.to_dict(),
        "regime": classify_regime(ch),
        "grid": grid,
        "rhoGrid": rho_grid,
        "sigmaList": list(sigmas),
        "th4": th4_status,
        "files": ["outer-th1.csv", "outer-th2.csv", "outer-th3.csv"]
                 + (["outer-th4.csv"] if th4_parts else []),
    }, outdir / "summary.json")


@main.command()
@channel_options
@click.option("--grid", type=int, default=512, show_default=True)
@click.option("--sweep", "sweep_count", type=int, default=None,
              help="Certify this many random channels instead of one.")
@click.option("--min-snr", type=float, default=0.01, show_default=True,
              help="Lower end of the squared-gain sampling range.")
@click.option("--max-snr", type=float, default=1e4, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
def gap(h11, h22, h1c, h2c, channel_path, grid, sweep_count, min_snr, max_snr, seed):
    """Certify the 3-bit constant gap; exit 1 if any gap exceeds it."""
    workers = max(1, int(os.environ.get("CRBOUNDS_THREADS", "1")))
    if sweep_count is not None:
        report = sweep(sweep_count, gain_sq_range=(min_snr, max_snr), seed=seed,
                       max_workers=workers, grid=grid)
        _dump_json(report)
        sys.exit(0 if report["pass"] else 1)
    ch = _resolve_channel(h11, h22, h1c, h2c, channel_path)
    rep = certify(ch, grid=grid)
    _dump_json(rep.to_dict())
    sys.exit(0 if rep.passed else 1)


@main.command()
@click.option("--grid", type=int, default=512, show_default=True)
@click.option("--rho-grid", type=int, default=64, show_default=True)
@click.option("--out", type=click.Path(file_okay=False), default=".",
              show_default=True)
def fig4(grid, rho_grid, out):
    """Reproduce the inner/outer region comparison for the reference channel."""
    ch = FIG4_CHANNEL
    outdir = Path(out)
    outdir.mkdir(parents=True, exist_ok=True)

    inner = inner_region(ch, grid=grid)
    th1 = outer_I_region(ch, rho_grid=rho_grid, grid=grid)
    th2 = outer_piecewise_region(ch, grid=grid)
    _write_csv(inner, outdir / "inner-th5.csv")
    _write_csv(th1, outdir / "outer-th1.csv")
    _write_csv(th2, outdir / "outer-th2.csv")

    rep = certify(ch, grid=grid)
    _dump_json({
        "channel": ch.to_dict(),
        "regime": rep.regime,
        "cornerA": [rep.cornerA.R1, rep.cornerA.R2],
        "cornerB": [rep.cornerB.R1, rep.cornerB.R2],
        "gapA": rep.gapA,
        "gapB": rep.gapB,
        "regionGap": rep.regionGap,
        "gapToTightestOuter": additive_gap(th1, inner),
        "pass": rep.passed,
        "files": ["inner-th5.csv", "outer-th1.csv", "outer-th2.csv"],
    }, outdir / "fig4.json")


if __name__ == "__main__":
    main()
