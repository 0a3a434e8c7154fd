"""Command-line front end.

Exit codes: 0 success, 1 computation or verification failure, 2 usage error.
"""

from __future__ import annotations

import json
import sys

import click
import numpy as np

from . import figures
from .conformal import disk_params_from_p
from .pde_oracle import verify as oracle
from .pde_oracle.mesh import mesh_unit_disk, write_mesh
from .resolution import (
    c_lower_bound,
    depth_radius_disk,
    depth_radius_halfplane,
    eps_max,
    halfplane_beta,
    k_threshold,
    resolution_center,
    tangent_slope,
)
from .spectral_dn import Contrast, extreme_maps, mode_ratios, op_norm_diff_extremes, op_norm_diff_numeric

FORMATS = click.Choice(["csv", "json"])


def _fail(exc: Exception):
    raise click.ClickException(str(exc)) from exc


def _emit(data: figures.FigureData, fmt: str, out: str | None) -> None:
    text = data.render(fmt)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


def _center(eps, K, r) -> tuple[float, dict]:
    """Center resolution from ``--r`` directly, or from ``--eps``/``--K``."""
    if r is not None:
        if eps is not None or K is not None:
            raise click.UsageError("give either --r or --eps/--K, not both")
        if not 0.0 < r < 1.0:
            raise click.ClickException(f"--r must lie in (0, 1), got {r!r}")
        return r, {"ell0": r}
    if eps is None or K is None:
        raise click.UsageError("need both --eps and --K (or --r)")
    try:
        res = resolution_center(eps, K)
    except ValueError as exc:
        _fail(exc)
    if not res.meaningful:
        raise click.ClickException(
            f"ell0={res.ell0!r} is not below 1 (eps_max={res.eps_max!r}, K*={res.k_threshold!r})"
        )
    return res.ell0, {"eps": eps, "K": K, "ell0": res.ell0}


@click.group()
def main():
    """Depth-dependent resolution limits for 2-D impedance tomography."""


@main.command()
@click.option("--eps", type=float, required=True, help="Error level on the D-N map.")
@click.option("--K", "K", type=float, required=True, help="Ellipticity bound K > 1.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
def ell0(eps, K, fmt):
    """Resolution limit at the center of the unit disk."""
    try:
        res = resolution_center(eps, K)
        fields = {
            "ell0": res.ell0,
            "eps_max": eps_max(K),
            "K_threshold": k_threshold(eps),
            "C_eps": c_lower_bound(eps),
            "meaningful": res.meaningful,
        }
    except ValueError as exc:
        _fail(exc)
    if fmt == "json":
        click.echo(json.dumps({"eps": eps, "K": K, **fields}))
    else:
        for key, value in fields.items():
            click.echo(f"{key}={str(value).lower() if isinstance(value, bool) else repr(value)}")


def _q_values(q, grid, lo_open: bool, q_max: float) -> np.ndarray:
    if q:
        return np.array(sorted(q), dtype=float)
    if lo_open:
        return q_max * np.arange(1, grid + 1) / grid
    return np.arange(grid) / grid


@main.command()
@click.option("--eps", type=float)
@click.option("--K", "K", type=float)
@click.option("--r", type=float, help="Use this center resolution instead of --eps/--K.")
@click.option("--q", type=float, multiple=True, help="Center position(s) in [0, 1); repeatable.")
@click.option("--grid", type=click.IntRange(min=2), default=figures.GRID, show_default=True)
@click.option("--format", "fmt", type=FORMATS, default="csv")
@click.option("--out", type=click.Path(dir_okay=False))
def ellq(eps, K, r, q, grid, fmt, out):
    """Resolution limit against the center position inside the unit disk.

    Defaults to K=100, eps=0.1 when no parameters are given.
    """
    if eps is None and K is None and r is None:
        eps, K = figures.DEFAULTS["fig3"]["eps"], figures.DEFAULTS["fig3"]["K"]
    ell0, params = _center(eps, K, r)
    qs = _q_values(q, grid, False, 1.0)
    if np.any((qs < 0.0) | (qs >= 1.0)):
        raise click.ClickException("every q must lie in [0, 1)")
    slope = tangent_slope(ell0)
    data = figures.FigureData("ellq", {**params, "tangent_slope": slope}, ["q", "ell_q", "tangent"])
    data.rows = [(a, float(depth_radius_disk(ell0, a)), slope * (1.0 - a)) for a in qs.tolist()]
    _emit(data, fmt, out)


@main.command()
@click.option("--eps", type=float)
@click.option("--K", "K", type=float)
@click.option("--r", type=float, help="Center resolution of the unit disk; default 0.15.")
@click.option("--q", type=float, multiple=True, help="Depth(s) > 0; repeatable.")
@click.option("--grid", type=click.IntRange(min=1), default=figures.GRID, show_default=True)
@click.option("--q-max", type=float, default=5.0, show_default=True)
@click.option("--format", "fmt", type=FORMATS, default="csv")
@click.option("--out", type=click.Path(dir_okay=False))
def halfplane(eps, K, r, q, grid, q_max, fmt, out):
    """Resolution limit against depth in the upper half plane."""
    if eps is None and K is None and r is None:
        r = figures.DEFAULTS["fig10"]["r"]
    ell0, params = _center(eps, K, r)
    qs = _q_values(q, grid, True, q_max)
    if np.any(qs <= 0.0):
        raise click.ClickException("every depth q must be positive")
    slope = tangent_slope(ell0)
    data = figures.FigureData("halfplane", {**params, "slope": slope}, ["q", "ell_q", "beta", "slope"])
    data.rows = [(a, float(depth_radius_halfplane(ell0, a)), halfplane_beta(ell0, a), slope) for a in qs.tolist()]
    _emit(data, fmt, out)


@main.command()
@click.option("--K", "K", type=float, required=True)
@click.option("--r", type=float, required=True)
@click.option("--N", "N", type=click.IntRange(min=1), default=32, show_default=True)
@click.option("--format", "fmt", type=FORMATS, default="csv")
@click.option("--out", type=click.Path(dir_okay=False))
def dnmap(K, r, N, fmt, out):
    """Multipliers of the two extreme concentric conductivities, mode by mode."""
    try:
        contrast = Contrast(K)
        high, low = extreme_maps(contrast, r, N)
        norm = op_norm_diff_extremes(contrast, r)
        _, attained = op_norm_diff_numeric(high, low)
    except ValueError as exc:
        _fail(exc)
    ratios = mode_ratios(high, low)
    data = figures.FigureData("dnmap", {"K": K, "r": r, "N": N, "op_norm_diff_extremes": norm},
                              ["n", "lambda_K", "lambda_Kinv", "diff_over_n"])
    data.rows = [(n, high.multiplier(n), low.multiplier(n), float(ratios[n - 1])) for n in range(1, N + 1)]
    text = data.render(fmt)
    if fmt == "csv":
        text += f"# summary op_norm_diff_extremes={norm!r} attained_at={attained}\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        click.echo(text, nl=False)


@main.command()
@click.argument("suite", type=click.Choice(["spectral", "conformal", "monotonic", "all"]))
@click.option("--h", type=click.FloatRange(0.0, 0.5, min_open=True), default=0.02, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--dump-mesh", type=click.Path(dir_okay=False), help="Write the first FEM mesh used.")
def verify(suite, h, seed, dump_mesh):
    """Run oracle cross-checks; exit 1 if any case misses its tolerance."""
    results = []
    if suite in ("spectral", "all"):
        results += oracle.spectral_suite()
    if suite in ("conformal", "all"):
        results += oracle.conformal_suite(h)
    if suite in ("monotonic", "all"):
        results += oracle.monotonic_suite(h, seed)
    for res in results:
        click.echo(res.describe())
    if dump_mesh:
        if suite == "spectral":
            mesh = mesh_unit_disk(h)
        elif suite == "monotonic":
            mesh = mesh_unit_disk(h, inclusion=(0.2, 0.3))
        else:
            p, r = oracle.CONFORMAL_P[0], oracle.CONFORMAL_R[0]
            mesh = mesh_unit_disk(h, inclusion=disk_params_from_p(p, r))
        write_mesh(mesh, dump_mesh)
    failed = [res for res in results if not res.passed]
    click.echo(f"{len(results) - len(failed)}/{len(results)} cases passed")
    if failed:
        worst = max(failed, key=lambda res: res.discrepancy / res.tolerance)
        click.echo(f"worst offender: {worst.describe()}", err=True)
        sys.exit(1)


@main.command()
@click.argument("figure_id", metavar="FIGURE", type=click.Choice(figures.FIGURES))
@click.option("--K", "K", type=float)
@click.option("--eps", type=float)
@click.option("--r", type=float)
@click.option("--grid", type=click.IntRange(min=2))
@click.option("--format", "fmt", type=FORMATS, default="csv")
@click.option("--out", type=click.Path(dir_okay=False))
def figure(figure_id, K, eps, r, grid, fmt, out):
    """Write the data of one figure (fig1..fig10) as CSV or JSON."""
    try:
        data = figures.build_figure(figure_id, K=K, eps=eps, r=r, n=grid)
    except ValueError as exc:
        _fail(exc)
    _emit(data, fmt, out)


if __name__ == "__main__":
    main()
