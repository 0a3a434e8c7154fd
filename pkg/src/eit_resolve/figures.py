"""Tabular data behind the resolution figures.

Every builder returns a :class:`FigureData` whose rows have already been
checked against the geometric invariants of the plotted quantity.  Output is
CSV (``#`` parameter header, then numeric rows) or JSON with the same fields;
floats use Python's shortest round-trip repr, so files are reproducible
byte for byte.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .conformal import halfplane_params
from .resolution import (
    c_lower_bound,
    center_radius,
    depth_radius_disk,
    depth_radius_halfplane,
    eps_max,
    k_threshold,
    tangent_slope,
)
from .spectral_dn import ellipticity_k

FIGURES = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10")
GRID = 200
CIRCLE_POINTS = 64
RANGE_NOTE = "axis ranges and grids are defaults of this tool; no numeric ranges are given with the original figures"

DISK_FAMILY_R = {"fig4": 0.1, "fig5": 0.2, "fig6": 0.3}
HALFPLANE_FAMILY_R = {"fig7": 0.05, "fig8": 0.1, "fig9": 0.15}
DEFAULTS = {
    "fig1": {"K": 50.0},
    "fig2": {"eps": 0.1, "K_max": 1e3},
    "fig3": {"K": 100.0, "eps": 0.1},
    "fig10": {"r": 0.15, "q_max": 5.0},
}


class FigureInvariantError(ValueError):
    pass


@dataclass
class FigureData:
    figure: str
    params: dict
    columns: list[str]
    rows: list[tuple] = field(default_factory=list)

    def column(self, name: str) -> np.ndarray:
        i = self.columns.index(name)
        return np.array([row[i] for row in self.rows], dtype=float)

    def to_csv(self) -> str:
        lines = [f"# figure={self.figure}"]
        lines += [f"# {k}={_fmt(v)}" for k, v in self.params.items()]
        lines.append(",".join(self.columns))
        lines += [",".join(_fmt(x) for x in row) for row in self.rows]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        payload = {"figure": self.figure, "params": self.params, "columns": self.columns,
                   "rows": [list(row) for row in self.rows]}
        return json.dumps(payload, indent=1) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "csv":
            return self.to_csv()
        if fmt == "json":
            return self.to_json()
        raise ValueError(f"unknown format {fmt!r}")


def _fmt(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return str(int(x))
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def _require(condition: bool, message: str) -> None:
    if not condition:
        raise FigureInvariantError(message)


def fig_center_vs_eps(K: float = 50.0, n: int = GRID) -> FigureData:
    """Center resolution as a function of the error level, ``eps`` in ``(0, eps_max)``."""
    top = eps_max(K)
    eps = top * np.arange(1, n + 1) / (n + 1)
    ell = center_radius(eps, ellipticity_k(K))
    _require(bool(np.all(np.diff(ell) > 0)), "ell0 must increase with eps")
    _require(bool(np.all(ell < 1.0)), "ell0 must stay below 1 for eps < eps_max")
    data = FigureData("fig1", {"K": K, "eps_max": top, "grid": n, "note": RANGE_NOTE}, ["eps", "ell0"])
    data.rows = list(zip(eps.tolist(), ell.tolist()))
    return data


def fig_center_vs_K(eps: float = 0.1, K_max: float = 1e3, n: int = GRID) -> FigureData:
    """Center resolution against ``K``, log-spaced in ``(K*, K_max]``, with its lower bound."""
    lo = k_threshold(eps)
    K = np.geomspace(lo, K_max, n + 1)[1:]
    ell = center_radius(eps, (K - 1.0) / (K + 1.0))
    bound = c_lower_bound(eps)
    _require(bool(np.all(np.diff(ell) < 0)), "ell0 must decrease with K")
    _require(bool(np.all(ell > bound)), "ell0 must stay above C(eps)")
    data = FigureData("fig2", {"eps": eps, "K_threshold": lo, "C_eps": bound, "K_max": K_max, "grid": n,
                               "note": RANGE_NOTE}, ["K", "ell0", "C_eps"])
    data.rows = [(k, e, bound) for k, e in zip(K.tolist(), ell.tolist())]
    return data


def fig_depth_disk(K: float = 100.0, eps: float = 0.1, n: int = GRID, ell0: float | None = None) -> FigureData:
    """Resolution against the center position ``q`` in ``[0, 1)`` with the tangent at ``q = 1``."""
    if ell0 is None:
        ell0 = float(center_radius(eps, ellipticity_k(K)))
    _require(0.0 < ell0 < 1.0, f"ell0={ell0!r} is not below 1")
    q = np.arange(n) / n
    ell = depth_radius_disk(ell0, q)
    slope = tangent_slope(ell0)
    _require(bool(np.all(np.diff(ell) < 0)), "ell_q must decrease with q")
    _require(bool(np.all(q + ell < 1.0)), "disks must stay inside the unit disk")
    data = FigureData("fig3", {"K": K, "eps": eps, "ell0": ell0, "grid": n, "note": RANGE_NOTE},
                      ["q", "ell_q", "tangent"])
    data.rows = [(a, b, slope * (1.0 - a)) for a, b in zip(q.tolist(), ell.tolist())]
    return data


def _circle(center: complex, radius: float, m: int = CIRCLE_POINTS):
    t = 2.0 * np.pi * np.arange(m) / m
    return t, center + radius * np.exp(1j * t)


def fig_disk_family(figure: str, r: float, centers=None) -> FigureData:
    """Indistinguishability disks along a radius of the unit disk for center resolution ``r``."""
    centers = np.arange(10) / 10.0 if centers is None else np.asarray(centers, dtype=float)
    data = FigureData(figure, {"r": r, "centers": len(centers), "circle_points": CIRCLE_POINTS,
                               "note": RANGE_NOTE}, ["disk", "q", "radius", "theta", "x", "y"])
    for i, q in enumerate(centers.tolist()):
        rho = float(depth_radius_disk(r, q))
        _require(q + rho < 1.0, f"disk at q={q} leaves the unit disk")
        t, z = _circle(q, rho)
        data.rows += [(i, q, rho, a, b.real, b.imag) for a, b in zip(t.tolist(), z.tolist())]
    return data


def fig_halfplane_family(figure: str, r: float, depths=None, alpha: float = 0.0) -> FigureData:
    """Indistinguishability disks below a horizontal boundary; depth drawn downward (y = -q)."""
    depths = np.arange(1, 11) / 2.0 if depths is None else np.asarray(depths, dtype=float)
    data = FigureData(figure, {"r": r, "alpha": alpha, "depths": len(depths), "circle_points": CIRCLE_POINTS,
                               "orientation": "y downward", "note": RANGE_NOTE},
                      ["disk", "q", "radius", "beta", "theta", "x", "y"])
    for i, q in enumerate(depths.tolist()):
        beta, rho = halfplane_params(q, r)
        _require(rho < q, f"disk at depth {q} crosses the boundary line")
        t, z = _circle(complex(alpha, -q), rho)
        data.rows += [(i, q, rho, beta, a, b.real, b.imag) for a, b in zip(t.tolist(), z.tolist())]
    return data


def fig_cone(r: float = 0.15, q_max: float = 5.0, n: int = GRID) -> FigureData:
    """Half-plane resolution cone: radius grows linearly with depth."""
    q = q_max * np.arange(1, n + 1) / n
    ell = depth_radius_halfplane(r, q)
    slope = tangent_slope(r)
    _require(bool(np.all(ell < q)), "cone radius must stay below depth")
    data = FigureData("fig10", {"r": r, "slope": slope, "q_max": q_max, "grid": n,
                                "orientation": "y downward", "note": RANGE_NOTE},
                      ["q", "ell_q", "slope", "y"])
    data.rows = [(a, b, slope, -a) for a, b in zip(q.tolist(), ell.tolist())]
    return data


def build_figure(figure: str, **overrides) -> FigureData:
    """Build any figure by id; ``overrides`` replace the default parameters."""
    overrides = {k: v for k, v in overrides.items() if v is not None}
    if figure == "fig1":
        return fig_center_vs_eps(**{**DEFAULTS["fig1"], **_pick(overrides, "K", "n")})
    if figure == "fig2":
        return fig_center_vs_K(**{**DEFAULTS["fig2"], **_pick(overrides, "eps", "K_max", "n")})
    if figure == "fig3":
        return fig_depth_disk(**{**DEFAULTS["fig3"], **_pick(overrides, "K", "eps", "n", "ell0")})
    if figure in DISK_FAMILY_R:
        return fig_disk_family(figure, overrides.get("r", DISK_FAMILY_R[figure]))
    if figure in HALFPLANE_FAMILY_R:
        return fig_halfplane_family(figure, overrides.get("r", HALFPLANE_FAMILY_R[figure]))
    if figure == "fig10":
        return fig_cone(**{**DEFAULTS["fig10"], **_pick(overrides, "r", "q_max", "n")})
    raise KeyError(f"unknown figure {figure!r}; choose from {', '.join(FIGURES)}")


def _pick(d: dict, *keys: str) -> dict:
    return {k: d[k] for k in keys if k in d}
