"""Triangulations of the unit disk for the finite-element oracle.

Points are a hexagonal lattice of spacing ``h/2`` clipped away from the unit
circle, plus equispaced rings on the unit circle and, optionally, on an
inclusion circle.  Lattice points inside a band around each ring are
dropped, so the Delaunay triangulation contains every ring chord and the
inclusion is resolved exactly by whole triangles.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.spatial import Delaunay

MAX_VERTICES = 4_000_000
BAND = 0.6
# lattice and ring spacing relative to h; band-crossing edges reach ~2 spacings
SPACING = 0.5


class MeshTooLargeError(MemoryError):
    def __init__(self, h: float, count: int):
        self.h, self.count = h, count
        super().__init__(f"h={h!r} needs about {count} vertices (budget {MAX_VERTICES})")


@dataclass(frozen=True)
class TriMesh:
    vertices: np.ndarray  # (V, 2)
    triangles: np.ndarray  # (T, 3), counter-clockwise
    boundary: np.ndarray  # (B,) vertex indices in angular order
    theta: np.ndarray  # (B,) boundary angles in [0, 2 pi)

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    def areas(self) -> np.ndarray:
        """Signed triangle areas (positive for a valid mesh)."""
        p = self.vertices[self.triangles]
        d1 = p[:, 1] - p[:, 0]
        d2 = p[:, 2] - p[:, 0]
        return 0.5 * (d1[:, 0] * d2[:, 1] - d1[:, 1] * d2[:, 0])

    def centroids(self) -> np.ndarray:
        return self.vertices[self.triangles].mean(axis=1)

    def edge_lengths(self) -> np.ndarray:
        p = self.vertices[self.triangles]
        return np.linalg.norm(p - np.roll(p, -1, axis=1), axis=2)

    def interior(self) -> np.ndarray:
        mask = np.ones(self.n_vertices, dtype=bool)
        mask[self.boundary] = False
        return np.flatnonzero(mask)


def _ring(center: complex, radius: float, h: float) -> np.ndarray:
    m = max(8, math.ceil(2.0 * math.pi * radius / h))
    return center + radius * np.exp(2j * np.pi * np.arange(m) / m)


def _hex_lattice(h: float) -> np.ndarray:
    dy = h * math.sqrt(3.0) / 2.0
    rows = np.arange(-math.ceil(1.0 / dy), math.ceil(1.0 / dy) + 1)
    cols = np.arange(-math.ceil(1.0 / h) - 1, math.ceil(1.0 / h) + 2)
    x = cols[None, :] * h + 0.5 * h * (rows[:, None] % 2)
    y = np.broadcast_to(rows[:, None] * dy, x.shape)
    return (x + 1j * y).ravel()


def mesh_unit_disk(h: float, inclusion: tuple[complex, float] | None = None) -> TriMesh:
    """Quasi-uniform triangulation of the unit disk with edges of order ``h``.

    ``inclusion = (center, radius)`` places a vertex ring on that circle so
    each triangle lies entirely inside or outside the inclusion.
    """
    if not (0.0 < h <= 0.5):
        raise ValueError(f"mesh size must lie in (0, 0.5], got {h!r}")
    s = SPACING * h
    estimate = int(2.0 * math.pi / (math.sqrt(3.0) * s * s)) + 1
    if estimate > MAX_VERTICES:
        raise MeshTooLargeError(h, estimate)

    boundary = _ring(0.0, 1.0, s)
    lattice = _hex_lattice(s)
    keep = np.abs(lattice) < 1.0 - BAND * s
    rings = [boundary]
    if inclusion is not None:
        center, radius = complex(inclusion[0]), float(inclusion[1])
        if abs(center) + radius >= 1.0 or radius <= 0.0:
            raise ValueError(f"inclusion B_{radius}({center}) is not inside the unit disk")
        keep &= np.abs(np.abs(lattice - center) - radius) > BAND * s
        inner = _ring(center, radius, s)
        inner = inner[np.abs(inner) < 1.0 - BAND * s]
        rings.append(inner)
    points = np.concatenate([*rings, lattice[keep]])
    xy = np.column_stack([points.real, points.imag])

    tri = Delaunay(xy).simplices.astype(np.int64)
    theta = 2.0 * np.pi * np.arange(len(boundary)) / len(boundary)
    mesh = TriMesh(xy, tri, np.arange(len(boundary)), theta)
    area = mesh.areas()
    flip = area < 0.0
    tri[flip] = tri[flip][:, [0, 2, 1]]
    tri = tri[np.abs(area) > 1e-14 * s * s]
    return TriMesh(xy, tri, mesh.boundary, mesh.theta)


def write_mesh(mesh: TriMesh, path) -> None:
    """Plain-text dump: ``V T B`` header, vertex, triangle and boundary lines."""
    lines = [f"{mesh.n_vertices} {len(mesh.triangles)} {len(mesh.boundary)}"]
    lines += [f"{x!r} {y!r}" for x, y in mesh.vertices.tolist()]
    lines += [f"{i} {j} {k}" for i, j, k in mesh.triangles.tolist()]
    lines += [f"{i} {t!r}" for i, t in zip(mesh.boundary.tolist(), mesh.theta.tolist())]
    Path(path).write_text("\n".join(lines) + "\n")


def read_mesh(path) -> TriMesh:
    with open(path) as fh:
        V, T, B = (int(x) for x in fh.readline().split())
        lines = [line.split() for line in fh if line.strip()]
    if len(lines) != V + T + B:
        raise ValueError(f"{path}: expected {V + T + B} data lines, found {len(lines)}")
    vertices = np.array(lines[:V], dtype=float).reshape(V, 2)
    triangles = np.array(lines[V : V + T], dtype=np.int64).reshape(T, 3)
    tail = lines[V + T :]
    boundary = np.array([int(row[0]) for row in tail], dtype=np.int64)
    theta = np.array([float(row[1]) for row in tail])
    return TriMesh(vertices, triangles, boundary, theta)
