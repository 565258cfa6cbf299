"""Pairwise bundling detection and the weight matrix.

Two edges count as bundled (directionally, i against j) when some run of
consecutive control points of edge i all lie within a distance threshold
of edge j's control points. The weight matrix holds 1 for bundled
ordered pairs and a small user tradeoff weight for everything else.
"""

from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass

import numpy as np

from .model import EdgeCurve, GraphLayout, layout_extent

# Dense M x M storage guard; sparse matrices are out of scope.
MAX_DENSE_EDGES = 20_000


class ParameterError(ValueError):
    """Invalid detection or tradeoff parameter."""


@dataclass(frozen=True)
class DetectionParams:
    """Detection threshold, run-length fraction and tradeoff weight.

    Exactly one of `t_abs` (absolute distance) and `t_frac` (fraction of
    the larger layout dimension) must be given.
    """

    t_abs: float | None = None
    t_frac: float | None = 0.03
    k_min: float = 0.4
    epsilon: float = 0.001

    def __post_init__(self):
        if (self.t_abs is None) == (self.t_frac is None):
            raise ParameterError("exactly one of t_abs / t_frac must be set")
        if self.t_abs is not None and not self.t_abs > 0:
            raise ParameterError(f"t_abs must be > 0, got {self.t_abs}")
        if self.t_frac is not None and not 0 < self.t_frac <= 1:
            raise ParameterError(f"t_frac must be in (0, 1], got {self.t_frac}")
        if not 0 < self.k_min <= 1:
            raise ParameterError(f"k_min must be in (0, 1], got {self.k_min}")
        if not 0 <= self.epsilon <= 1:
            raise ParameterError(f"epsilon must be in [0, 1], got {self.epsilon}")

    def resolve_t(self, layout: GraphLayout) -> float:
        """The absolute distance threshold for this layout."""
        if self.t_abs is not None:
            return self.t_abs
        w, h = layout_extent(layout)
        t = self.t_frac * max(w, h)
        if t <= 0:
            raise ParameterError(
                "layout has zero extent; a fractional threshold resolves to 0 "
                "(pass an absolute threshold instead)"
            )
        return t


@dataclass(frozen=True)
class BundleWeightMatrix:
    """Detection outcome plus tradeoff weights, both dense M x M.

    `bundled_flag[i, j]` is the raw directional detection; `weights` is 1
    where flagged, epsilon elsewhere, 0 on the diagonal. The matrix may
    be asymmetric.
    """

    m: int
    weights: np.ndarray
    bundled_flag: np.ndarray

    def __post_init__(self):
        if self.m > MAX_DENSE_EDGES:
            raise ParameterError(
                f"dense weight matrix refused for M={self.m} > {MAX_DENSE_EDGES}"
            )
        if self.weights.shape != (self.m, self.m) or self.bundled_flag.shape != (self.m, self.m):
            raise ValueError("matrix shape mismatch")
        self.weights.setflags(write=False)
        self.bundled_flag.setflags(write=False)

    @property
    def bundled_pair_count(self) -> int:
        return int(self.bundled_flag.sum())


def required_run_length(c_i: int, c_j: int, k_min: float) -> int:
    """Run length required for a pair with c_i and c_j control points."""
    return max(1, math.floor(max(c_i, c_j) * k_min))


def proximity_flags(edge_i: EdgeCurve, edge_j: EdgeCurve, t: float) -> np.ndarray:
    """Boolean per control point of edge i: within t of some point of edge j."""
    pi = edge_i.control_array()
    pj = edge_j.control_array()
    d2 = ((pi[:, None, :] - pj[None, :, :]) ** 2).sum(axis=2)
    return d2.min(axis=1) <= t * t


def _has_run(flags: np.ndarray, k: int) -> bool:
    run = 0
    for f in flags:
        run = run + 1 if f else 0
        if run >= k:
            return True
    return False


def detect_pair(edge_i: EdgeCurve, edge_j: EdgeCurve, t: float, k_ij: int) -> bool:
    """Directional detection: does edge i travel bundled with edge j?"""
    if t <= 0:
        raise ParameterError("t must be > 0")
    if k_ij < 1:
        raise ParameterError("k_ij must be >= 1")
    if edge_i.n_controls < k_ij:
        return False
    return _has_run(proximity_flags(edge_i, edge_j, t), k_ij)


class SpatialGrid:
    """Uniform grid over the layout with cell size t.

    Each cell maps to the (edge-id, control-index) pairs whose control
    point falls inside it; a query scans the 3x3 neighborhood and filters
    by exact distance, so results match a linear scan.
    """

    def __init__(self, layout: GraphLayout, t: float):
        if t <= 0:
            raise ParameterError("t must be > 0")
        self.t = t
        min_x, min_y, _, _ = layout.extent
        self.origin = (min_x, min_y)
        self.cells: dict[tuple[int, int], list[tuple[int, int, float, float]]] = defaultdict(list)
        for e in layout.edges:
            for k, p in enumerate(e.controls):
                self.cells[self._cell(p.x, p.y)].append((e.id, k, p.x, p.y))

    def _cell(self, x: float, y: float) -> tuple[int, int]:
        return (
            math.floor((x - self.origin[0]) / self.t),
            math.floor((y - self.origin[1]) / self.t),
        )

    def query(self, x: float, y: float) -> list[tuple[int, int]]:
        """All (edge-id, control-index) within distance t of (x, y)."""
        cx, cy = self._cell(x, y)
        t2 = self.t * self.t
        out = []
        for dx in (-1, 0, 1):
            for dy in (-1, 0, 1):
                for eid, k, px, py in self.cells.get((cx + dx, cy + dy), ()):
                    if (px - x) ** 2 + (py - y) ** 2 <= t2:
                        out.append((eid, k))
        return out


def build_spatial_index(layout: GraphLayout, t: float) -> SpatialGrid:
    return SpatialGrid(layout, t)


def _detect_flags_indexed(layout: GraphLayout, t: float, k_min: float) -> np.ndarray:
    grid = SpatialGrid(layout, t)
    m = layout.m
    # near_edges[i][r]: edge ids with a control point within t of control r of edge i
    near_edges = []
    for e in layout.edges:
        per_control = []
        for p in e.controls:
            per_control.append({eid for eid, _ in grid.query(p.x, p.y)})
        near_edges.append(per_control)

    flags = np.zeros((m, m), dtype=bool)
    counts = [e.n_controls for e in layout.edges]
    for i in range(m):
        near_i = near_edges[i]
        for j in range(m):
            if i == j:
                continue
            k_ij = required_run_length(counts[i], counts[j], k_min)
            if counts[i] < k_ij:
                continue
            run = 0
            for sets in near_i:
                run = run + 1 if j in sets else 0
                if run >= k_ij:
                    flags[i, j] = True
                    break
    return flags


def _detect_flags_brute(layout: GraphLayout, t: float, k_min: float) -> np.ndarray:
    m = layout.m
    flags = np.zeros((m, m), dtype=bool)
    for i, ei in enumerate(layout.edges):
        for j, ej in enumerate(layout.edges):
            if i == j:
                continue
            k_ij = required_run_length(ei.n_controls, ej.n_controls, k_min)
            flags[i, j] = detect_pair(ei, ej, t, k_ij)
    return flags


def build_weight_matrix(
    layout: GraphLayout, params: DetectionParams, *, use_index: bool = True
) -> BundleWeightMatrix:
    """Run pairwise detection for every ordered pair and apply the tradeoff.

    The spatial-index path and the brute-force path (`use_index=False`)
    produce identical results.
    """
    if layout.m > MAX_DENSE_EDGES:
        raise ParameterError(
            f"dense weight matrix refused for M={layout.m} > {MAX_DENSE_EDGES}"
        )
    t = params.resolve_t(layout)
    if use_index:
        flags = _detect_flags_indexed(layout, t, params.k_min)
    else:
        flags = _detect_flags_brute(layout, t, params.k_min)
    weights = np.where(flags, 1.0, params.epsilon)
    np.fill_diagonal(weights, 0.0)
    return BundleWeightMatrix(m=layout.m, weights=weights, bundled_flag=flags)


def dump_bundled_pairs(w: BundleWeightMatrix) -> list[dict]:
    """Flagged ordered pairs as [{"i": ..., "j": ...}], lexicographic."""
    ii, jj = np.nonzero(w.bundled_flag)
    return [{"i": int(i), "j": int(j)} for i, j in zip(ii, jj)]
