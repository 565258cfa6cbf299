"""Color optimization: weighted stress minimization plus normalization.

The embedding places every edge in a 1- to 3-dimensional color space so
that distances between bundled edges match their endpoint
dissimilarities; non-bundled pairs enter with the tradeoff weight. The
optimizer is SMACOF stress majorization, so the cost never increases
across iterations. Afterwards every edge's value is rescaled against its
bundle neighborhood so each bundle spans the full color range.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bundling import BundleWeightMatrix
from .dissimilarity import DissimilarityMatrix
from .model import GraphLayout

_TINY = 1e-30


class OptimizationError(ValueError):
    """The optimization problem is degenerate (e.g. all weights zero)."""


@dataclass(frozen=True)
class ColorEmbedding:
    m: int
    q: int
    y: np.ndarray

    def __post_init__(self):
        if self.q not in (1, 2, 3):
            raise ValueError(f"q must be 1, 2 or 3, got {self.q}")
        if self.y.shape != (self.m, self.q):
            raise ValueError("embedding shape mismatch")
        if not np.isfinite(self.y).all():
            raise ValueError("embedding contains non-finite values")
        self.y.setflags(write=False)


@dataclass(frozen=True)
class OptimizerConfig:
    q: int = 1
    max_iters: int = 500
    rel_tol: float = 1e-6
    seed: int = 0
    init: str = "endpoint-projection"  # or "seeded-random"

    def __post_init__(self):
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be > 0")
        if self.init not in ("endpoint-projection", "seeded-random"):
            raise ValueError(f"unknown init {self.init!r}")


@dataclass(frozen=True)
class ColorTable:
    m: int
    q: int
    col: np.ndarray

    def __post_init__(self):
        if self.col.shape != (self.m, self.q):
            raise ValueError("color table shape mismatch")
        if (self.col < 0).any() or (self.col > 1).any():
            raise ValueError("color table entries must lie in [0, 1]")
        self.col.setflags(write=False)


@dataclass(frozen=True)
class OptimizeResult:
    embedding: ColorEmbedding
    stress: float
    n_iters: int
    converged: bool


def _pairwise_distances(y: np.ndarray) -> np.ndarray:
    diff = y[:, None, :] - y[None, :, :]
    return np.sqrt((diff * diff).sum(axis=2))


def stress(y: ColorEmbedding, w: BundleWeightMatrix, d: DissimilarityMatrix) -> float:
    """Weighted squared mismatch between dissimilarities and embedding distances.

    The sum runs over all ordered pairs; asymmetric weights enter both
    directions as-is.
    """
    if not (y.m == w.m == d.m):
        raise ValueError(f"dimension mismatch: y={y.m}, w={w.m}, d={d.m}")
    delta = _pairwise_distances(y.y)
    return float((w.weights * (d.d - delta) ** 2).sum())


def _guttman_update(
    y: np.ndarray, w_sym: np.ndarray, v_pinv: np.ndarray, d: np.ndarray
) -> np.ndarray:
    delta = _pairwise_distances(y)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(delta > 0, d / np.where(delta > 0, delta, 1.0), 0.0)
    b = -w_sym * ratio
    np.fill_diagonal(b, 0.0)
    np.fill_diagonal(b, -b.sum(axis=1))
    return v_pinv @ (b @ y)


def _prepare(w: BundleWeightMatrix):
    # SMACOF needs symmetric weights; w_ij + w_ji reproduces the ordered
    # double sum exactly.
    w_sym = w.weights + w.weights.T
    if not (w_sym > 0).any():
        raise OptimizationError("all weights are zero; nothing to optimize")
    v = np.diag(w_sym.sum(axis=1)) - w_sym
    return w_sym, np.linalg.pinv(v)

def smacof_step(
    y: ColorEmbedding, w: BundleWeightMatrix, d: DissimilarityMatrix
) -> ColorEmbedding:
    """One majorization update; never increases the stress."""
    if not (y.m == w.m == d.m):
        raise ValueError(f"dimension mismatch: y={y.m}, w={w.m}, d={d.m}")
    w_sym, v_pinv = _prepare(w)
    return ColorEmbedding(m=y.m, q=y.q, y=_guttman_update(y.y, w_sym, v_pinv, d.d))


def initial_embedding(
    m: int,
    cfg: OptimizerConfig,
    layout: GraphLayout | None = None,
) -> ColorEmbedding:
    """Starting point: projected edge midpoints, or seeded Gaussian noise."""
    if cfg.init == "seeded-random":
        rng = np.random.default_rng(cfg.seed)
        return ColorEmbedding(m=m, q=cfg.q, y=rng.standard_normal((m, cfg.q)))

    if layout is None:
        raise OptimizationError("endpoint-projection init requires the layout")
    mids = np.array(
        [
            [(e.v1.x + e.v2.x) / 2.0, (e.v1.y + e.v2.y) / 2.0]
            for e in layout.edges
        ]
    )
    if cfg.q == 1:
        y = mids[:, [0]]
    elif cfg.q == 2:
        y = mids.copy()
    else:
        y = np.column_stack([mids[:, 0], mids[:, 1], mids[:, 0] + mids[:, 1]])
    mean = y.mean(axis=0)
    std = y.std(axis=0)
    std[std == 0] = 1.0
    return ColorEmbedding(m=m, q=cfg.q, y=(y - mean) / std)


def optimize(
    w: BundleWeightMatrix,
    d: DissimilarityMatrix,
    cfg: OptimizerConfig,
    layout: GraphLayout | None = None,
) -> OptimizeResult:
    """Iterate majorization steps until the relative stress decrease stalls."""
    if w.m != d.m:
        raise ValueError(f"dimension mismatch: w={w.m}, d={d.m}")
    w_sym, v_pinv = _prepare(w)
    emb = initial_embedding(w.m, cfg, layout)
    y = emb.y
    s_prev = stress(emb, w, d)
    n_iters = 0
    converged = False
    for _ in range(cfg.max_iters):
        y = _guttman_update(y, w_sym, v_pinv, d.d)
        n_iters += 1
        emb = ColorEmbedding(m=w.m, q=cfg.q, y=y)
        s = stress(emb, w, d)
        if (s_prev - s) / max(s_prev, _TINY) < cfg.rel_tol:
            s_prev = s
            converged = True
            break
        s_prev = s
    return OptimizeResult(embedding=emb, stress=s_prev, n_iters=n_iters, converged=converged)


def normalize_colors(y: ColorEmbedding, w: BundleWeightMatrix) -> ColorTable:
    """Rescale each edge against its bundle neighborhood into [0, 1].

    The neighborhood of edge i is i itself plus every edge bundled with
    it in either direction; each output dimension is min-max mapped over
    the neighborhood. Edges with no bundle partners fall back to the
    global min-max; a dimension with no spread maps to 0.5.
    """
    if y.m != w.m:
        raise ValueError(f"dimension mismatch: y={y.m}, w={w.m}")
    sym_flag = w.bundled_flag | w.bundled_flag.T
    global_min = y.y.min(axis=0)
    global_max = y.y.max(axis=0)

    col = np.empty_like(y.y)
    for i in range(y.m):
        members = np.flatnonzero(sym_flag[i])
        if members.size == 0:
            lo, hi = global_min, global_max
        else:
            block = y.y[np.append(members, i)]
            lo, hi = block.min(axis=0), block.max(axis=0)
        span = hi - lo
        for dim in range(y.q):
            if span[dim] <= 0:
                col[i, dim] = 0.5
            else:
                col[i, dim] = (y.y[i, dim] - lo[dim]) / span[dim]
    return ColorTable(m=y.m, q=y.q, col=np.clip(col, 0.0, 1.0))


# Fixed gradient for 1-D colorings: blue -> red -> yellow.
_GRADIENT = np.array([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0], [1.0, 1.0, 0.0]])


def colors_to_display(col: ColorTable) -> np.ndarray:
    """Map the normalized table to RGB triples in [0, 1]^3."""
    if col.q == 3:
        return col.col.copy()
    if col.q == 2:
        rgb = np.zeros((col.m, 3))
        rgb[:, 0] = col.col[:, 0]
        rgb[:, 2] = col.col[:, 1]
        return rgb
    t = col.col[:, 0]
    rgb = np.empty((col.m, 3))
    for i, v in enumerate(t):
        if v <= 0.5:
            a = v / 0.5
            rgb[i] = (1 - a) * _GRADIENT[0] + a * _GRADIENT[1]
        else:
            a = (v - 0.5) / 0.5
            rgb[i] = (1 - a) * _GRADIENT[1] + a * _GRADIENT[2]
    return rgb
