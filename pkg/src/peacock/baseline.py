"""Baseline coloring: endpoint positions encoded straight into channels.

Each edge gets (min of endpoint x, 0, min of endpoint y) as an
unnormalized color, then the whole matrix is min-max normalized per
channel into [0, 1]. No optimization involved; this is the comparison
point for the optimized coloring.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import GraphLayout


@dataclass(frozen=True)
class BaselineColorTable:
    m: int
    col: np.ndarray

    def __post_init__(self):
        if self.col.shape != (self.m, 3):
            raise ValueError("baseline table shape mismatch")
        self.col.setflags(write=False)


def baseline_colors(layout: GraphLayout) -> BaselineColorTable:
    raw = np.zeros((layout.m, 3))
    for i, e in enumerate(layout.edges):
        raw[i, 0] = min(e.v1.x, e.v2.x)
        raw[i, 2] = min(e.v1.y, e.v2.y)

    lo = raw.min(axis=0)
    hi = raw.max(axis=0)
    col = np.empty_like(raw)
    for c in range(3):
        span = hi[c] - lo[c]
        if span <= 0:
            col[:, c] = 0.5
        else:
            col[:, c] = (raw[:, c] - lo[c]) / span
    return BaselineColorTable(m=layout.m, col=col)
