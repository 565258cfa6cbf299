"""Endpoint dissimilarities between edges.

The dissimilarity of two edges is the smaller of the two ways of pairing
their endpoints, each pairing scored by the sum of Euclidean endpoint
distances. Edges connecting nearby node pairs come out similar no matter
which way around their endpoints are stored.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bundling import MAX_DENSE_EDGES, ParameterError
from .model import EdgeCurve, GraphLayout


@dataclass(frozen=True)
class DissimilarityMatrix:
    m: int
    d: np.ndarray

    def __post_init__(self):
        if self.d.shape != (self.m, self.m):
            raise ValueError("matrix shape mismatch")
        self.d.setflags(write=False)


def endpoint_dissimilarity(edge_i: EdgeCurve, edge_j: EdgeCurve) -> float:
    a1 = np.array([edge_i.v1.x, edge_i.v1.y])
    a2 = np.array([edge_i.v2.x, edge_i.v2.y])
    b1 = np.array([edge_j.v1.x, edge_j.v1.y])
    b2 = np.array([edge_j.v2.x, edge_j.v2.y])
    straight = np.linalg.norm(a1 - b1) + np.linalg.norm(a2 - b2)
    crossed = np.linalg.norm(a1 - b2) + np.linalg.norm(a2 - b1)
    return float(min(straight, crossed))


def build_dissimilarity_matrix(layout: GraphLayout) -> DissimilarityMatrix:
    if layout.m > MAX_DENSE_EDGES:
        raise ParameterError(
            f"dense dissimilarity matrix refused for M={layout.m} > {MAX_DENSE_EDGES}"
        )
    # (M, 2, 2): endpoints of every edge
    ends = np.array([e.endpoint_array() for e in layout.edges])
    v1 = ends[:, 0, :]
    v2 = ends[:, 1, :]

    def norm(a, b):
        return np.linalg.norm(a[:, None, :] - b[None, :, :], axis=2)

    straight = norm(v1, v1) + norm(v2, v2)
    crossed = norm(v1, v2) + norm(v2, v1)
    d = np.minimum(straight, crossed)
    np.fill_diagonal(d, 0.0)
    return DissimilarityMatrix(m=layout.m, d=d)
