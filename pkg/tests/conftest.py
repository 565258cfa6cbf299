"""Shared test helpers: random layouts and independent oracles.

The oracles here are deliberately naive re-implementations of the
detection rule and the stress cost, kept independent of the production
code paths they check.
"""

import math

import numpy as np
import pytest

from peacock.bundling import required_run_length
from peacock.model import EdgeCurve, GraphLayout, Point2


def random_layout(rng, m=None, max_controls=12, span=100.0):
    """A layout of m random polyline edges inside a span x span box."""
    if m is None:
        m = int(rng.integers(2, 41))
    edges = []
    for i in range(m):
        c = int(rng.integers(1, max_controls + 1))
        pts = rng.uniform(0, span, size=(c + 2, 2))
        edges.append(
            EdgeCurve(
                id=i,
                v1=Point2(*pts[0]),
                v2=Point2(*pts[1]),
                controls=tuple(Point2(*p) for p in pts[2:]),
            )
        )
    return GraphLayout(edges=tuple(edges))


def oracle_detect(edge_i, edge_j, t, k_ij):
    """Direct evaluation of the run-of-close-control-points rule."""
    pi = edge_i.control_array()
    pj = edge_j.control_array()
    near = []
    for r in range(len(pi)):
        dmin = min(math.dist(pi[r], pj[s]) for s in range(len(pj)))
        near.append(dmin <= t)
    c_i = len(pi)
    for r0 in range(c_i - k_ij + 1):
        if all(near[r0 + r] for r in range(k_ij)):
            return True
    return False


def oracle_flags(layout, t, k_min):
    m = layout.m
    flags = np.zeros((m, m), dtype=bool)
    for i, ei in enumerate(layout.edges):
        for j, ej in enumerate(layout.edges):
            if i == j:
                continue
            k_ij = required_run_length(ei.n_controls, ej.n_controls, k_min)
            flags[i, j] = oracle_detect(ei, ej, t, k_ij)
    return flags


def oracle_stress(y, weights, d):
    """Naive double loop over ordered pairs."""
    m = len(y)
    total = 0.0
    for i in range(m):
        for j in range(m):
            if i == j:
                continue
            dist = math.dist(y[i], y[j])
            total += weights[i][j] * (d[i][j] - dist) ** 2
    return total


def rigid_transform(layout, angle, dx, dy):
    """The same rotation + translation applied to every point."""
    ca, sa = math.cos(angle), math.sin(angle)

    def move(p):
        return Point2(ca * p.x - sa * p.y + dx, sa * p.x + ca * p.y + dy)

    edges = tuple(
        EdgeCurve(
            id=e.id,
            v1=move(e.v1),
            v2=move(e.v2),
            controls=tuple(move(p) for p in e.controls),
        )
        for e in layout.edges
    )
    nodes = tuple((nid, move(p)) for nid, p in layout.nodes)
    return GraphLayout(edges=edges, nodes=nodes)


@pytest.fixture(scope="session")
def ordered_fixture():
    from peacock.fixtures import make_ordered_bundles

    return make_ordered_bundles(6, 6, reverse_last=True, seed=0)
