"""Discrete surface-area measures.

For a polytope the measure is the exact atom list (u_i, a_i) with supports
h_i.  For a ball it is a quadrature on the sphere of directions with weights
w_k r^{n-1} and constant support r.  Either way the data consumed downstream
is three aligned arrays (normals, areas, supports).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .bodies import BallBody, Body, PolytopeBody
from .errors import InvariantViolation, MissingQuadrature
from .quadrature import SphereQuadrature, make_quadrature

__all__ = ["SurfaceMeasure", "surface_measure", "DEFAULT_BALL_NODES"]

EPS_CONE_POLY = 1e-10   # relative cone-volume agreement, polytope atoms
EPS_CONE_BALL = 1e-6    # relative cone-volume agreement, ball quadrature
HEMISPHERE_PROBES = 1000

# Ball node-count defaults per body dimension (n = 2 uses an exact-weight
# angular grid; higher n uses deterministic low-discrepancy points).
DEFAULT_BALL_NODES = {2: 4096, 3: 20000}


@dataclass(frozen=True)
class SurfaceMeasure:
    """Atoms (u_i, a_i, h_i) of a surface-area measure."""

    n: int
    normals: np.ndarray = field(repr=False)
    areas: np.ndarray = field(repr=False)
    supports: np.ndarray = field(repr=False)
    kind: str = "polytope"
    provenance: dict | None = None

    @property
    def n_atoms(self) -> int:
        return self.normals.shape[0]

    def total_area(self) -> float:
        return float(np.sum(self.areas))

    def cone_volume(self) -> float:
        return float(np.dot(self.supports, self.areas)) / self.n


def _hemisphere_check(normals: np.ndarray, areas: np.ndarray) -> None:
    """Warn if the sampled measure concentrates on a closed hemisphere."""
    n = normals.shape[1]
    rng = np.random.default_rng(np.random.SeedSequence((0xB0D1E5, n)))
    probes = rng.standard_normal((HEMISPHERE_PROBES, n))
    probes /= np.linalg.norm(probes, axis=1)[:, None]
    open_mass = (normals @ probes.T > 0).T @ areas
    if np.min(open_mass) <= 0.0:
        warnings.warn(
            "surface measure appears concentrated on a closed hemisphere; "
            "support solves may fail for some directions",
            RuntimeWarning, stacklevel=3)


def surface_measure(body: Body, ball_nodes: int | SphereQuadrature | None = None,
                    check_hemisphere: bool = True) -> SurfaceMeasure:
    """Surface-area measure of a stored body.

    Polytopes ignore ball_nodes.  Balls require a node count or an explicit
    quadrature (MissingQuadrature otherwise); weights a_k = w_k r^{n-1}.
    """
    if isinstance(body, PolytopeBody):
        sm = SurfaceMeasure(body.n, body.normals, body.areas, body.supports,
                            kind="polytope")
        cone = sm.cone_volume()
        if abs(cone - body.volume) > EPS_CONE_POLY * body.volume:
            raise InvariantViolation(
                f"cone volume {cone!r} disagrees with body volume {body.volume!r}")
        return sm

    if not isinstance(body, BallBody):
        raise TypeError(f"unsupported body type {type(body).__name__}")
    if ball_nodes is None:
        raise MissingQuadrature(
            "ball bodies need a node count or SphereQuadrature for their measure")
    if isinstance(ball_nodes, SphereQuadrature):
        quad = ball_nodes
        if quad.dim != body.n:
            raise MissingQuadrature(
                f"quadrature dim {quad.dim} does not match body dim {body.n}")
    else:
        scheme = "grid" if body.n == 2 else "lds"
        quad = make_quadrature(body.n, scheme, int(ball_nodes))
    r = body.radius
    areas = quad.weights * r ** (body.n - 1)
    supports = np.full(quad.n_nodes, r)
    sm = SurfaceMeasure(body.n, quad.nodes, areas, supports, kind="ball",
                        provenance=quad.provenance())
    cone = sm.cone_volume()
    if abs(cone - body.volume) > EPS_CONE_BALL * body.volume:
        raise InvariantViolation(
            f"ball quadrature cone volume {cone!r} vs {body.volume!r}")
    if check_hemisphere:
        _hemisphere_check(sm.normals, sm.areas)
    return sm
