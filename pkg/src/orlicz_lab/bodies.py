"""Convex bodies in R^n with the origin interior.

Two concrete kinds are stored: polytopes (as vertices plus derived facet
data) and centered balls.  Ellipsoids are never stored; affine images of
balls are handled through the equivariance identity at a higher level.

Facet data for a polytope K with origin interior:

* unit outward normals u_i,
* facet (n-1)-areas a_i > 0,
* support numbers h_i = h_K(u_i) > 0.

Construction validates the classical closure identity sum_i a_i u_i = 0 and
the cone-volume identity V = (1/n) sum_i h_i a_i, so a body that constructs
successfully is safe to integrate against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .errors import (
    DegenerateHull,
    InvalidSpec,
    OriginNotInterior,
    ShapeMismatch,
)
from .errors import InvariantViolation
from .quadrature import SphereQuadrature, ball_volume

__all__ = [
    "MatrixShape",
    "PolytopeBody",
    "BallBody",
    "Body",
    "polytope_from_vertices",
    "named_body",
    "random_polytope",
    "support_value",
    "hausdorff_distance",
    "polar_membership",
]

EPS_UNIT = 1e-12        # facet normals must be unit vectors to this tolerance
EPS_CLOSURE = 1e-9      # |sum a_i u_i| <= EPS_CLOSURE * sum a_i
EPS_CONE_VOLUME = 1e-10  # relative agreement of hull volume with (1/n) sum h a
EPS_SUPPORT = 1e-10     # vertices may not stick out of facet planes by more
EPS_INTERIOR = 1e-12    # minimum facet support for the origin to count as interior
EPS_COPLANAR = 1e-10    # tolerance for merging coplanar hull simplices
EPS_MEMBERSHIP = 1e-9   # default slack in polar membership tests


@dataclass(frozen=True)
class MatrixShape:
    """Shape (n, m) of the matrix argument space M_{n,m} ~ R^{nm}.

    Flattening is column-major: entry (i, j) of an n-by-m matrix sits at flat
    index j*n + i.  A flat vector x therefore stacks the m columns of X.
    """

    n: int
    m: int

    @property
    def dim(self) -> int:
        return self.n * self.m

    def flat_index(self, i: int, j: int) -> int:
        return j * self.n + i

    def columns(self, x: np.ndarray) -> np.ndarray:
        """Rows of the result are the m columns of X.  Accepts (..., n*m)."""
        x = np.asarray(x, dtype=float)
        if x.shape[-1] != self.dim:
            raise ShapeMismatch(f"expected last axis {self.dim}, got {x.shape[-1]}")
        return x.reshape(x.shape[:-1] + (self.m, self.n))

    def flatten(self, cols: np.ndarray) -> np.ndarray:
        cols = np.asarray(cols, dtype=float)
        if cols.shape[-2:] != (self.m, self.n):
            raise ShapeMismatch(f"expected trailing shape {(self.m, self.n)}")
        return cols.reshape(cols.shape[:-2] + (self.dim,))

    def matrix(self, x: np.ndarray) -> np.ndarray:
        """The n-by-m matrix X for a single flat vector x."""
        return self.columns(x).T

    def act_columns(self, A: np.ndarray, x: np.ndarray) -> np.ndarray:
        """Apply A in R^{n x n} to every column of X, batched over x."""
        cols = self.columns(x)
        return self.flatten(cols @ np.asarray(A, dtype=float).T)


@dataclass(frozen=True)
class PolytopeBody:
    """Full-dimensional convex polytope with the origin in its interior."""

    vertices: np.ndarray = field(repr=False)
    normals: np.ndarray = field(repr=False)
    areas: np.ndarray = field(repr=False)
    supports: np.ndarray = field(repr=False)
    volume: float

    @property
    def n(self) -> int:
        return self.vertices.shape[1]

    @property
    def n_vertices(self) -> int:
        return self.vertices.shape[0]

    @property
    def n_facets(self) -> int:
        return self.normals.shape[0]

    def support(self, y) -> float:
        y = np.asarray(y, dtype=float)
        if y.shape != (self.n,):
            raise ShapeMismatch(f"direction must have shape ({self.n},)")
        return float(np.max(self.vertices @ y))

    def support_batch(self, Y: np.ndarray) -> np.ndarray:
        Y = np.asarray(Y, dtype=float)
        if Y.shape[-1] != self.n:
            raise ShapeMismatch(f"directions must have last axis {self.n}")
        return np.max(Y @ self.vertices.T, axis=-1)

    def centroid(self) -> np.ndarray:
        """Volume centroid, via the cone decomposition over an interior point."""
        q = np.mean(self.vertices, axis=0)
        hull = ConvexHull(self.vertices)
        total = 0.0
        acc = np.zeros(self.n)
        fact = math.factorial(self.n)
        for simplex in hull.simplices:
            P = self.vertices[simplex]
            vol = abs(np.linalg.det(P - q)) / fact
            c = (q + P.sum(axis=0)) / (self.n + 1)
            total += vol
            acc += vol * c
        return acc / total

    def translated(self, dx) -> "PolytopeBody":
        """Translate by dx.  Facet geometry is preserved; supports shift."""
        dx = np.asarray(dx, dtype=float)
        if dx.shape != (self.n,):
            raise ShapeMismatch(f"translation must have shape ({self.n},)")
        supports = self.supports + self.normals @ dx
        if np.min(supports) <= EPS_INTERIOR:
            raise OriginNotInterior("translation moves the origin out of the body")
        return PolytopeBody(self.vertices + dx, self.normals, self.areas,
                            supports, self.volume)

    def scaled(self, c: float) -> "PolytopeBody":
        if c <= 0:
            raise InvalidSpec("scale factor must be positive")
        return PolytopeBody(self.vertices * c, self.normals,
                            self.areas * c ** (self.n - 1), self.supports * c,
                            self.volume * c ** self.n)


@dataclass(frozen=True)
class BallBody:
    """Centered Euclidean ball of given radius in R^n."""

    n: int
    radius: float = 1.0

    def __post_init__(self):
        if self.radius <= 0:
            raise InvalidSpec("ball radius must be positive")
        if self.n < 2:
            raise InvalidSpec("ball dimension must be >= 2")

    @property
    def volume(self) -> float:
        return ball_volume(self.n) * self.radius ** self.n

    def support(self, y) -> float:
        y = np.asarray(y, dtype=float)
        if y.shape != (self.n,):
            raise ShapeMismatch(f"direction must have shape ({self.n},)")
        return self.radius * float(np.linalg.norm(y))

    def support_batch(self, Y: np.ndarray) -> np.ndarray:
        Y = np.asarray(Y, dtype=float)
        if Y.shape[-1] != self.n:
            raise ShapeMismatch(f"directions must have last axis {self.n}")
        return self.radius * np.linalg.norm(Y, axis=-1)

    def scaled(self, c: float) -> "BallBody":
        if c <= 0:
            raise InvalidSpec("scale factor must be positive")
        return BallBody(self.n, self.radius * c)


Body = Union[PolytopeBody, BallBody]


def _cluster_rows(rows: np.ndarray, tol: float) -> list[np.ndarray]:
    """Group near-identical rows.  Returns index arrays, order-stable enough
    for facet merging at desk scale."""
    order = np.lexsort(rows.T[::-1])
    groups: list[list[int]] = []
    ref: list[np.ndarray] = []
    for idx in order:
        r = rows[idx]
        placed = False
        # Compare only against the most recent groups; lexsort keeps equal rows
        # adjacent, but rounding can interleave, so scan a short tail.
        for gi in range(len(groups) - 1, max(len(groups) - 8, -1), -1):
            if np.max(np.abs(r - ref[gi])) <= tol:
                groups[gi].append(idx)
                placed = True
                break
        if not placed:
            groups.append([idx])
            ref.append(r)
    return [np.asarray(g, dtype=int) for g in groups]


def _simplex_facet_area(P: np.ndarray) -> float:
    """(n-1)-volume of the simplex with rows of P as vertices (n points in R^n)."""
    E = P[1:] - P[0]
    gram = E @ E.T
    det = np.linalg.det(gram)
    if det < 0:
        det = 0.0
    return math.sqrt(det) / math.factorial(P.shape[0] - 1)


def polytope_from_vertices(points, n: int | None = None) -> PolytopeBody:
    """Build a validated PolytopeBody from a point cloud.

    Coplanar hull simplices are merged into single facets (tolerance
    EPS_COPLANAR on the facet equation).  Areas are exact for n in {2, 3}
    (segment lengths / polygon areas via triangulation) and come from the
    simplicial decomposition for n >= 4.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2:
        raise InvalidSpec("vertices must be a 2-d array")
    if n is not None and pts.shape[1] != n:
        raise ShapeMismatch(f"expected points in R^{n}, got R^{pts.shape[1]}")
    dim = pts.shape[1]
    if pts.shape[0] < dim + 1:
        raise DegenerateHull(f"need at least {dim + 1} points in R^{dim}")
    try:
        hull = ConvexHull(pts)
    except QhullError as exc:
        raise DegenerateHull(f"qhull failed: {exc}") from exc

    verts = pts[hull.vertices]
    equations = hull.equations  # rows (u, b): u.x + b <= 0 inside, |u| = 1

    groups = _cluster_rows(equations, EPS_COPLANAR)
    normals = np.empty((len(groups), dim))
    areas = np.empty(len(groups))
    for k, g in enumerate(groups):
        u = equations[g, :dim].mean(axis=0)
        u /= np.linalg.norm(u)
        normals[k] = u
        areas[k] = sum(_simplex_facet_area(pts[hull.simplices[i]]) for i in g)
    supports = np.max(verts @ normals.T, axis=0)
    volume = float(hull.volume)

    if np.min(supports) <= EPS_INTERIOR:
        raise OriginNotInterior(
            f"minimum facet support {np.min(supports):.3e}; origin must be interior")
    unit_err = np.max(np.abs(np.linalg.norm(normals, axis=1) - 1.0))
    if unit_err > EPS_UNIT:
        raise InvariantViolation(f"facet normals not unit: err {unit_err:.3e}")
    closure = np.linalg.norm(areas @ normals)
    if closure > EPS_CLOSURE * np.sum(areas):
        raise InvariantViolation(f"surface-measure closure defect {closure:.3e}")
    cone = float(np.dot(supports, areas)) / dim
    if abs(cone - volume) > EPS_CONE_VOLUME * volume:
        raise InvariantViolation(
            f"cone-volume identity failed: {cone!r} vs hull volume {volume!r}")
    slack = verts @ normals.T - supports[None, :]
    if np.max(slack) > EPS_SUPPORT:
        raise InvariantViolation("a vertex lies outside a facet plane")

    for arr in (verts, normals, areas, supports):
        arr.setflags(write=False)
    return PolytopeBody(verts, normals, areas, supports, volume)


def named_body(name: str, n: int, scale: float = 1.0) -> Body:
    """Catalog bodies: square, cube, simplex, cross (plus ball for symmetry).

    Bodies whose natural placement has the origin on the boundary (simplex)
    are translated so the centroid sits at the origin.
    """
    if scale <= 0:
        raise InvalidSpec("scale must be positive")
    if name == "square":
        if n != 2:
            raise InvalidSpec("square requires n = 2")
        return named_body("cube", 2, scale)
    if name == "cube":
        corners = np.array(np.meshgrid(*([[-scale, scale]] * n))).reshape(n, -1).T
        return polytope_from_vertices(corners)
    if name == "simplex":
        pts = np.vstack([np.zeros(n), scale * np.eye(n)])
        pts = pts - pts.mean(axis=0)
        return polytope_from_vertices(pts)
    if name == "cross":
        pts = np.vstack([scale * np.eye(n), -scale * np.eye(n)])
        return polytope_from_vertices(pts)
    if name == "ball":
        return BallBody(n, scale)
    raise InvalidSpec(f"unknown named body {name!r}")


def random_polytope(n: int, k: int | None = None, seed: int = 0,
                    radius_range: tuple[float, float] = (0.7, 1.0)) -> PolytopeBody:
    """Hull of k seeded points on a spherical shell, re-centered at the centroid.

    Deterministic in (n, k, seed).  Retries with fresh substreams if the draw
    is degenerate (vanishingly rare for k >= n + 2).
    """
    if k is None:
        k = {2: 8, 3: 10}.get(n, 2 * n + 4)
    if k < n + 2:
        raise InvalidSpec(f"need k >= n + 2 sample points, got {k}")
    lo, hi = radius_range
    for attempt in range(8):
        rng = np.random.default_rng(np.random.SeedSequence((seed, n, k, attempt)))
        dirs = rng.standard_normal((k, n))
        dirs /= np.linalg.norm(dirs, axis=1)[:, None]
        radii = rng.uniform(lo, hi, size=k)
        pts = dirs * radii[:, None]
        try:
            body = polytope_from_vertices(pts - _cloud_centroid(pts))
        except (DegenerateHull, OriginNotInterior):
            continue
        return body
    raise DegenerateHull(f"could not draw a usable polytope for seed {seed}")


def _cloud_centroid(pts: np.ndarray) -> np.ndarray:
    """Volume centroid of the hull of a point cloud."""
    hull = ConvexHull(pts)
    q = pts[hull.vertices].mean(axis=0)
    n = pts.shape[1]
    fact = math.factorial(n)
    total = 0.0
    acc = np.zeros(n)
    for simplex in hull.simplices:
        P = pts[simplex]
        vol = abs(np.linalg.det(P - q)) / fact
        acc += vol * (q + P.sum(axis=0)) / (n + 1)
        total += vol
    return acc / total


def support_value(body: Body, y) -> float:
    """h_K(y) for a stored body (not the projection body)."""
    return body.support(y)


def hausdorff_distance(body_a: Body, body_b: Body, quad: SphereQuadrature) -> float:
    """Hausdorff distance via max support difference over quadrature nodes.

    Exact for the polytopes/balls stored here up to the angular resolution of
    the node set; a pseudometric for any fixed node set.
    """
    if body_a.n != body_b.n:
        raise ShapeMismatch("bodies live in different dimensions")
    if quad.dim != body_a.n:
        raise ShapeMismatch("quadrature dimension does not match the bodies")
    ha = body_a.support_batch(quad.nodes)
    hb = body_b.support_batch(quad.nodes)
    return float(np.max(np.abs(ha - hb)))


def polar_membership(support_fn, x, tol: float = EPS_MEMBERSHIP) -> bool:
    """Is x in the polar of the body whose support function is support_fn?

    x belongs to L* iff h_L(x) <= 1; we allow slack tol.  The origin is
    always a member.
    """
    x = np.asarray(x, dtype=float)
    if not np.any(x):
        return True
    return float(support_fn(x)) <= 1.0 + tol
