"""
Surface integrals of the Gaussian curvature over geodesic triangles and the
Gauss-Bonnet consistency check.

For a geodesic triangle the geodesic curvature terms vanish and the
Gauss-Bonnet theorem reduces to

    sum of interior angles - pi = integral of K dS.

Both sides are computed independently here: the angles from the side
tangents, the integral by quadrature over the chart space polygon bounded
by the sides.
"""

import logging
import warnings

import numpy as np

from .errors import NonSimplePolygon, InvalidParameter
from .geodesic import GeodesicSegment, angle_between, connect
from .intersection import polyline_crossings, PARALLEL_TOL

logger = logging.getLogger(__name__)

# Seven point degree 5 rule on the reference triangle, barycentric coordinates
_A1 = 0.470142064105115
_A2 = 0.101286507323456
_W0 = 0.225
_W1 = 0.132394152788506
_W2 = 0.125939180544827

QUAD_BARY = np.array([[1/3, 1/3, 1/3],
                      [_A1, _A1, 1 - 2*_A1],
                      [_A1, 1 - 2*_A1, _A1],
                      [1 - 2*_A1, _A1, _A1],
                      [_A2, _A2, 1 - 2*_A2],
                      [_A2, 1 - 2*_A2, _A2],
                      [1 - 2*_A2, _A2, _A2]])

QUAD_WEIGHTS = np.array([_W0, _W1, _W1, _W1, _W2, _W2, _W2])

# Vertex closure tolerance of the triangle sides in chart units
CLOSURE_TOL = 1e-9


class GeodesicTriangle:
    """
    Triangle bounded by three geodesic segments XY, YZ, ZX.

    Parameters
    ----------
    surface : geodivpy.surfaces.ParametricSurface
        Surface of the triangle.
    sides : tuple of 3 geodivpy.geodesic.GeodesicSegment
        Sides XY, YZ and ZX. Each side must start where the previous one
        ends.

    Attributes
    ----------
    vertices : tuple of 3 tuples
        Chart points X, Y, Z.
    angles : (3,) numpy.ndarray
        Interior angles at X, Y, Z.

    """

    def __init__(self, surface, sides):

        if len(sides) != 3:
            raise InvalidParameter('A geodesic triangle needs three sides.')

        for ind in range(3):
            end = np.asarray(sides[ind].path.end)
            start = np.asarray(sides[(ind + 1) % 3].path.start)

            if np.linalg.norm(end - start) > CLOSURE_TOL:
                raise InvalidParameter('Triangle sides do not close: side {} '
                                       'ends at {} and side {} starts at {}.'\
                                       .format(ind, tuple(end),
                                               (ind + 1) % 3, tuple(start)))

        self.surface = surface
        self.sides = tuple(sides)
        self.vertices = tuple(side.path.start for side in sides)

        angles = np.zeros(3)

        for ind in range(3):
            incoming = self.sides[ind - 1].path
            outgoing = self.sides[ind].path

            angles[ind] = angle_between(surface, self.vertices[ind],
                                        outgoing.start_tangent.components,
                                        -incoming.end_tangent.components)

        self.angles = angles

    @classmethod
    def from_paths(cls, surface, paths):
        """
        Triangle from three GeodesicPath objects.
        """
        return cls(surface, [GeodesicSegment.from_path(p) for p in paths])

    @classmethod
    def from_vertices(cls, surface, X, Y, Z, step_h, solver=None):
        """
        Triangle with sides obtained by connecting its vertices.

        Parameters
        ----------
        surface : geodivpy.surfaces.ParametricSurface
            Surface of the triangle.
        X, Y, Z : tuple of float
            Chart points of the vertices.
        step_h : float
            Integration step for the sides.
        solver : geodivpy.solvers.RootSolver or None, optional
            Shooting solver passed to `connect`. The default is None.

        Returns
        -------
        GeodesicTriangle
            The triangle XYZ.

        """
        XY = connect(surface, X, Y, step_h, solver=solver)
        YZ = connect(surface, Y, Z, step_h, solver=solver)
        ZX = connect(surface, Z, X, step_h, solver=solver)

        return cls(surface, (XY, YZ, ZX))

    @property
    def side_lengths(self):
        """Arc lengths of XY, YZ, ZX."""
        return np.array([side.length for side in self.sides])

    def boundary_polygon(self, spacing=5e-4, n_min=64, n_max=4000,
                         return_sides=False):
        """
        Chart space polygon through dense samples of the sides.

        Parameters
        ----------
        spacing : float, optional
            Target arc length between samples. The default is 5e-4.
        n_min : int, optional
            Minimum number of samples per side. The default is 64.
        n_max : int, optional
            Maximum number of samples per side. The default is 4000.
        return_sides : bool, optional
            Also return the side (0 for XY, 1 for YZ, 2 for ZX) of every
            polygon edge. The default is False.

        Returns
        -------
        (n, 2) numpy.ndarray
            Polygon vertices without repeating the first vertex.
        sides : (n,) numpy.ndarray of int
            Side of the edge from vertex `i` to vertex `i + 1`. Only returned
            if `return_sides` is True.

        """
        pts = []
        labels = []

        for ind, side in enumerate(self.sides):
            path = side.path
            n = int(np.clip(np.ceil(path.total_length/spacing) + 1,
                            n_min, n_max))
            s = np.linspace(0.0, path.total_length, n)

            pts.append(path.points_at(s[:-1]))
            labels.append(np.full(n - 1, ind))

        if return_sides:
            return np.vstack(pts), np.hstack(labels)

        return np.vstack(pts)



def _signed_area(poly):
    x = poly[:, 0]
    y = poly[:, 1]
    return 0.5*np.sum(x*np.roll(y, -1) - np.roll(x, -1)*y)


def _collinear_overlaps(seg_pts, closed):
    """
    Pairs `(i, j)` of collinear segments with overlap of positive length,
    segment `i` of the polyline `seg_pts` against segment `j` of `closed`.
    """

    p = seg_pts[:-1][:, None, :]
    r = np.diff(seg_pts, axis=0)[:, None, :]
    q = closed[:-1][None, :, :]
    w = np.diff(closed, axis=0)[None, :, :]

    len_r = np.linalg.norm(r, axis=-1)
    len_w = np.linalg.norm(w, axis=-1)

    qp = q - p
    qp_end = qp + w

    def cross(x, y):
        return x[..., 0]*y[..., 1] - x[..., 1]*y[..., 0]

    scale = PARALLEL_TOL*len_r*np.maximum(len_r, len_w)
    collinear = (np.abs(cross(r, w)) <= PARALLEL_TOL*len_r*len_w) \
        & (np.abs(cross(r, qp)) <= scale) & (len_r > 0) & (len_w > 0)

    if not np.any(collinear):
        return []

    with np.errstate(divide='ignore', invalid='ignore'):
        t0 = np.sum(qp*r, axis=-1) / len_r**2
        t1 = np.sum(qp_end*r, axis=-1) / len_r**2

    lo = np.maximum(np.minimum(t0, t1), 0.0)
    hi = np.minimum(np.maximum(t0, t1), 1.0)

    ii, jj = np.nonzero(collinear & (hi - lo > 1e-9))

    return list(zip(ii.tolist(), jj.tolist()))


def check_simple(poly, sides=None, chunk=256):
    """
    Raise NonSimplePolygon if a closed chart space polygon intersects
    itself or encloses no area.

    Parameters
    ----------
    poly : (n, 2) numpy.ndarray
        Vertices of the polygon without repeating the first vertex.
    sides : (n,) numpy.ndarray of int or None, optional
        Label of the geodesic side of every edge, where edge `i` runs from
        vertex `i` to vertex `i + 1`. Edges with equal labels are not
        tested against each other. None gives every edge its own label.
        The default is None.
    chunk : int, optional
        Number of edges tested at a time. The default is 256.

    """

    n = poly.shape[0]
    closed = np.vstack((poly, poly[:1]))

    if sides is None:
        sides = np.arange(n)
    sides = np.asarray(sides)

    assert sides.shape == (n,), 'One side label is needed for every edge.'

    perimeter = np.sum(np.linalg.norm(np.diff(closed, axis=0), axis=1))
    area = _signed_area(poly)

    if abs(area) <= 1e-12*perimeter**2:
        raise NonSimplePolygon('Triangle encloses no area in the chart '
                               '(area {:.3e}).'.format(area))

    for start in range(0, n, chunk):
        stop = min(start + chunk + 1, n + 1)

        pairs = [(i, j) for i, j, _, _ in
                 polyline_crossings(closed[start:stop], closed)]
        pairs += _collinear_overlaps(closed[start:stop], closed)

        for i, j in pairs:
            i += start
            # neighboring edges share a vertex
            if abs(i - j) <= 1 or abs(i - j) == n - 1:
                continue
            # a short geodesic side does not cross itself
            if sides[i] == sides[j]:
                continue
            raise NonSimplePolygon('Triangle boundary intersects itself '
                                   'between edges {} and {}.'.format(i, j))



def _fan_triangles(poly):
    """
    Fan triangulation from the area centroid, None if the polygon is not
    star shaped with respect to the centroid.
    """

    area = _signed_area(poly)
    nxt = np.roll(poly, -1, axis=0)

    cross = poly[:, 0]*nxt[:, 1] - nxt[:, 0]*poly[:, 1]
    centroid = np.array([np.sum((poly[:, 0] + nxt[:, 0])*cross),
                         np.sum((poly[:, 1] + nxt[:, 1])*cross)]) / (6*area)

    tri = np.stack((np.broadcast_to(centroid, poly.shape), poly, nxt), axis=1)

    orient = np.sign(area)*_tri_signed_area(tri)

    if np.any(orient <= 0):
        return None

    return tri


def _tri_signed_area(tri):
    d1 = tri[:, 1] - tri[:, 0]
    d2 = tri[:, 2] - tri[:, 0]
    return 0.5*(d1[:, 0]*d2[:, 1] - d1[:, 1]*d2[:, 0])


def _ear_clip(poly):
    """
    Ear clipping triangulation of a simple polygon.
    """

    if _signed_area(poly) < 0:
        poly = poly[::-1]

    idx = list(range(poly.shape[0]))
    tris = []

    def cross(o, a, b):
        return (a[0] - o[0])*(b[1] - o[1]) - (a[1] - o[1])*(b[0] - o[0])

    guard = 0

    while len(idx) > 3 and guard < 10*poly.shape[0]**2:
        guard += 1
        n = len(idx)

        for k in range(n):
            i0, i1, i2 = idx[k - 1], idx[k], idx[(k + 1) % n]
            a, b, c = poly[i0], poly[i1], poly[i2]

            if cross(a, b, c) <= 0:
                continue

            inside = False
            for m in idx:
                if m in (i0, i1, i2):
                    continue
                p = poly[m]
                if cross(a, b, p) >= 0 and cross(b, c, p) >= 0 \
                        and cross(c, a, p) >= 0:
                    inside = True
                    break

            if not inside:
                tris.append((a, b, c))
                idx.pop(k)
                break
        else:
            raise NonSimplePolygon('Ear clipping found no ear.')

    tris.append(tuple(poly[i] for i in idx))

    return np.array(tris)


def triangulate(poly):
    """
    Triangulate a simple chart space polygon.

    Parameters
    ----------
    poly : (n, 2) numpy.ndarray
        Vertices of the polygon.

    Returns
    -------
    (m, 3, 2) numpy.ndarray
        Triangles covering the polygon.

    Notes
    -----
    A fan from the area centroid is used when every fan triangle has the
    orientation of the polygon. Otherwise ear clipping is used and a
    warning is issued.

    """

    tris = _fan_triangles(poly)

    if tris is None:
        warnings.warn('Polygon is not star shaped about its centroid, using '
                      'ear clipping.')
        tris = _ear_clip(poly)

    return tris


def _quad(tris, integrand):
    """
    Seven point rule on every triangle of a (m, 3, 2) array.
    """
    pts = np.einsum('qk,mkd->mqd', QUAD_BARY, tris)

    vals = integrand(pts[..., 0], pts[..., 1])

    return np.abs(_tri_signed_area(tris)) * (vals @ QUAD_WEIGHTS)


def _subdivide(tris):
    """
    Four child triangles by the edge midpoints.
    """
    a, b, c = tris[:, 0], tris[:, 1], tris[:, 2]
    ab = 0.5*(a + b)
    bc = 0.5*(b + c)
    ca = 0.5*(c + a)

    children = np.stack((np.stack((a, ab, ca), axis=1),
                         np.stack((ab, b, bc), axis=1),
                         np.stack((ca, bc, c), axis=1),
                         np.stack((ab, bc, ca), axis=1)), axis=1)

    return children.reshape(-1, 3, 2)


def integrate_polygon(tris, integrand, tol=1e-10, max_depth=8):
    """
    Adaptive integral over a triangulated region.

    Parameters
    ----------
    tris : (m, 3, 2) numpy.ndarray
        Triangles.
    integrand : function
        Vectorized function `integrand(u, v)`.
    tol : float, optional
        Absolute tolerance on the change between successive refinements,
        distributed over the triangles by area. The default is 1e-10.
    max_depth : int, optional
        Maximum number of subdivisions of a triangle. The default is 8.

    Returns
    -------
    float
        The integral.

    """

    areas = np.abs(_tri_signed_area(tris))
    total_area = np.sum(areas)

    if total_area == 0.0:
        return 0.0

    coarse = _quad(tris, integrand)
    result = 0.0

    for depth in range(max_depth):

        children = _subdivide(tris)
        fine = _quad(children, integrand).reshape(-1, 4).sum(axis=1)

        local_tol = tol*np.abs(_tri_signed_area(tris))/total_area
        done = np.abs(fine - coarse) <= local_tol

        result += np.sum(fine[done])

        if np.all(done):
            return float(result)

        keep = np.repeat(~done, 4)

        tris = children[keep]
        coarse = _quad(tris, integrand)

    logger.debug('Quadrature reached max depth %d with %d active triangles.',
                 max_depth, tris.shape[0])

    return float(result + np.sum(coarse))


def _integral(surface, triangle, weight, tol):

    poly, sides = triangle.boundary_polygon(return_sides=True)
    check_simple(poly, sides)

    tris = triangulate(poly)

    def integrand(u, v):
        K, dA = surface.gaussian_curvature_grid(u, v)
        return weight(K)*dA

    return integrate_polygon(tris, integrand, tol=tol)


def curvature_integral(surface, triangle, tol=1e-10):
    """
    Integral of the Gaussian curvature over a geodesic triangle.

    Parameters
    ----------
    surface : geodivpy.surfaces.ParametricSurface
        Surface of the triangle.
    triangle : GeodesicTriangle
        Triangle to integrate over.
    tol : float, optional
        Quadrature refinement tolerance. The default is 1e-10.

    Returns
    -------
    float
        `integral of K sqrt(EG - F**2) du dv` over the chart region bounded
        by the sides.

    Raises
    ------
    NonSimplePolygon
        If the chart space boundary intersects itself or is degenerate.

    """
    return _integral(surface, triangle, lambda K: K, tol)


def absolute_curvature_integral(surface, triangle, tol=1e-10):
    """
    Integral of `abs(K)` over a geodesic triangle.

    See Also
    --------
    curvature_integral :
        Same quadrature for the signed curvature.
    """
    return _integral(surface, triangle, np.abs, tol)


def angle_excess(surface, triangle):
    """
    Sum of the interior angles of a geodesic triangle minus pi.
    """
    return float(np.sum(triangle.angles) - np.pi)


def gauss_bonnet_residual(surface, triangle, tol=1e-10):
    """
    Absolute difference between the curvature integral and the angle excess.

    Parameters
    ----------
    surface : geodivpy.surfaces.ParametricSurface
        Surface of the triangle.
    triangle : GeodesicTriangle
        Triangle to check.
    tol : float, optional
        Quadrature refinement tolerance. The default is 1e-10.

    Returns
    -------
    float
        Residual of the Gauss-Bonnet theorem for the triangle. Small values
        certify that geodesics, angles and quadrature are consistent.

    """
    return abs(curvature_integral(surface, triangle, tol=tol)
               - angle_excess(surface, triangle))
