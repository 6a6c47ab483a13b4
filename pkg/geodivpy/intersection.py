"""
Transversal intersections of a shot geodesic with a target geodesic segment.

Crossings are detected on the chart space polylines of the stored states and
refined by bisection on the cubic Hermite dense output of both curves.
"""

import logging
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (NoIntersection, TangentialIntersection, EndpointHit,
                     InvalidParameter)
from .geodesic import GeodesicIntegrator, angle_between
from .solvers import RootSolver

logger = logging.getLogger(__name__)

# Smallest crossing angle accepted as transversal
ANGLE_FLOOR = 1e-6

# Relative size of the cross product below which two segments are parallel
PARALLEL_TOL = 1e-12


@dataclass(frozen=True)
class IntersectionResult:
    """
    Crossing of a shot geodesic with a target segment.

    Attributes
    ----------
    s_shot : float
        Arc length along the shot.
    t_target : float
        Arc length along the target segment, in `(0, target.length)`.
    point : tuple of float
        Chart point of the crossing.
    crossing_angle : float
        Angle between the two tangents at the crossing.
    """
    s_shot: float
    t_target: float
    point: tuple
    crossing_angle: float


def _cross2(a, b):
    return a[..., 0]*b[..., 1] - a[..., 1]*b[..., 0]


def polyline_crossings(shot_pts, target_pts, first=0):
    """
    Crossings of two chart space polylines.

    Parameters
    ----------
    shot_pts : (M, 2) numpy.ndarray
        Vertices of the first polyline.
    target_pts : (N, 2) numpy.ndarray
        Vertices of the second polyline.
    first : int, optional
        Index of the first segment of `shot_pts` to test. The default is 0.

    Returns
    -------
    list of tuple
        `(i, j, a, b)` sorted by the position along the shot, where segment
        `i` of the shot crosses segment `j` of the target at the local
        parameters `a` and `b` in `[0, 1]`.

    """

    p = shot_pts[first:-1][:, None, :]
    r = np.diff(shot_pts[first:], axis=0)[:, None, :]
    q = target_pts[:-1][None, :, :]
    w = np.diff(target_pts, axis=0)[None, :, :]

    denom = _cross2(r, w)
    qp = q - p

    # nearly parallel segments leave a and b to rounding noise
    parallel = np.abs(denom) <= PARALLEL_TOL*np.linalg.norm(r, axis=-1) \
        * np.linalg.norm(w, axis=-1)

    with np.errstate(divide='ignore', invalid='ignore'):
        a = _cross2(qp, w) / denom
        b = _cross2(qp, r) / denom

    # Vertices on the other polyline count as crossings
    tol = 1e-12
    mask = ~parallel & (a >= -tol) & (a <= 1 + tol) \
        & (b >= -tol) & (b <= 1 + tol)


    ii, jj = np.nonzero(mask)

    hits = [(int(i) + first, int(j), float(min(max(a[i, j], 0.0), 1.0)),
             float(min(max(b[i, j], 0.0), 1.0)))
            for i, j in zip(ii, jj)]

    hits.sort(key=lambda h: (h[0], h[2]))

    return hits


class _SideFunction:
    """
    Signed side of shot points relative to the dense target curve.

    The value at shot arc length `sigma` is
    `cross(T'(tau), S(sigma) - T(tau))` where `tau` is the foot point of
    `S(sigma)` on the target near target cell `j`.
    """

    def __init__(self, shot, target_path, j, solver):
        self.shot = shot
        self.target = target_path
        self.solver = solver

        t = target_path.s
        self.lo = t[max(j - 1, 0)]
        self.hi = t[min(j + 2, t.shape[0] - 1)]

    def foot(self, X):
        target = self.target

        def dist_deriv(tau):
            return float((X - np.asarray(target.point_at(tau)))
                         @ target.velocity_at(tau))

        return self.solver.bracket_root(dist_deriv, self.lo, self.hi)

    def __call__(self, sigma):
        X = np.asarray(self.shot.point_at(sigma))
        tau = self.foot(X)

        T = np.asarray(self.target.point_at(tau))
        dT = self.target.velocity_at(tau)

        return float(_cross2(dT, X - T))


def _refine(surface, shot, target, hit, solver):
    """
    Refine a polyline crossing on the dense curves.
    """

    i, j, a, b = hit

    s = shot.s
    t = target.path.s

    side = _SideFunction(shot, target.path, j, solver)

    # Resolution of the crossing relative to the target size
    xtol = 1e-12*min(1.0, target.length)

    brackets = [(s[i], s[i + 1]),
                (s[max(i - 1, 0)], s[min(i + 2, s.shape[0] - 1)])]

    sigma = None

    for lo, hi in brackets:
        f_lo = side(lo)
        f_hi = side(hi)

        if f_lo == 0.0:
            sigma = lo
        elif f_hi == 0.0:
            sigma = hi
        elif np.sign(f_lo) != np.sign(f_hi):
            sigma = solver.bisect(side, lo, hi, xtol=xtol)

        if sigma is not None:
            break

    if sigma is None:
        warnings.warn('Polyline crossing without a sign change of the dense '
                      'curves, using the linear crossing.')

        sigma = s[i] + a*(s[i + 1] - s[i])
        tau = t[j] + b*(t[j + 1] - t[j])
    else:
        tau = side.foot(np.asarray(shot.point_at(sigma)))

    return float(sigma), float(tau)


def first_intersection(surface, shot, target, solver=None,
                       angle_floor=ANGLE_FLOOR, first=0):
    """
    Earliest transversal crossing of a shot geodesic with a target segment.

    Parameters
    ----------
    surface : geodivpy.surfaces.ParametricSurface
        Surface of both curves.
    shot : geodivpy.geodesic.GeodesicPath
        Shot geodesic.
    target : geodivpy.geodesic.GeodesicSegment
        Target segment.
    solver : geodivpy.solvers.RootSolver or None, optional
        Solver for the refinement. If None, a default `RootSolver()` is used.
        The default is None.
    angle_floor : float, optional
        Smallest accepted crossing angle. The default is 1e-6.
    first : int, optional
        First shot polyline segment to scan. The default is 0.

    Returns
    -------
    IntersectionResult
        The refined crossing.

    Raises
    ------
    NoIntersection
        If the shot polyline does not cross the target polyline.
    TangentialIntersection
        If the crossing angle is within `angle_floor` of 0 or pi.
    EndpointHit
        If the crossing is within `1e-9*min(1, target.length)` of an end of
        the target.

    """

    if solver is None:
        solver = RootSolver()

    if shot.surface is not surface or target.path.surface is not surface:
        raise InvalidParameter('Shot and target must lie on the given '
                               'surface.')

    hits = polyline_crossings(shot.points, target.path.points, first=first)

    if len(hits) == 0:
        raise NoIntersection('Shot of length {:.6g} does not cross the '
                             'target segment of length {:.6g}.'.format(
                                 shot.total_length, target.length))

    sigma, tau = _refine(surface, shot, target, hits[0], solver)

    return _checked_result(surface, shot, target, sigma, tau, angle_floor)


def _checked_result(surface, shot, target, sigma, tau, angle_floor):

    end_tol = 1e-9*min(1.0, target.length)

    if tau <= end_tol or tau >= target.length - end_tol:
        raise EndpointHit('Crossing at target arc length {:.6g} is at an end '
                          'of the segment of length {:.6g}.'.format(
                              tau, target.length))

    point = shot.point_at(sigma)

    angle = angle_between(surface, point, shot.velocity_at(sigma),
                          target.path.velocity_at(tau))

    if not angle_floor < angle < np.pi - angle_floor:
        raise TangentialIntersection('Crossing angle {:.3e} is not '
                                     'transversal.'.format(angle))

    logger.debug('Intersection at s=%.12g t=%.12g angle=%.6f',
                 sigma, tau, angle)

    return IntersectionResult(sigma, tau, point, angle)


def shoot_to_intersection(surface, start, direction, target, step_h,
                          max_length, chunk=200, solver=None,
                          angle_floor=ANGLE_FLOOR):
    """
    Integrate a geodesic lazily until it crosses a target segment.

    Parameters
    ----------
    surface : geodivpy.surfaces.ParametricSurface
        Surface of the chart.
    start : tuple of float
        Start of the shot.
    direction : geodivpy.geodesic.TangentVector or (2,) numpy.ndarray
        Unit initial tangent of the shot.
    target : geodivpy.geodesic.GeodesicSegment
        Target segment.
    step_h : float
        Integration step.
    max_length : float
        The shot is given up once it is longer than this length.
    chunk : int, optional
        Number of steps integrated before each scan. The default is 200.
    solver : geodivpy.solvers.RootSolver or None, optional
        Refinement solver. The default is None.
    angle_floor : float, optional
        Smallest accepted crossing angle. The default is 1e-6.

    Returns
    -------
    result : IntersectionResult
        The crossing.
    shot : geodivpy.geodesic.GeodesicPath
        Shot from `start` to the crossing.

    Raises
    ------
    NoIntersection
        If no crossing is found within `max_length` or before the shot stops
        at the chart boundary.

    """

    if solver is None:
        solver = RootSolver()

    integrator = GeodesicIntegrator(surface, start, direction, step_h,
                                    on_boundary='stop')

    scanned = 0
    target_pts = target.path.points

    while True:
        taken = integrator.extend(chunk)

        if integrator.length == 0.0:
            break

        path = integrator.path()

        hits = polyline_crossings(path.points, target_pts, first=scanned)

        if len(hits) > 0:
            sigma, tau = _refine(surface, path, target, hits[0], solver)

            result = _checked_result(surface, path, target, sigma, tau,
                                     angle_floor)

            return result, path.truncate(sigma)

        scanned = path.states.shape[0] - 1

        if taken < chunk or integrator.length >= max_length:
            break

    raise NoIntersection('Shot from ({:.6g}, {:.6g}) did not cross the '
                         'target within length {:.6g}{}.'.format(
                             start[0], start[1], integrator.length,
                             ' (stopped at the chart boundary)'
                             if integrator.stopped else ''))
