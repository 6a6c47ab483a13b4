"""
Geodesic integration, exponential map, tangent space angles and rotations,
and a shooting method that connects two chart points by a geodesic.

All quantities are expressed in the chart of a single surface. Tangent
vectors are given by their components `(du, dv)` in the chart basis
`(r_u, r_v)`.
"""

import logging
from dataclasses import dataclass

import numpy as np
import scipy.interpolate

from .errors import (ChartBoundaryExceeded, ZeroVector, InvalidParameter,
                     NoConvergence)
from .solvers import RootSolver

logger = logging.getLogger(__name__)

# Tolerance of the unit speed invariant of stored geodesic states
SPEED_TOL = 1e-8


@dataclass(frozen=True)
class TangentVector:
    """
    Tangent vector with chart components `(du, dv)` based at `(u, v)`.
    """
    base: tuple
    components: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, 'base', (float(self.base[0]),
                                          float(self.base[1])))
        object.__setattr__(self, 'components',
                           np.asarray(self.components, dtype=float)\
                               .reshape(2))

    def norm(self, surface):
        """
        Metric norm `sqrt(E du**2 + 2F du dv + G dv**2)`.
        """
        return metric_norm(surface, self.base, self.components)

    def normalized(self, surface):
        """
        Copy of the vector scaled to unit metric norm.
        """
        nrm = self.norm(surface)

        if nrm < 1e-14:
            raise ZeroVector('Cannot normalize a zero tangent vector.')

        return TangentVector(self.base, self.components / nrm)

    def scaled(self, factor):
        """
        Copy of the vector multiplied by `factor`.
        """
        return TangentVector(self.base, factor*self.components)

    def reversed(self):
        """
        Copy of the vector pointing in the opposite direction.
        """
        return TangentVector(self.base, -self.components)


def metric(surface, at):
    """
    First fundamental form matrix at a chart point without a domain check.

    Parameters
    ----------
    surface : geodivpy.surfaces.ParametricSurface
        Surface of the chart.
    at : tuple of float
        Chart point `(u, v)`.

    Returns
    -------
    g : (2,2) numpy.ndarray
        `[[E, F], [F, G]]`.

    """
    E, F, G = surface.forms_arrays(float(at[0]), float(at[1]))[:3]

    return np.array([[float(E), float(F)], [float(F), float(G)]])


def metric_norm(surface, at, components):
    """
    Metric norm of chart components `(du, dv)` at `at`.
    """
    g = metric(surface, at)
    a = np.asarray(components, dtype=float)

    return float(np.sqrt(max(a @ g @ a, 0.0)))


def _orthonormal_frame(g, a):
    """
    Unit vector along `a` and its metric orthonormal completion with positive
    chart determinant.
    """
    nrm = np.sqrt(max(a @ g @ a, 0.0))

    if nrm < 1e-14:
        raise ZeroVector('Tangent vector has metric norm {:.3e}.'.format(nrm))

    e1 = a / nrm
    det = g[0, 0]*g[1, 1] - g[0, 1]**2

    # Rotation by +pi/2 in the oriented tangent plane
    e2 = np.array([-(g[0, 1]*e1[0] + g[1, 1]*e1[1]),
                   g[0, 0]*e1[0] + g[0, 1]*e1[1]]) / np.sqrt(det)

    return nrm, e1, e2


def signed_angle(surface, at, w1, w2):
    """
    Oriented angle from `w1` to `w2`, positive in the chart orientation.

    Parameters
    ----------
    surface : geodivpy.surfaces.ParametricSurface
        Surface of the chart.
    at : tuple of float
        Common base point of the two vectors.
    w1 : TangentVector or (2,) numpy.ndarray
        First vector.
    w2 : TangentVector or (2,) numpy.ndarray
        Second vector.

    Returns
    -------
    float
        Angle in `(-pi, pi]`.

    """
    a = _components(w1)
    b = _components(w2)

    g = metric(surface, at)
    det = g[0, 0]*g[1, 1] - g[0, 1]**2

    norm_a = np.sqrt(max(a @ g @ a, 0.0))
    norm_b = np.sqrt(max(b @ g @ b, 0.0))

    if norm_a < 1e-14 or norm_b < 1e-14:
        raise ZeroVector('Angle is undefined for a zero tangent vector.')

    cross = np.sqrt(det)*(a[0]*b[1] - a[1]*b[0])
    dot = a @ g @ b

    return float(np.arctan2(cross, dot))


def angle_between(surface, at, w1, w2):
    """
    Angle between two tangent vectors at the same point.

    Parameters
    ----------
    surface : geodivpy.surfaces.ParametricSurface
        Surface of the chart.
    at : tuple of float
        Common base point of the two vectors.
    w1 : TangentVector or (2,) numpy.ndarray
        First vector.
    w2 : TangentVector or (2,) numpy.ndarray
        Second vector.

    Returns
    -------
    float
        Angle in `[0, pi]`.

    Raises
    ------
    ZeroVector
        If either metric norm is below 1e-14.

    Notes
    -----
    The angle is `arccos(g(w1, w2) / (|w1| |w2|))`. It is evaluated as
    `atan2(sqrt(EG - F**2) |w1 x w2|, g(w1, w2))`, which has the same value
    and keeps full precision close to 0 and pi.

    """
    return abs(signed_angle(surface, at, w1, w2))


def rotate_tangent(surface, at, w, theta, orientation):
    """
    Rotate a tangent vector within the tangent plane.

    Parameters
    ----------
    surface : geodivpy.surfaces.ParametricSurface
        Surface of the chart.
    at : tuple of float
        Base point of `w`.
    w : TangentVector or (2,) numpy.ndarray
        Vector to rotate.
    theta : float
        Rotation angle in `(-pi, pi)`.
    orientation : {1, -1}
        Rotation side. +1 rotates toward the metric orthonormal completion
        `e2` with positive chart determinant `det[e1, e2] > 0`.

    Returns
    -------
    TangentVector
        `|w| (cos(theta) e1 + orientation sin(theta) e2)` with
        `e1 = w / |w|`.

    """

    if orientation not in (1, -1):
        raise InvalidParameter('orientation must be +1 or -1.')

    if not -np.pi < theta < np.pi:
        raise InvalidParameter('Rotation angle {} is outside of (-pi, pi).'\
                               .format(theta))

    g = metric(surface, at)
    nrm, e1, e2 = _orthonormal_frame(g, _components(w))

    comps = nrm*(np.cos(theta)*e1 + orientation*np.sin(theta)*e2)

    return TangentVector(at, comps)


def _components(w):
    if isinstance(w, TangentVector):
        return w.components
    return np.asarray(w, dtype=float).reshape(2)


def geodesic_rhs(surface, y):
    """
    Right hand side of the geodesic equation as a first order system.

    Parameters
    ----------
    surface : geodivpy.surfaces.ParametricSurface
        Surface of the chart.
    y : (4,) numpy.ndarray
        State `(u, v, du, dv)`.

    Returns
    -------
    ydot : (4,) numpy.ndarray
        `(du, dv, -Gamma^u_jk x'^j x'^k, -Gamma^v_jk x'^j x'^k)`.

    """

    gamma = surface.christoffel_array(y[0], y[1])
    xdot = y[2:]

    acc = -np.einsum('ijk,j,k->i', gamma, xdot, xdot)

    return np.array([xdot[0], xdot[1], acc[0], acc[1]])


def _check_stage(surface, y):
    if not (np.all(np.isfinite(y)) and surface.in_domain(y[0], y[1])):
        raise ChartBoundaryExceeded('Runge-Kutta stage at ({:.6g}, {:.6g}) '
                                    'is outside of the chart domain.'
                                    .format(y[0], y[1]))
    return y


def rk4_step(surface, y, h):
    """
    One classical 4th order Runge-Kutta step of the geodesic equation.

    Raises
    ------
    ChartBoundaryExceeded
        If a stage point or the result leaves the chart domain.
    """

    k1 = geodesic_rhs(surface, y)
    k2 = geodesic_rhs(surface, _check_stage(surface, y + 0.5*h*k1))
    k3 = geodesic_rhs(surface, _check_stage(surface, y + 0.5*h*k2))
    k4 = geodesic_rhs(surface, _check_stage(surface, y + h*k3))

    return _check_stage(surface, y + h*(k1/6 + k2/3 + k3/3 + k4/6))



class GeodesicPath:
    """
    Arc length sampled geodesic.

    Parameters
    ----------
    surface : geodivpy.surfaces.ParametricSurface
        Surface of the chart.
    states : (M, 5) numpy.ndarray
        Rows `(s, u, v, du, dv)` ordered by strictly increasing arc length
        `s`, starting at `s = 0`. Requires `M >= 2`.

    Notes
    -----
    Positions between stored states are evaluated with cubic Hermite
    interpolation of `(u, v)` with the stored chart velocities
    `(du, dv)` as derivatives. The interpolation error is of the same
    (4th) order as the Runge-Kutta integration.

    Paths are immutable.

    """

    def __init__(self, surface, states):

        states = np.array(states, dtype=float)

        assert states.ndim == 2 and states.shape[1] == 5, \
            'Geodesic states must have 5 columns.'
        assert states.shape[0] >= 2, 'Geodesic path needs at least 2 states.'
        assert states[0, 0] == 0.0, 'Geodesic path must start at s=0.'
        assert np.all(np.diff(states[:, 0]) > 0), \
            'Arc length must be strictly increasing.'

        states.setflags(write=False)

        self.surface = surface
        self.states = states
        self._spline = None

    @property
    def total_length(self):
        return float(self.states[-1, 0])

    @property
    def s(self):
        return self.states[:, 0]

    @property
    def points(self):
        """(M, 2) chart points of the stored states."""
        return self.states[:, 1:3]

    @property
    def start(self):
        return (float(self.states[0, 1]), float(self.states[0, 2]))

    @property
    def end(self):
        return (float(self.states[-1, 1]), float(self.states[-1, 2]))

    @property
    def start_tangent(self):
        return TangentVector(self.start, self.states[0, 3:])

    @property
    def end_tangent(self):
        return TangentVector(self.end, self.states[-1, 3:])

    def _dense(self):
        if self._spline is None:
            self._spline = scipy.interpolate.CubicHermiteSpline(
                                self.states[:, 0], self.states[:, 1:3],
                                self.states[:, 3:5], axis=0,
                                extrapolate=False)
        return self._spline

    def points_at(self, s):
        """
        Vectorized chart points at the arc lengths of an array `s`.
        """
        s = np.clip(np.asarray(s, dtype=float), 0.0, self.total_length)
        return np.asarray(self._dense()(s), dtype=float)

    def point_at(self, s):
        """
        Chart point at arc length `s` in `[0, total_length]`.
        """
        s = min(max(s, 0.0), self.total_length)
        return tuple(float(x) for x in self._dense()(s))

    def velocity_at(self, s):
        """
        Chart velocity `(du, dv)` at arc length `s`.
        """
        s = min(max(s, 0.0), self.total_length)
        return np.asarray(self._dense()(s, 1), dtype=float)

    def state_at(self, s):
        """
        Interpolated row `(s, u, v, du, dv)`.
        """
        s = min(max(s, 0.0), self.total_length)
        dense = self._dense()
        return np.hstack(([s], dense(s), dense(s, 1)))

    def tangent_at(self, s):
        """
        Unit tangent at arc length `s` as a TangentVector.
        """
        return TangentVector(self.point_at(s), self.velocity_at(s))

    def sample(self, n_min=2):
        """
        Chart points along the path for polygon and polyline use.

        Parameters
        ----------
        n_min : int, optional
            Minimum number of points. Stored states are used when there are
            at least `n_min` of them, otherwise `n_min` points equally spaced
            in arc length are interpolated. The default is 2.

        Returns
        -------
        (n, 2) numpy.ndarray
            Chart points from start to end.

        """
        if self.states.shape[0] >= n_min:
            return np.array(self.points)

        return self.points_at(np.linspace(0.0, self.total_length, n_min))

    def subpath(self, s0, s1):
        """
        Part of the path between arc lengths `s0 < s1`, with arc length
        restarting at 0.

        Parameters
        ----------
        s0 : float
            Start arc length, clipped to `[0, total_length]`.
        s1 : float
            End arc length, clipped to `[0, total_length]`.

        Returns
        -------
        GeodesicPath
            The sub-path.

        """
        L = self.total_length

        s0 = min(max(s0, 0.0), L)
        s1 = min(max(s1, 0.0), L)

        assert s1 > s0, 'Empty subpath requested.'

        s = self.states[:, 0]

        # Interior states, skipping states closer than a tiny fraction of the
        # sub-path length to its ends to keep s strictly increasing.
        gap = 1e-12*(s1 - s0)
        inner = self.states[(s > s0 + gap) & (s < s1 - gap)]

        states = np.vstack((self.state_at(s0), inner, self.state_at(s1)))
        states[:, 0] -= s0
        states[0, 0] = 0.0

        return GeodesicPath(self.surface, states)

    def truncate(self, length):
        """
        Initial part of the path of arc length `length`.
        """
        return self.subpath(0.0, length)

    def reversed(self):
        """
        The same geodesic traversed from its end to its start.
        """
        states = self.states[::-1].copy()
        states[:, 0] = self.total_length - states[:, 0]
        states[0, 0] = 0.0
        states[:, 3:] *= -1

        return GeodesicPath(self.surface, states)

    def speed_deviation(self):
        """
        Maximum deviation of the metric speed from 1 over the stored states.
        """
        E, F, G = self.surface.forms_arrays(self.states[:, 1],
                                            self.states[:, 2])[:3]
        du = self.states[:, 3]
        dv = self.states[:, 4]

        speed = np.sqrt(E*du**2 + 2*F*du*dv + G*dv**2)

        return float(np.max(np.abs(speed - 1.0)))

    def tangential_acceleration(self):
        """
        Maximum tangential component of the ambient acceleration.

        The acceleration is approximated by 4th order central differences of
        the ambient positions at interior states with uniform arc length
        spacing over two steps on both sides. For a geodesic the
        acceleration is normal to the surface, so the returned value should
        be close to zero.

        Returns
        -------
        float
            Largest norm of the tangential acceleration component, 0.0 if
            there are no uniformly spaced interior states.

        """
        s = self.states[:, 0]
        ds = np.diff(s)

        if ds.shape[0] < 4:
            return 0.0

        # states i with ds[i-2] == ds[i-1] == ds[i] == ds[i+1]
        window = np.stack((ds[:-3], ds[1:-2], ds[2:-1], ds[3:]))
        uniform = np.all(np.abs(window - window[0]) <= 1e-12*window[0],
                         axis=0)
        idx = np.nonzero(uniform)[0] + 2

        if idx.shape[0] == 0:
            return 0.0

        c = self.surface.chart(self.states[:, 1], self.states[:, 2])
        h = ds[idx]

        acc = (-c[idx - 2] + 16*c[idx - 1] - 30*c[idx] + 16*c[idx + 1]
               - c[idx + 2]) / (12*h[:, None]**2)

        r_u, r_v = self.surface.derivatives(self.states[idx, 1],
                                            self.states[idx, 2])[:2]
        n = np.cross(r_u, r_v)
        n = n / np.linalg.norm(n, axis=-1)[:, None]

        tangential = acc - np.sum(acc*n, axis=-1)[:, None]*n

        return float(np.max(np.linalg.norm(tangential, axis=-1)))


@dataclass(frozen=True)
class GeodesicSegment:
    """
    Geodesic segment from `P` to `Q` with length `L(P, Q)`.
    """
    path: GeodesicPath
    P: tuple
    Q: tuple
    length: float

    @classmethod
    def from_path(cls, path):
        """
        Segment between the start and end of `path`.
        """
        return cls(path, path.start, path.end, path.total_length)

    def reversed(self):
        """
        The segment from `Q` to `P`.
        """
        return GeodesicSegment(self.path.reversed(), self.Q, self.P,
                               self.length)


class GeodesicIntegrator:
    """
    Fixed step integrator that extends a geodesic lazily.

    Parameters
    ----------
    surface : geodivpy.surfaces.ParametricSurface
        Surface of the chart.
    start : tuple of float
        Chart point of the start.
    direction : TangentVector or (2,) numpy.ndarray
        Initial unit tangent.
    step_h : float
        Arc length step.
    on_boundary : {'raise', 'stop'}, optional
        Action when a step leaves the chart domain. 'raise' raises
        `ChartBoundaryExceeded`, 'stop' keeps the states inside the domain and
        marks the integrator as `stopped`.
        The default is 'raise'.

    """

    def __init__(self, surface, start, direction, step_h,
                 on_boundary='raise'):

        if not step_h > 0:
            raise InvalidParameter('step_h must be positive.')

        if on_boundary not in ('raise', 'stop'):
            raise InvalidParameter('on_boundary must be "raise" or "stop".')

        surface.check_domain(*start)

        comps = _components(direction)
        speed = metric_norm(surface, start, comps)

        if abs(speed - 1.0) > SPEED_TOL:
            raise InvalidParameter('Geodesic direction must have unit metric '
                                   'norm, got {:.12f}.'.format(speed))

        self.surface = surface
        self.step_h = step_h
        self.on_boundary = on_boundary
        self.stopped = False

        self._states = [np.array([0.0, start[0], start[1],
                                  comps[0], comps[1]])]

    @property
    def length(self):
        return float(self._states[-1][0])

    def extend(self, n_steps, h=None):
        """
        Take up to `n_steps` further steps of size `h`.

        Parameters
        ----------
        n_steps : int
            Number of steps.
        h : float or None, optional
            Step size, `step_h` if None. The default is None.

        Returns
        -------
        int
            Number of steps actually taken (less than `n_steps` only if the
            integrator stopped at the chart boundary).

        """
        h = self.step_h if h is None else h

        for ind in range(n_steps):

            if self.stopped:
                return ind

            last = self._states[-1]

            try:
                y = rk4_step(self.surface, last[1:], h)
            except ChartBoundaryExceeded as err:

                if self.on_boundary == 'stop':
                    self.stopped = True
                    logger.debug('Geodesic stopped at chart boundary after '
                                 's=%.6g.', last[0])
                    return ind

                raise ChartBoundaryExceeded(
                    'Geodesic left the chart domain after arc length '
                    '{:.6g}: {}'.format(last[0], err),
                    path=self.path() if len(self._states) > 1 else None) \
                    from err

            self._states.append(np.hstack(([last[0] + h], y)))

        return n_steps

    def path(self):
        """
        GeodesicPath of the states integrated so far.
        """
        return GeodesicPath(self.surface, np.array(self._states))


def integrate(surface, start, direction, length, step_h, on_boundary='raise'):
    """
    Integrate a unit speed geodesic with classical 4th order Runge-Kutta.

    Parameters
    ----------
    surface : geodivpy.surfaces.ParametricSurface
        Surface of the chart.
    start : tuple of float
        Chart point of the start.
    direction : TangentVector or (2,) numpy.ndarray
        Initial tangent with unit metric norm.
    length : float
        Arc length to integrate, must be positive.
    step_h : float
        Maximum step size. The path is integrated with
        `n = ceil(length/step_h)` equal steps of `length/n`, so the final
        state lies exactly at `length`.
    on_boundary : {'raise', 'stop'}, optional
        See `GeodesicIntegrator`. The default is 'raise'.

    Returns
    -------
    GeodesicPath
        States recorded at every step.

    Raises
    ------
    ChartBoundaryExceeded
        If the geodesic leaves the domain and `on_boundary='raise'`.

    """

    if not length > 0:
        raise InvalidParameter('Geodesic length must be positive.')

    if not step_h > 0:
        raise InvalidParameter('step_h must be positive.')

    n_steps = max(int(np.ceil(length/step_h - 1e-9)), 1)
    h = length / n_steps

    integrator = GeodesicIntegrator(surface, start, direction, h,
                                    on_boundary=on_boundary)
    integrator.extend(n_steps)

    if len(integrator._states) < 2:
        raise ChartBoundaryExceeded('Geodesic leaves the chart domain '
                                    'within the first step.')

    return integrator.path()


def exp_map(surface, p, w, step_h):
    """
    Exponential map of the surface at `p`.

    Parameters
    ----------
    surface : geodivpy.surfaces.ParametricSurface
        Surface of the chart.
    p : tuple of float
        Chart point.
    w : TangentVector or (2,) numpy.ndarray
        Tangent vector at `p`.
    step_h : float
        Maximum integration step.

    Returns
    -------
    tuple of float
        End point of the geodesic from `p` with initial direction
        `w/|w|` traversed for length `|w|`. Returns `p` for a zero vector.

    """

    comps = _components(w)
    nrm = metric_norm(surface, p, comps)

    if nrm < 1e-14:
        surface.check_domain(*p)
        return (float(p[0]), float(p[1]))

    path = integrate(surface, p, comps / nrm, nrm, step_h)

    return path.end


def _closest_approach(path, Q, solver):
    """
    Arc length of the point of `path` closest to `Q` in chart space and the
    signed miss distance (positive when `Q` is left of the path).
    """

    pts = path.points
    Q = np.asarray(Q, dtype=float)
    ind = int(np.argmin(np.sum((pts - Q)**2, axis=1)))

    s = path.s
    lo = s[max(ind - 1, 0)]
    hi = s[min(ind + 1, s.shape[0] - 1)]

    def dist_deriv(sv):
        return float((np.asarray(path.point_at(sv)) - Q) @ path.velocity_at(sv))

    s_star = solver.bracket_root(dist_deriv, lo, hi)

    X = np.asarray(path.point_at(s_star))
    T = path.velocity_at(s_star)
    d = Q - X

    side = np.sign(T[0]*d[1] - T[1]*d[0])
    miss = float((1.0 if side >= 0 else -1.0)*np.linalg.norm(d))

    at_end = ind == s.shape[0] - 1

    return s_star, miss, at_end


def connect(surface, P, Q, step_h, solver=None, miss_tol=1e-10):
    """
    Connect two chart points by a geodesic with a shooting method.

    Parameters
    ----------
    surface : geodivpy.surfaces.ParametricSurface
        Surface of the chart.
    P : tuple of float
        Start point.
    Q : tuple of float
        End point, distinct from `P`.
    step_h : float
        Integration step.
    solver : RootSolver or None, optional
        Root solver for the shooting iteration. If None, a
        `RootSolver(maxiter=100)` is used. The default is None.
    miss_tol : float, optional
        Required chart space distance between the end of the segment and `Q`.
        The default is 1e-10.

    Returns
    -------
    GeodesicSegment
        Segment from `P` to `Q`, `segment.length` is its arc length.

    Raises
    ------
    NoConvergence
        If the secant iteration fails within `solver.maxiter` iterations.

    Notes
    -----
    The unknown is the angle `phi` of the initial direction measured from
    the chart straight line direction `Q - P`. For each `phi` the geodesic is
    integrated past its closest approach to `Q` and the signed chart space
    miss distance is driven to zero with the secant method. A unique
    minimizing geodesic inside of a normal neighborhood is assumed and is not
    checked.

    """

    if solver is None:
        solver = RootSolver(maxiter=100)

    surface.check_domain(*P)
    surface.check_domain(*Q)

    P = (float(P[0]), float(P[1]))
    d = np.array([Q[0] - P[0], Q[1] - P[1]])

    if np.linalg.norm(d) == 0.0:
        raise InvalidParameter('Cannot connect a point to itself.')

    e1 = TangentVector(P, d).normalized(surface)
    guess_length = metric_norm(surface, P, d)

    cache = {}

    def shoot(phi):

        direction = rotate_tangent(surface, P, e1, phi, 1) \
                    if phi != 0.0 else e1

        shot_length = 2.0*guess_length

        for attempt in range(6):
            path = integrate(surface, P, direction, shot_length, step_h,
                             on_boundary='stop')

            s_star, miss, at_end = _closest_approach(path, Q, solver)

            if not at_end or path.total_length < 0.99*shot_length:
                break

            shot_length *= 2.0

        cache[phi] = (path, s_star, miss)

        return miss

    phi0 = 0.0
    miss0 = shoot(phi0)

    if abs(miss0) < miss_tol:
        phi = phi0
    else:
        try:
            phi = solver.secant(shoot, phi0, 1e-3, ftol=miss_tol)[0]
        except (NoConvergence, ValueError) as err:
            raise NoConvergence('Shooting from {} to {} failed: {}'.format(
                                P, Q, err))

        if phi not in cache:
            shoot(phi)

    path, s_star, miss = cache[phi]

    logger.debug('connect %s -> %s: phi=%.3e length=%.12g miss=%.2e',
                 P, Q, phi, s_star, miss)

    seg_path = path.truncate(s_star)

    return GeodesicSegment(seg_path, P, (float(Q[0]), float(Q[1])),
                           seg_path.total_length)
