"""
Recursive angle division on geodesic triangles.

Two geodesic rays L_A and L_B leave the vertex V at the angle `mu`. Starting
from a transversal segment A_1 B_1, new points are constructed alternately
on the two rays: from the latest point the direction toward V is rotated by
the divided angle toward the previous point and the resulting geodesic is
shot until it crosses the segment between V and the previous point on the
other ray. The angle of the shot with the ray at the new point is divided by
`1 + p` on ray L_A and by `1 + q` on ray L_B.

The limits of the divided angles depend only on `p(V)`, `q(V)` and `mu`.
"""

import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .errors import (InvalidParameter, DivisionDomain, NoConvergence,
                     ZeroVector, NonSimplePolygon)
from .geodesic import (TangentVector, GeodesicSegment, integrate,
                       rotate_tangent, angle_between, signed_angle)
from .intersection import shoot_to_intersection
from .gaussbonnet import (GeodesicTriangle, curvature_integral,
                          absolute_curvature_integral)
from .solvers import RootSolver

# Columns of IterationTrace.data, also the CSV header of the trace
TRACE_COLUMNS = ('k', 'au', 'av', 'bu', 'bv', 'len_VA', 'len_VB',
                 'alpha', 'beta', 'raw_alpha', 'raw_beta',
                 'int_ABA', 'int_ABV', 'eps', 'res_eq1', 'res_eq2')


class DivisionFunctions:
    """
    Pair of positive functions `p` and `q` that divide the measured angles.

    Parameters
    ----------
    p : function
        `p(u, v)` at chart points of ray L_A.
    q : function
        `q(u, v)` at chart points of ray L_B.
    name : str, optional
        Name used in logs and reports. The default is 'custom'.

    See Also
    --------
    make_divisions :
        Named division functions.

    """

    def __init__(self, p, q, name='custom'):
        self._p = p
        self._q = q
        self.name = name

    def __repr__(self):
        return 'DivisionFunctions({})'.format(self.name)

    @staticmethod
    def _checked(value, label, u, v):
        value = float(value)
        if not (np.isfinite(value) and value > 0):
            raise InvalidParameter('Division function {} must be positive, '
                                   'got {} at ({}, {}).'.format(label, value,
                                                                u, v))
        return value

    def p(self, u, v):
        """
        Value of `p` at `(u, v)`, checked to be positive.
        """
        return self._checked(self._p(u, v), 'p', u, v)

    def q(self, u, v):
        """
        Value of `q` at `(u, v)`, checked to be positive.
        """
        return self._checked(self._q(u, v), 'q', u, v)

    @classmethod
    def constant(cls, p_const, q_const):
        """
        Constant division functions. `constant(1, 1)` is the bisection of
        the plane construction.
        """
        for value in (p_const, q_const):
            if not value > 0:
                raise InvalidParameter('Constant division values must be '
                                       'positive.')

        return cls(lambda u, v: p_const, lambda u, v: q_const,
                   name='constant p={:g} q={:g}'.format(p_const, q_const))

    @classmethod
    def corollary2(cls, surface):
        """
        Curvature based pair `p = 1 + |K (k1 + k2)|` and
        `q = 1 + |K| (|k1| + |k2|)`, equal exactly at elliptic and parabolic
        points.
        """
        from .classifier import corollary_p, corollary_q

        return cls(lambda u, v: corollary_p(surface, u, v),
                   lambda u, v: corollary_q(surface, u, v),
                   name='corollary2')

    @classmethod
    def gauss(cls, surface):
        """
        Symmetric pair `p = q = 1 + |K|`.
        """
        def fun(u, v):
            return 1.0 + abs(surface.curvature(u, v).K)

        return cls(fun, fun, name='gauss')


# Named division functions, each built from the surface
DIVISIONS = {'bisection': lambda surface: DivisionFunctions.constant(1, 1),
             'corollary2': DivisionFunctions.corollary2,
             'gauss': DivisionFunctions.gauss}


def make_divisions(name, surface):
    """
    Division functions from a name in `DIVISIONS`.
    """
    if name not in DIVISIONS:
        raise InvalidParameter('Unknown division functions "{}", choose from '
                               '{}.'.format(name, list(DIVISIONS)))
    return DIVISIONS[name](surface)


@dataclass(frozen=True)
class LimitPair:
    """
    Limits `alpha_inf` and `beta_inf` of the divided angles.
    """
    alpha_inf: float
    beta_inf: float

    def as_tuple(self):
        return (self.alpha_inf, self.beta_inf)

    def gap(self, other):
        """
        Largest absolute difference to another LimitPair.
        """
        return max(abs(self.alpha_inf - other.alpha_inf),
                   abs(self.beta_inf - other.beta_inf))


def theoretical_limits(pV, qV, mu):
    """
    Closed form limits of the divided angles.

    Parameters
    ----------
    pV : float
        `p(V)`, positive.
    qV : float
        `q(V)`, positive.
    mu : float
        Angle at V in `[0, pi]`.

    Returns
    -------
    LimitPair
        `alpha_inf = q (pi - mu) / (p + q + p q)` and
        `beta_inf = p (pi - mu) / (p + q + p q)`.

    """

    if not (pV > 0 and qV > 0):
        raise InvalidParameter('p(V) and q(V) must be positive.')

    if not 0 <= mu <= np.pi:
        raise InvalidParameter('mu={} is outside of [0, pi].'.format(mu))

    denom = pV + qV + pV*qV

    return LimitPair(qV*(np.pi - mu)/denom, pV*(np.pi - mu)/denom)


@dataclass(frozen=True)
class _PointRecord:
    """
    Constructed point on one of the rays.

    `back` holds the chart components of the reversed tangent of the shot
    that produced the point, which points back to the previous point.
    """
    side: str
    point: tuple
    s: float
    raw: float
    divided: float
    back: np.ndarray = field(repr=False)


class TriangleConfig:
    """
    Initial geodesic triangle and numerical settings of a run.

    Parameters
    ----------
    surface : geodivpy.surfaces.ParametricSurface
        Surface of the construction.
    V : tuple of float
        Chart point of the vertex.
    ray_A_direction : geodivpy.geodesic.TangentVector or (2,) numpy.ndarray
        Direction of ray L_A at V, normalized internally.
    ray_B_direction : geodivpy.geodesic.TangentVector or (2,) numpy.ndarray
        Direction of ray L_B at V, normalized internally.
    a1 : float
        Arc length of A_1 along L_A.
    alpha1_hat : float or None, optional
        Angle of the initial transversal at A_1 with the ray toward V. If
        None, `(pi - mu)/2` is used (isosceles start on the plane).
        The default is None.
    mu : float or None, optional
        If given, checked against the angle between the rays to 1e-10.
        The default is None.
    config : dict, optional
        Settings that are all optional.
            step_h : float or None, optional
                Geodesic integration step. If None,
                `(estimated triangle diameter)/2000` with the diameter
                estimated as `2*a1`. The default is None.
            max_iters : int, optional
                Maximum number of iterations of `run`. The default is 200.
            conv_tol : float, optional
                Tolerance on successive differences of both angle sequences.
                The default is 1e-10.
            ray_length : float or None, optional
                Length of ray L_B. If None, `5*a1`. L_B stops early at the
                chart boundary. The default is None.
            shot_chunk : int, optional
                Steps integrated between intersection scans.
                The default is 200.
            shot_length_factor : float, optional
                Shots are given up after this multiple of the triangle
                perimeter. The default is 10.
            diagnostics : bool, optional
                Compute curvature integrals and recurrence residuals for
                every row of the trace. The default is True.
            verbose : int, optional
                Print progress every `verbose`-th iteration, 0 to disable.
                The default is 0.
            callback : function or None, optional
                Called with every completed trace row (a dict keyed by
                `TRACE_COLUMNS`). The default is None.
            solver : geodivpy.solvers.RootSolver or None, optional
                Solver used for refinements. The default is None.
        The default is {}.

    Raises
    ------
    InvalidParameter
        For `mu` or `alpha1_hat` outside of `(0, pi)` or unknown settings.
    NoIntersection
        If the initial shot from A_1 does not reach ray L_B.

    Notes
    -----
    The rays and the initial shot are computed at construction, so a
    TriangleConfig that exists is valid and can be reused by several runs
    with different division functions.

    """

    def __init__(self, surface, V, ray_A_direction, ray_B_direction, a1,
                 alpha1_hat=None, mu=None, config={}):

        default_config = {'step_h': None,
                          'max_iters': 200,
                          'conv_tol': 1e-10,
                          'ray_length': None,
                          'shot_chunk': 200,
                          'shot_length_factor': 10.0,
                          'diagnostics': True,
                          'verbose': 0,
                          'callback': None,
                          'solver': None}

        for key in config.keys():
            if key not in default_config:
                raise InvalidParameter('Unknown TriangleConfig setting "{}".'\
                                       .format(key))
            default_config[key] = config[key]

        if not a1 > 0:
            raise InvalidParameter('a1 must be positive.')

        surface.check_domain(*V)

        self.surface = surface
        self.V = (float(V[0]), float(V[1]))
        self.a1 = float(a1)

        try:
            self.ray_A_direction = TangentVector(self.V, _comps(ray_A_direction))\
                                       .normalized(surface)
            self.ray_B_direction = TangentVector(self.V, _comps(ray_B_direction))\
                                       .normalized(surface)
        except ZeroVector as err:
            raise InvalidParameter('Ray directions must be nonzero.') from err

        self.mu = angle_between(surface, self.V, self.ray_A_direction,
                                self.ray_B_direction)

        if mu is not None and abs(mu - self.mu) > 1e-10:
            raise InvalidParameter('Angle between the rays is {:.12f}, not '
                                   'mu={:.12f}.'.format(self.mu, mu))

        if not 0 < self.mu < np.pi:
            raise InvalidParameter('mu={} is outside of (0, pi).'.format(
                                   self.mu))

        if alpha1_hat is None:
            alpha1_hat = 0.5*(np.pi - self.mu)

        if not 0 < alpha1_hat < np.pi:
            raise InvalidParameter('alpha1_hat={} is outside of (0, pi).'\
                                   .format(alpha1_hat))

        self.alpha1_hat = float(alpha1_hat)

        if default_config['step_h'] is None:
            default_config['step_h'] = 2*self.a1/2000

        if default_config['ray_length'] is None:
            default_config['ray_length'] = 5*self.a1

        if default_config['solver'] is None:
            default_config['solver'] = RootSolver()

        if not default_config['step_h'] > 0:
            raise InvalidParameter('step_h must be positive.')

        self.config = default_config

        # Sign of the chart orientation from L_A to L_B at V
        self.ray_sign = 1 if signed_angle(surface, self.V,
                                          self.ray_A_direction,
                                          self.ray_B_direction) > 0 else -1

        self.ray_A = integrate(surface, self.V, self.ray_A_direction,
                               self.a1, self.step_h)

        self.ray_B = integrate(surface, self.V, self.ray_B_direction,
                               self.config['ray_length'], self.step_h,
                               on_boundary='stop')

        self._initial = self._initial_shot()

    @classmethod
    def from_angle(cls, surface, V, mu, a1, alpha1_hat=None, theta=0.0,
                   config={}):
        """
        Configuration from the angle `mu` between the rays.

        Parameters
        ----------
        surface : geodivpy.surfaces.ParametricSurface
            Surface of the construction.
        V : tuple of float
            Chart point of the vertex.
        mu : float
            Angle at V in `(0, pi)`.
        a1 : float
            Arc length of A_1 along L_A.
        alpha1_hat : float or None, optional
            Initial angle at A_1. The default is None.
        theta : float, optional
            Angle of L_A from the chart direction `r_u`, in `(-pi, pi)`.
            L_B is L_A rotated by `mu` in the chart orientation.
            The default is 0.0.
        config : dict, optional
            Settings, see TriangleConfig. The default is {}.

        Returns
        -------
        TriangleConfig
            The configuration.

        """

        if not 0 < mu < np.pi:
            raise InvalidParameter('mu={} is outside of (0, pi).'.format(mu))

        e_u = TangentVector(V, [1.0, 0.0]).normalized(surface)

        d_A = e_u if theta == 0.0 else rotate_tangent(surface, V, e_u,
                                                       theta, 1)
        d_B = rotate_tangent(surface, V, d_A, mu, 1)

        return cls(surface, V, d_A, d_B, a1, alpha1_hat=alpha1_hat, mu=mu,
                   config=config)

    @property
    def step_h(self):
        return self.config['step_h']

    @property
    def max_iters(self):
        return self.config['max_iters']

    @property
    def conv_tol(self):
        return self.config['conv_tol']

    @property
    def solver(self):
        return self.config['solver']

    def ray(self, side):
        """
        Ray L_A for side 'A', ray L_B for side 'B'.
        """
        return self.ray_A if side == 'A' else self.ray_B

    def toward_V(self, side, s):
        """
        Unit tangent of a ray at arc length `s`, pointing toward V.
        """
        return -self.ray(side).velocity_at(s)

    def theoretical_limits(self, divisions):
        """
        Closed form limits for this configuration and `divisions`.
        """
        return theoretical_limits(divisions.p(*self.V), divisions.q(*self.V),
                                  self.mu)

    def _initial_shot(self):
        """
        Shot from A_1 at `alpha1_hat` to ray L_B.
        """

        A1 = self.ray_A.end
        e_V = self.toward_V('A', self.a1)

        # The side of L_B seen from A_1 looking toward V is opposite to the
        # side of L_B seen from V looking along L_A.
        orientation = -self.ray_sign

        A_rec = _PointRecord('A', A1, self.a1, self.alpha1_hat,
                             self.alpha1_hat, np.zeros(2))

        B_rec, shot = _shoot(self, A_rec, orientation, 'B',
                             self.ray_B.total_length, e_V=e_V)

        return A_rec, B_rec, shot


def _comps(w):
    if isinstance(w, TangentVector):
        return w.components
    return np.asarray(w, dtype=float)


def _shoot(config, from_rec, orientation, side_new, s_target, e_V=None):
    """
    Shoot from a constructed point with its divided angle and measure the
    raw angle at the crossing with the other ray.

    Returns the record of the new point (without division) and the shot.
    """

    surface = config.surface
    P = from_rec.point

    if e_V is None:
        e_V = config.toward_V(from_rec.side, from_rec.s)

    direction = rotate_tangent(surface, P, e_V, from_rec.divided, orientation)
    direction = direction.normalized(surface)

    target_ray = config.ray(side_new)
    target = GeodesicSegment.from_path(target_ray.truncate(s_target))

    perimeter = 2*(from_rec.s + s_target)

    result, shot = shoot_to_intersection(
                        surface, P, direction, target, config.step_h,
                        config.config['shot_length_factor']*perimeter,
                        chunk=config.config['shot_chunk'],
                        solver=config.solver)

    s_new = result.t_target
    point = target_ray.point_at(s_new)

    back = -shot.end_tangent.components
    raw = angle_between(surface, point, config.toward_V(side_new, s_new),
                        back)

    if not 0 < raw < np.pi:
        raise DivisionDomain('Raw angle {} at {} is outside of (0, pi).'\
                             .format(raw, point))

    record = _PointRecord(side_new, point, s_new, raw, np.nan, back)

    return record, shot


def _divide(record, divisions):
    if record.side == 'A':
        divisor = 1.0 + divisions.p(*record.point)
    else:
        divisor = 1.0 + divisions.q(*record.point)

    return replace(record, divided=record.raw/divisor)


def initial_transversal(config, divisions=None):
    """
    Initial transversal segment A_1 B_1.

    Parameters
    ----------
    config : TriangleConfig
        Configuration of the run.
    divisions : DivisionFunctions or None, optional
        Division functions, bisection (`p = q = 1`) if None.
        The default is None.

    Returns
    -------
    B1 : tuple of float
        Crossing of the shot from A_1 with ray L_B.
    alpha1 : float
        `alpha1_hat`.
    beta1 : float
        `angle(V B_1 A_1) / (1 + q(B_1))`.
    segment : geodivpy.geodesic.GeodesicSegment
        Segment from A_1 to B_1.

    """

    if divisions is None:
        divisions = DivisionFunctions.constant(1, 1)

    A_rec, B_rec, shot = config._initial
    B_rec = _divide(B_rec, divisions)

    return (B_rec.point, A_rec.divided, B_rec.divided,
            GeodesicSegment.from_path(shot))


@dataclass(frozen=True)
class SchemeState:
    """
    State of the construction after the latest constructed point.

    Attributes
    ----------
    config : TriangleConfig
        Configuration of the run.
    divisions : DivisionFunctions
        Division functions of the run.
    k : int
        Index of the latest A point.
    A : _PointRecord
        Latest point on L_A.
    B : _PointRecord
        Latest point on L_B.
    last : {'A', 'B'}
        Ray of the latest constructed point.
    shot : geodivpy.geodesic.GeodesicPath
        Shot that constructed the latest point.
    """
    config: object
    divisions: object
    k: int
    A: _PointRecord
    B: _PointRecord
    last: str
    shot: object = field(repr=False)

    @classmethod
    def initial(cls, config, divisions):
        """
        State after B_1.
        """
        A_rec, B_rec, shot = config._initial

        return cls(config, divisions, 1, A_rec, _divide(B_rec, divisions),
                   'B', shot)

    @property
    def latest(self):
        return self.A if self.last == 'A' else self.B


def step(state):
    """
    Construct the next point of the sequence A_1, B_1, A_2, B_2, ...

    Parameters
    ----------
    state : SchemeState
        Current state.

    Returns
    -------
    SchemeState
        State with A_{k+1} (after B_k) or B_k (after A_k) added.

    Raises
    ------
    NoIntersection, TangentialIntersection, EndpointHit
        Propagated from the shot.
    DivisionDomain
        If the raw angle is not in `(0, pi)`.

    """

    config = state.config
    surface = config.surface

    from_rec = state.latest
    side_new = 'A' if state.last == 'B' else 'B'
    to_rec = state.A if side_new == 'A' else state.B

    e_V = config.toward_V(from_rec.side, from_rec.s)

    # Open toward the previous point
    turn = signed_angle(surface, from_rec.point, e_V, from_rec.back)

    if turn == 0.0:
        raise DivisionDomain('Shot at {} is aligned with its ray.'.format(
                             from_rec.point))

    orientation = 1 if turn > 0 else -1

    record, shot = _shoot(config, from_rec, orientation, side_new, to_rec.s,
                          e_V=e_V)
    record = _divide(record, state.divisions)

    if side_new == 'A':
        return replace(state, k=state.k + 1, A=record, last='A', shot=shot)

    return replace(state, B=record, last='B', shot=shot)


@dataclass(frozen=True)
class IterationTrace:
    """
    History of a run.

    Attributes
    ----------
    data : (n, 16) numpy.ndarray
        One row per index k with the columns of `TRACE_COLUMNS`. Columns
        that need A_{k+1} are NaN on the final row.
    mu : float
        Angle at V.
    V : tuple of float
        Vertex.
    p_next : (n,) numpy.ndarray
        `p(A_{k+1})` for each row (NaN on the final row).
    q_here : (n,) numpy.ndarray
        `q(B_k)` for each row.
    pV : float
        `p(V)`.
    qV : float
        `q(V)`.
    converged : bool
        Whether the convergence test was met.
    triangles : tuple
        `(A_k B_k A_{k+1}, A_k B_k V)` GeodesicTriangle pairs for the rows
        with a successor.
    """
    data: np.ndarray
    mu: float
    V: tuple
    p_next: np.ndarray
    q_here: np.ndarray
    pV: float
    qV: float
    converged: bool = False
    triangles: tuple = field(default=(), repr=False)

    def column(self, name):
        return self.data[:, TRACE_COLUMNS.index(name)]

    @property
    def n_rows(self):
        return self.data.shape[0]

    @property
    def alpha(self):
        return self.column('alpha')

    @property
    def beta(self):
        return self.column('beta')

    @property
    def limit_pair(self):
        """
        Final angles of the trace as a LimitPair.
        """
        return LimitPair(float(self.alpha[-1]), float(self.beta[-1]))


def _triangles(config, state_k, state_next):
    """
    Triangles A_k B_k A_{k+1} and A_k B_k V.
    """

    A = state_k.A
    B = state_k.B
    A_next = state_next.A

    shot_AB = state_k.shot
    shot_BA = state_next.shot

    ray_A = config.ray_A
    ray_B = config.ray_B

    tri_ABA = GeodesicTriangle.from_paths(config.surface,
                                          (shot_AB, shot_BA,
                                           ray_A.subpath(A_next.s, A.s)))

    tri_ABV = GeodesicTriangle.from_paths(config.surface,
                                          (shot_AB,
                                           ray_B.truncate(B.s).reversed(),
                                           ray_A.truncate(A.s)))

    return tri_ABA, tri_ABV


def _row(k, A, B):
    row = dict.fromkeys(TRACE_COLUMNS, np.nan)

    row.update({'k': k, 'au': A.point[0], 'av': A.point[1],
                'bu': B.point[0], 'bv': B.point[1],
                'len_VA': A.s, 'len_VB': B.s,
                'alpha': A.divided, 'beta': B.divided,
                'raw_alpha': A.raw, 'raw_beta': B.raw})

    return row


def _contraction(pV, qV, mu):
    """
    Affine map T of the alpha recurrence and its Lipschitz constant.
    """
    rho = 1.0/((1 + pV)*(1 + qV))

    def T(phi):
        return rho*phi + qV*(np.pi - mu)*rho

    return T, rho


def run(config, divisions):
    """
    Iterate the angle division construction until convergence.

    Parameters
    ----------
    config : TriangleConfig
        Configuration with the initial triangle.
    divisions : DivisionFunctions
        Division functions `p`, `q`.

    Returns
    -------
    IterationTrace
        Trace of the run with `converged=True`.

    Raises
    ------
    NoConvergence
        If `max_iters` iterations do not bring successive differences of
        both angle sequences below `conv_tol`. The trace is attached to the
        error as `err.trace`.
    GeometricFailure
        Propagated from the construction.

    """

    surface = config.surface
    settings = config.config

    pV = divisions.p(*config.V)
    qV = divisions.q(*config.V)
    T, rho = _contraction(pV, qV, config.mu)

    rows = []
    p_next = []
    q_here = []
    triangles = []

    state = SchemeState.initial(config, divisions)
    converged = False

    if settings['verbose']:
        print('Starting run on {} at V={} with {}, limits {}.'.format(
            surface, config.V, divisions.name,
            config.theoretical_limits(divisions).as_tuple()))

    for it in range(config.max_iters):

        state_A = step(state)
        state_B = step(state_A)

        row = _row(state.k, state.A, state.B)

        A_next = state_A.A
        p_val = divisions.p(*A_next.point)
        q_val = divisions.q(*state.B.point)

        tris = _triangles(config, state, state_A)
        triangles.append(tris)

        row['eps'] = abs(A_next.divided - T(state.A.divided))

        if settings['diagnostics']:
            try:
                int_ABA = curvature_integral(surface, tris[0])
                int_ABV = curvature_integral(surface, tris[1])
            except NonSimplePolygon as err:
                # integrals and residuals of this row stay NaN
                warnings.warn('Skipping curvature integrals of k={}: {}'
                              .format(state.k, err))
            else:
                row['int_ABA'] = int_ABA
                row['int_ABV'] = int_ABV
                row['res_eq1'], row['res_eq2'] = _residuals(
                    state.A.divided, state.B.divided, A_next.divided,
                    int_ABA, int_ABV, p_val, q_val, config.mu)

        rows.append(row)
        p_next.append(p_val)
        q_here.append(q_val)

        if settings['callback'] is not None:
            settings['callback'](row)

        if settings['verbose'] and (it + 1) % settings['verbose'] == 0:
            print('Step=', state.k, ' alpha=', row['alpha'], ' beta=',
                  row['beta'], ' len_VA=', row['len_VA'], ' eps=', row['eps'])

        d_alpha = abs(state_B.A.divided - state.A.divided)
        d_beta = abs(state_B.B.divided - state.B.divided)

        state = state_B

        if d_alpha < config.conv_tol and d_beta < config.conv_tol:
            converged = True
            break

    final = _row(state.k, state.A, state.B)
    rows.append(final)
    p_next.append(np.nan)
    q_here.append(divisions.q(*state.B.point))

    if settings['callback'] is not None:
        settings['callback'](final)

    trace = IterationTrace(
        np.array([[row[c] for c in TRACE_COLUMNS] for row in rows]),
        config.mu, config.V, np.array(p_next), np.array(q_here), pV, qV,
        converged=converged, triangles=tuple(triangles))

    if not converged:
        raise NoConvergence('No convergence within {} iterations, last '
                            'changes exceed conv_tol={:.1e}.'.format(
                                config.max_iters, config.conv_tol),
                            trace=trace)

    if settings['verbose']:
        print('Run converged after {} iterations, limits {}.'.format(
            trace.n_rows - 1, trace.limit_pair.as_tuple()))

    return trace


def _residuals(alpha, beta, alpha_next, int_ABA, int_ABV, p_next, q_here,
               mu):
    """
    Absolute residuals of the two Gauss-Bonnet recurrences of one row.
    """

    rhs1 = (alpha + q_here*beta - int_ABA) / (1 + p_next)
    rhs2 = (np.pi - mu - alpha + int_ABV) / (1 + q_here)

    return abs(alpha_next - rhs1), abs(beta - rhs2)


def verify_recurrence(trace, surface):
    """
    Residuals of the Gauss-Bonnet recurrences along a trace.

    For each row k with a successor the residuals are

        |alpha_{k+1} - (alpha_k + q(B_k) beta_k - I_ABA)/(1 + p(A_{k+1}))|

        |beta_k - (pi - mu - alpha_k + I_ABV)/(1 + q(B_k))|

    with `I_ABA` and `I_ABV` the curvature integrals over the triangles
    A_k B_k A_{k+1} and A_k B_k V.

    Parameters
    ----------
    trace : IterationTrace
        Trace with at least 2 rows.
    surface : geodivpy.surfaces.ParametricSurface
        Surface of the run, used to integrate the curvature when the trace
        was recorded without diagnostics.

    Returns
    -------
    (n-1, 2) numpy.ndarray
        Residuals of the two recurrences per row.

    """

    if trace.n_rows < 2:
        raise InvalidParameter('Trace needs at least 2 rows.')

    n = trace.n_rows - 1

    int_ABA = np.array(trace.column('int_ABA')[:n])
    int_ABV = np.array(trace.column('int_ABV')[:n])

    for ind in range(n):
        if np.isnan(int_ABA[ind]) or np.isnan(int_ABV[ind]):
            if len(trace.triangles) < n:
                raise InvalidParameter('Trace holds neither curvature '
                                       'integrals nor triangles.')
            int_ABA[ind] = curvature_integral(surface,
                                              trace.triangles[ind][0])
            int_ABV[ind] = curvature_integral(surface,
                                              trace.triangles[ind][1])

    alpha = trace.alpha
    beta = trace.beta

    res = np.zeros((n, 2))

    for ind in range(n):
        res[ind] = _residuals(alpha[ind], beta[ind], alpha[ind + 1],
                              int_ABA[ind], int_ABV[ind],
                              trace.p_next[ind], trace.q_here[ind], trace.mu)

    return res


@dataclass(frozen=True)
class ContractionReport:
    """
    Distance of the alpha sequence from the affine contraction T.

    Attributes
    ----------
    eps : (n-1,) numpy.ndarray
        `|alpha_{k+1} - T(alpha_k)|`.
    ratio : (n-1,) numpy.ndarray
        `|alpha_{k+1} - alpha_inf| / |alpha_k - alpha_inf|`, NaN where the
        denominator vanishes.
    rho : float
        Lipschitz constant `1/((1 + p(V))(1 + q(V)))` of T.
    fixed_point : float
        Fixed point of T, equal to the limit of alpha.
    """
    eps: np.ndarray
    ratio: np.ndarray
    rho: float
    fixed_point: float


def contraction_diagnostics(trace, divisions, mu):
    """
    Compare the alpha sequence of a trace with the contraction T.

    Parameters
    ----------
    trace : IterationTrace
        Complete trace.
    divisions : DivisionFunctions
        Division functions of the run, evaluated at `trace.V`.
    mu : float
        Angle at V.

    Returns
    -------
    ContractionReport
        Per step `epsilon_k` and ratios.

    """

    pV = divisions.p(*trace.V)
    qV = divisions.q(*trace.V)

    T, rho = _contraction(pV, qV, mu)
    fixed = theoretical_limits(pV, qV, mu).alpha_inf

    alpha = trace.alpha

    eps = np.abs(alpha[1:] - T(alpha[:-1]))

    num = np.abs(alpha[1:] - fixed)
    den = np.abs(alpha[:-1] - fixed)

    with np.errstate(divide='ignore', invalid='ignore'):
        ratio = np.where(den > 0, num/den, np.nan)

    return ContractionReport(eps, ratio, rho, fixed)


def plane_oracle(p_const, q_const, mu, alpha1, n_terms=60):
    """
    Exact angle sequences of the construction on the plane.

    Parameters
    ----------
    p_const : float
        Constant `p`, positive.
    q_const : float
        Constant `q`, positive.
    mu : float
        Angle at V.
    alpha1 : float
        First angle `alpha_1`.
    n_terms : int, optional
        Number of terms. The default is 60.

    Returns
    -------
    alpha : (n_terms,) numpy.ndarray
        `alpha_{k+1} = (alpha_k + q (pi - mu)) / ((1 + p)(1 + q))`.
    beta : (n_terms,) numpy.ndarray
        `beta_k = (pi - mu - alpha_k) / (1 + q)`.

    """

    if not (p_const > 0 and q_const > 0):
        raise InvalidParameter('p and q must be positive.')

    alpha = np.zeros(n_terms)
    alpha[0] = alpha1

    for k in range(n_terms - 1):
        alpha[k + 1] = (alpha[k] + q_const*(np.pi - mu)) \
                       / ((1 + p_const)*(1 + q_const))

    beta = (np.pi - mu - alpha) / (1 + q_const)

    return alpha, beta


def curvature_series_bound(trace, surface):
    """
    Partial sum of `|I_ABA|` along a trace and its curvature bound.

    Parameters
    ----------
    trace : IterationTrace
        Trace with curvature integrals and triangles.
    surface : geodivpy.surfaces.ParametricSurface
        Surface of the run.

    Returns
    -------
    series : float
        Sum over k of `|integral of K over A_k B_k A_{k+1}|`.
    bound : float
        Integral of `|K|` over the initial triangle A_1 B_1 V.

    """

    if len(trace.triangles) == 0:
        raise InvalidParameter('Trace has no triangles.')

    int_ABA = trace.column('int_ABA')[:-1]

    if np.any(np.isnan(int_ABA)):
        int_ABA = np.array([curvature_integral(surface, tris[0])
                            for tris in trace.triangles])

    series = float(np.sum(np.abs(int_ABA)))
    bound = absolute_curvature_integral(surface, trace.triangles[0][1])

    return series, bound


def limit_gap(trace, divisions):
    """
    Gap between the final angles of a trace and the closed form limits.
    """
    return trace.limit_pair.gap(theoretical_limits(divisions.p(*trace.V),
                                                   divisions.q(*trace.V),
                                                   trace.mu))
