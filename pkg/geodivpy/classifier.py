"""
Classification of surface points as elliptic, hyperbolic or parabolic from
the limits of the angle division dynamics.

With the division functions

    p = 1 + |K (k1 + k2)|,    q = 1 + |K| (|k1| + |k2|)

the limits of the two angle sequences are equal and `(pi - mu)/3` at
parabolic points, equal and smaller than `(pi - mu)/3` at elliptic points,
and different at hyperbolic points.
"""

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .errors import (InconclusiveClassification, InvalidParameter,
                     GeodivError)

logger = logging.getLogger(__name__)

ELLIPTIC = 'elliptic'
HYPERBOLIC = 'hyperbolic'
PARABOLIC = 'parabolic'

# Default decision tolerances by evidence
DECISION_TOL = {'theoretical': 1e-6, 'empirical': 1e-4}

# Default initial triangle of empirical classification runs
DEFAULT_A1 = 0.2

REPORT_COLUMNS = ('surface', 'u', 'v', 'K', 'k1', 'k2', 'p', 'q',
                  'alpha_inf_theory', 'beta_inf_theory',
                  'alpha_inf_emp', 'beta_inf_emp',
                  'kind_limits', 'kind_oracle', 'agree')


@dataclass(frozen=True)
class PointType:
    """
    Type of a surface point.

    Attributes
    ----------
    kind : {'elliptic', 'hyperbolic', 'parabolic'}
        The type.
    limit_pair : tuple of float or None
        `(alpha_inf, beta_inf)` the decision was based on, None for a
        classification by the sign of K.
    evidence : {'theoretical', 'empirical', 'curvature'}
        Source of the decision.
    """
    kind: str
    limit_pair: tuple
    evidence: str


def corollary_p(surface, u, v):
    """
    `p = 1 + |K (k1 + k2)|` at `(u, v)`.
    """
    curv = surface.curvature(u, v)
    return 1.0 + abs(curv.K*(curv.k1 + curv.k2))


def corollary_q(surface, u, v):
    """
    `q = 1 + |K| (|k1| + |k2|)` at `(u, v)`.
    """
    curv = surface.curvature(u, v)
    return 1.0 + abs(curv.K)*(abs(curv.k1) + abs(curv.k2))


def decide(limit_pair, mu, decision_tol):
    """
    Point type from a limit pair.

    Parameters
    ----------
    limit_pair : tuple of float
        `(alpha_inf, beta_inf)`.
    mu : float
        Angle at V.
    decision_tol : float
        Tolerance of all comparisons.

    Returns
    -------
    str
        HYPERBOLIC if the limits differ by more than `decision_tol`,
        PARABOLIC if `alpha_inf` is within `decision_tol` of `(pi - mu)/3`,
        ELLIPTIC if it is below by more than `decision_tol`.

    Raises
    ------
    InconclusiveClassification
        If `alpha_inf` exceeds `(pi - mu)/3` by more than `decision_tol`.

    """
    alpha_inf, beta_inf = limit_pair
    third = (np.pi - mu)/3

    if abs(alpha_inf - beta_inf) > decision_tol:
        return HYPERBOLIC

    if abs(alpha_inf - third) <= decision_tol:
        return PARABOLIC

    if alpha_inf < third - decision_tol:
        return ELLIPTIC

    raise InconclusiveClassification(
        'Limits ({:.12g}, {:.12g}) are equal but above (pi - mu)/3={:.12g}.'\
            .format(alpha_inf, beta_inf, third),
        limit_pair=(alpha_inf, beta_inf))


def _empirical_config(surface, V, mu, template):
    """
    TriangleConfig around V from a template dictionary.
    """
    from .scheme import TriangleConfig

    template = dict(template or {})

    a1 = template.pop('a1', DEFAULT_A1)
    alpha1_hat = template.pop('alpha1_hat', None)
    theta = template.pop('theta', 0.0)

    return TriangleConfig.from_angle(surface, V, mu, a1,
                                     alpha1_hat=alpha1_hat, theta=theta,
                                     config=template)


def limits_for(surface, V, mu, mode='theoretical', config=None):
    """
    Limit pair of the dynamics with the curvature division functions.

    Parameters
    ----------
    surface : geodivpy.surfaces.ParametricSurface
        Surface of the point.
    V : tuple of float
        Chart point.
    mu : float
        Angle at V.
    mode : {'theoretical', 'empirical'}, optional
        Closed form limits or the final angles of a run.
        The default is 'theoretical'.
    config : geodivpy.scheme.TriangleConfig or dict or None, optional
        Empirical mode only. A TriangleConfig at V, or a template dict with
        optional keys 'a1', 'alpha1_hat', 'theta' and TriangleConfig
        settings. The default is None.

    Returns
    -------
    geodivpy.scheme.LimitPair
        The limits.

    """
    from .scheme import (DivisionFunctions, TriangleConfig,
                         theoretical_limits, run)

    if mode == 'theoretical':
        return theoretical_limits(corollary_p(surface, *V),
                                  corollary_q(surface, *V), mu)

    if mode != 'empirical':
        raise InvalidParameter('Unknown classification mode "{}".'.format(
                               mode))

    if not isinstance(config, TriangleConfig):
        config = _empirical_config(surface, V, mu, config)

    trace = run(config, DivisionFunctions.corollary2(surface))

    return trace.limit_pair


def classify_via_limits(surface, V, mu, mode='theoretical',
                        decision_tol=None, config=None):
    """
    Classify a point from the limits of the angle division dynamics.

    Parameters
    ----------
    surface : geodivpy.surfaces.ParametricSurface
        Surface of the point.
    V : tuple of float
        Chart point.
    mu : float
        Angle at V in `(0, pi)`.
    mode : {'theoretical', 'empirical'}, optional
        Source of the limits, see `limits_for`.
        The default is 'theoretical'.
    decision_tol : float or None, optional
        Tolerance of the decision rule. If None, 1e-6 in theoretical and
        1e-4 in empirical mode. The default is None.
    config : geodivpy.scheme.TriangleConfig or dict or None, optional
        Empirical mode configuration, see `limits_for`.
        The default is None.

    Returns
    -------
    PointType
        Classification with the limit pair as evidence.

    Raises
    ------
    InconclusiveClassification
        If the limit pair fits no type.

    """

    if not 0 < mu < np.pi:
        raise InvalidParameter('mu={} is outside of (0, pi).'.format(mu))

    if decision_tol is None:
        decision_tol = DECISION_TOL.get(mode, DECISION_TOL['theoretical'])

    pair = limits_for(surface, V, mu, mode=mode, config=config).as_tuple()

    kind = decide(pair, mu, decision_tol)

    logger.debug('%s at %s: limits (%.12g, %.12g) -> %s', surface, V,
                 pair[0], pair[1], kind)

    return PointType(kind, pair, mode)


@dataclass
class ReportRow:
    """
    Cross validation result of one point.

    Attributes follow `REPORT_COLUMNS`. `error` holds the message of a
    failed empirical run or classification, None otherwise, and `exception`
    the raised error.
    """
    surface: str
    u: float
    v: float
    K: float = np.nan
    k1: float = np.nan
    k2: float = np.nan
    p: float = np.nan
    q: float = np.nan
    alpha_inf_theory: float = np.nan
    beta_inf_theory: float = np.nan
    alpha_inf_emp: float = np.nan
    beta_inf_emp: float = np.nan
    kind_limits: str = ''
    kind_oracle: str = ''
    agree: bool = False
    error: str = None
    exception: object = field(default=None, repr=False)

    def values(self):
        return [getattr(self, c) for c in REPORT_COLUMNS]

    @property
    def empirical_gap(self):
        """
        Largest difference between empirical and theoretical limits.
        """
        return max(abs(self.alpha_inf_emp - self.alpha_inf_theory),
                   abs(self.beta_inf_emp - self.beta_inf_theory))


@dataclass
class ClassificationReport:
    """
    Rows of a cross validation batch.
    """
    rows: list = field(default_factory=list)

    def __len__(self):
        return len(self.rows)

    def __add__(self, other):
        return ClassificationReport(self.rows + other.rows)

    @property
    def agreement(self):
        """
        Fraction of rows that agree with the curvature sign, 1.0 if empty.
        """
        if len(self.rows) == 0:
            return 1.0
        return sum(row.agree for row in self.rows) / len(self.rows)

    @property
    def failures(self):
        return [row for row in self.rows if row.error is not None]


def classify_point(label, surface, V, mu, template=None, empirical=True):
    """
    Cross validation row of one point, errors are recorded in the row.
    """

    row = ReportRow(label, float(V[0]), float(V[1]))

    try:
        curv = surface.curvature(*V)
        row.K, row.k1, row.k2 = curv.K, curv.k1, curv.k2
        row.p = corollary_p(surface, *V)
        row.q = corollary_q(surface, *V)

        row.kind_oracle = surface.classify_by_curvature(*V).kind

        theory = classify_via_limits(surface, V, mu, mode='theoretical')
        row.alpha_inf_theory, row.beta_inf_theory = theory.limit_pair
        row.kind_limits = theory.kind
        row.agree = theory.kind == row.kind_oracle

    except GeodivError as err:
        row.error = '{}: {}'.format(type(err).__name__, err)
        row.exception = err
        row.agree = False
        logger.warning('Point %s %s failed: %s', label, V, row.error)
        return row

    if empirical:
        try:
            emp = classify_via_limits(surface, V, mu, mode='empirical',
                                      config=template)
            row.alpha_inf_emp, row.beta_inf_emp = emp.limit_pair
            row.kind_limits = emp.kind
            row.agree = row.agree and emp.kind == row.kind_oracle

        except GeodivError as err:
            if getattr(err, 'trace', None) is not None:
                row.alpha_inf_emp, row.beta_inf_emp = \
                    err.trace.limit_pair.as_tuple()

            row.exception = err
            row.error = '{}: {}'.format(type(err).__name__, err)
            row.agree = False
            logger.warning('Empirical run at %s %s failed: %s', label, V,
                           row.error)

    return row


def _classify_task(args):
    return classify_point(*args)


def cross_validate(surface, points, mu, template=None, empirical=True,
                   jobs=1, label=None, verbose=False):
    """
    Compare limit based classification with the sign of K at many points.

    Parameters
    ----------
    surface : geodivpy.surfaces.ParametricSurface or None
        Surface of all points. If None, `points` holds
        `(label, surface, (u, v))` triples.
    points : list
        Chart points `(u, v)` on `surface`, or triples if `surface` is None.
    mu : float
        Angle at V for every point.
    template : dict or None, optional
        Empirical configuration template, see `limits_for`.
        The default is None.
    empirical : bool, optional
        Also run the dynamics at every point. The default is True.
    jobs : int, optional
        Number of worker processes. 1 runs in this process.
        The default is 1.
    label : str or None, optional
        Surface label of the rows, `surface.surface_id` if None.
        The default is None.
    verbose : bool, optional
        Print every finished point. The default is False.

    Returns
    -------
    ClassificationReport
        One row per point. A failing point never aborts the batch.

    """

    if surface is not None:
        label = surface.surface_id if label is None else label
        points = [(label, surface, tuple(pt)) for pt in points]

    tasks = [(lab, surf, pt, mu, template, empirical)
             for lab, surf, pt in points]

    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_classify_task, tasks))
    else:
        rows = [_classify_task(task) for task in tasks]

    if verbose:
        for row in rows:
            print('Point=', row.surface, (row.u, row.v), ' kind=',
                  row.kind_limits, ' agree=', row.agree)

    report = ClassificationReport(rows)

    logger.info('Cross validation of %d points: agreement %.1f%%',
                len(report), 100*report.agreement)

    return report


def gallery_points(**surface_kwargs):
    """
    Standard batch of gallery points covering all three types.

    Returns
    -------
    list of tuple
        `(label, surface, (u, v))` for the plane, cylinder, sphere,
        ellipsoid, saddle, outer and inner torus equator and monkey saddle
        origin.

    """
    from .surfaces import make_surface

    def surf(name):
        return make_surface(name, **surface_kwargs)

    torus = surf('torus')

    batch = [('plane', surf('plane'), None),
             ('cylinder', surf('cylinder'), None),
             ('sphere', surf('sphere'), None),
             ('ellipsoid', surf('ellipsoid'), None),
             ('saddle', surf('saddle'), None),
             ('torus-outer', torus, (0.0, 0.0)),
             ('torus-inner', torus, (np.pi, 0.0)),
             ('monkey-saddle', surf('monkey-saddle'), (0.0, 0.0))]

    return [(label, surface, surface.default_point if pt is None else pt)
            for label, surface, pt in batch]
