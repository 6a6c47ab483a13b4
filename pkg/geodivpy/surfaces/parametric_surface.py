"""
Template class for parametric surfaces and the data types computed from a
chart: fundamental forms, curvatures and Christoffel symbols.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import OutOfDomain, DegenerateMetric, InvalidParameter
from ..classifier import PointType, ELLIPTIC, HYPERBOLIC, PARABOLIC


@dataclass(frozen=True)
class FundamentalForms:
    """
    First (`E, F, G`) and second (`L, M, N`) fundamental form coefficients
    at the chart point `at`.

    The second form is computed with the unit normal
    `n = (r_u x r_v) / |r_u x r_v|`.
    """
    E: float
    F: float
    G: float
    L: float
    M: float
    N: float
    at: tuple

    @property
    def metric(self):
        """(2,2) numpy.ndarray of the first fundamental form."""
        return np.array([[self.E, self.F], [self.F, self.G]])

    @property
    def det(self):
        """Determinant `EG - F**2` of the first fundamental form."""
        return self.E*self.G - self.F**2


@dataclass(frozen=True)
class CurvatureData:
    """
    Gaussian curvature `K`, principal curvatures `k1 >= k2` and mean
    curvature `H` at a chart point.
    """
    K: float
    k1: float
    k2: float
    H: float


@dataclass(frozen=True)
class ChristoffelSymbols:
    """
    Levi-Civita connection coefficients of a chart.

    `gamma[i, j, k]` is the symbol with upper index `i` and lower indices
    `j, k`, where index 0 is `u` and index 1 is `v`.
    """
    gamma: np.ndarray

    def __getitem__(self, index):
        return self.gamma[index]


def _stack(x, y, z):
    """
    Stack three broadcastable arrays into an array with a trailing axis of
    length 3.
    """
    return np.stack(np.broadcast_arrays(x, y, z), axis=-1).astype(float)


def _dot(a, b):
    return np.sum(a*b, axis=-1)


class ParametricSurface:
    """
    Template class for a surface given by a single chart `r(u, v)`.

    This class does not implement a chart. Gallery surfaces override `chart`
    and `analytic_derivatives`; user charts can be wrapped with
    `ChartSurface`.

    Parameters
    ----------
    domain : tuple of 2 tuples
        Open rectangle `((u_min, u_max), (v_min, v_max))` of the chart.
    derivative_mode : {'analytic', 'finite-difference'}, optional
        Source of the first and second chart derivatives.
        The default is 'analytic'.
    h_fd : float, optional
        Central difference step for first derivatives in finite difference
        mode. Second derivatives use `10*h_fd`.
        The default is 1e-5.

    Notes
    -----
    All array methods (names starting with `forms_arrays`, `area_element`,
    `gaussian_curvature_grid`) broadcast over arrays of `u` and `v` and skip
    the domain check. The scalar methods check the domain and return the
    data types of this module.

    Surfaces are immutable after construction.

    """

    surface_id = 'custom'

    parameter_defaults = {}

    default_point = (0.0, 0.0)

    curvature_character = 'unknown, user supplied chart'

    def __init__(self, domain, derivative_mode='analytic', h_fd=1e-5):

        (u_min, u_max), (v_min, v_max) = domain

        if not (u_min < u_max and v_min < v_max):
            raise InvalidParameter('Domain rectangle is empty: {}'.format(
                                   domain))

        if derivative_mode not in ('analytic', 'finite-difference'):
            raise InvalidParameter('Unknown derivative mode: {}'.format(
                                   derivative_mode))

        if not h_fd > 0:
            raise InvalidParameter('h_fd must be positive.')

        self.domain = ((float(u_min), float(u_max)),
                       (float(v_min), float(v_max)))
        self.derivative_mode = derivative_mode
        self.h_fd = h_fd

    @property
    def parameters(self):
        """
        Dictionary of shape parameters of the surface.
        """
        return {}

    def __repr__(self):
        params = ', '.join('{}={!r}'.format(k, v)
                           for k, v in self.parameters.items())
        return '{}({})'.format(type(self).__name__, params)

    def chart(self, u, v):
        """
        Template chart function.

        Parameters
        ----------
        u : float or numpy.ndarray
            First chart coordinate.
        v : float or numpy.ndarray
            Second chart coordinate, broadcastable with `u`.

        Returns
        -------
        r : (..., 3) numpy.ndarray
            Ambient positions.

        """
        raise NotImplementedError('Chart is not defined for the template '
                                  'surface.')

    def analytic_derivatives(self, u, v):
        """
        Template for closed form chart derivatives.

        Parameters
        ----------
        u : float or numpy.ndarray
            First chart coordinate.
        v : float or numpy.ndarray
            Second chart coordinate, broadcastable with `u`.

        Returns
        -------
        r_u, r_v, r_uu, r_uv, r_vv : (..., 3) numpy.ndarray
            First and second partial derivatives of the chart.

        """
        raise NotImplementedError('No analytic derivatives, use '
                                  'derivative_mode="finite-difference".')

    def derivatives(self, u, v):
        """
        First and second chart derivatives according to `derivative_mode`.

        Parameters
        ----------
        u : float or numpy.ndarray
            First chart coordinate.
        v : float or numpy.ndarray
            Second chart coordinate, broadcastable with `u`.

        Returns
        -------
        r_u, r_v, r_uu, r_uv, r_vv : (..., 3) numpy.ndarray
            First and second partial derivatives of the chart.

        """

        if self.derivative_mode == 'analytic':
            return self.analytic_derivatives(u, v)

        return self._fd_derivatives(u, v)

    def _fd_derivatives(self, u, v):
        """
        Central finite differences of the chart.
        """

        h = self.h_fd
        h2 = 10*h
        r = self.chart

        r_u = (r(u + h, v) - r(u - h, v)) / (2*h)
        r_v = (r(u, v + h) - r(u, v - h)) / (2*h)

        r0 = r(u, v)
        r_uu = (r(u + h2, v) - 2*r0 + r(u - h2, v)) / h2**2
        r_vv = (r(u, v + h2) - 2*r0 + r(u, v - h2)) / h2**2
        r_uv = (r(u + h2, v + h2) - r(u + h2, v - h2)
                - r(u - h2, v + h2) + r(u - h2, v - h2)) / (4*h2**2)

        return r_u, r_v, r_uu, r_uv, r_vv

    def in_domain(self, u, v):
        """
        Check if `(u, v)` lies in the open domain rectangle.

        Parameters
        ----------
        u : float
            First chart coordinate.
        v : float
            Second chart coordinate.

        Returns
        -------
        bool
            True inside of the open rectangle.

        """
        (u_min, u_max), (v_min, v_max) = self.domain

        return bool(u_min < u < u_max and v_min < v < v_max)

    def check_domain(self, u, v):
        """
        Raise `OutOfDomain` if `(u, v)` is not in the open domain rectangle.
        """
        if not self.in_domain(u, v):
            raise OutOfDomain('Point ({}, {}) is outside of the chart domain '
                              '{} of {}.'.format(u, v, self.domain, self))

    def evaluate(self, u, v):
        """
        Ambient position of a chart point.

        Parameters
        ----------
        u : float
            First chart coordinate.
        v : float
            Second chart coordinate.

        Returns
        -------
        point : (3,) numpy.ndarray
            Position `r(u, v)`.

        """
        self.check_domain(u, v)

        return np.asarray(self.chart(float(u), float(v)), dtype=float)

    def forms_arrays(self, u, v):
        """
        Vectorized fundamental form coefficients.

        Parameters
        ----------
        u : float or numpy.ndarray
            First chart coordinate.
        v : float or numpy.ndarray
            Second chart coordinate, broadcastable with `u`.

        Returns
        -------
        E, F, G, L, M, N : numpy.ndarray
            Coefficients with the broadcast shape of `u` and `v`.

        Raises
        ------
        DegenerateMetric
            If the chart is not regular or `EG - F**2 <= 1e-14` anywhere.

        """

        r_u, r_v, r_uu, r_uv, r_vv = self.derivatives(u, v)

        normal = np.cross(r_u, r_v)
        normal_norm = np.linalg.norm(normal, axis=-1)

        E = _dot(r_u, r_u)
        F = _dot(r_u, r_v)
        G = _dot(r_v, r_v)

        if np.any(normal_norm <= 1e-12) or np.any(E*G - F**2 <= 1e-14):
            raise DegenerateMetric('Chart of {} is not regular at the '
                                   'evaluated points.'.format(self))

        n = normal / normal_norm[..., None]

        L = _dot(r_uu, n)
        M = _dot(r_uv, n)
        N = _dot(r_vv, n)

        return E, F, G, L, M, N

    def area_element(self, u, v):
        """
        Vectorized area element `sqrt(EG - F**2)`.
        """
        E, F, G = self.forms_arrays(u, v)[:3]

        return np.sqrt(E*G - F**2)

    def gaussian_curvature_grid(self, u, v):
        """
        Vectorized Gaussian curvature and area element.

        Parameters
        ----------
        u : float or numpy.ndarray
            First chart coordinate.
        v : float or numpy.ndarray
            Second chart coordinate, broadcastable with `u`.

        Returns
        -------
        K : numpy.ndarray
            Gaussian curvature.
        dA : numpy.ndarray
            Area element `sqrt(EG - F**2)`.

        """
        E, F, G, L, M, N = self.forms_arrays(u, v)

        det = E*G - F**2

        return (L*N - M**2) / det, np.sqrt(det)

    def fundamental_forms(self, u, v):
        """
        First and second fundamental forms at a chart point.

        Parameters
        ----------
        u : float
            First chart coordinate.
        v : float
            Second chart coordinate.

        Returns
        -------
        FundamentalForms
            Coefficients at `(u, v)`.

        """
        self.check_domain(u, v)

        E, F, G, L, M, N = self.forms_arrays(float(u), float(v))

        return FundamentalForms(float(E), float(F), float(G),
                                float(L), float(M), float(N),
                                (float(u), float(v)))

    def curvature(self, u, v):
        """
        Gaussian, principal and mean curvature at a chart point.

        Parameters
        ----------
        u : float
            First chart coordinate.
        v : float
            Second chart coordinate.

        Returns
        -------
        CurvatureData
            Curvatures at `(u, v)`, principal curvatures ordered `k1 >= k2`.

        Notes
        -----
        Principal curvatures are the eigenvalues of the shape operator
        `II @ inv(I)`, computed from the roots of
        `det(I) k**2 - (EN - 2FM + GL) k + (LN - M**2) = 0`.
        At umbilic points `k1 = k2` is returned.

        """
        ff = self.fundamental_forms(u, v)

        det = ff.det

        K = (ff.L*ff.N - ff.M**2) / det
        H = (ff.E*ff.N - 2*ff.F*ff.M + ff.G*ff.L) / (2*det)

        disc = np.sqrt(max(H**2 - K, 0.0))

        return CurvatureData(K, H + disc, H - disc, H)

    def christoffel_array(self, u, v):
        """
        Christoffel symbols as a (2,2,2) numpy.ndarray without domain checks.

        This is the fast path for geodesic integration, see `christoffel`.
        """

        r_u, r_v, r_uu, r_uv, r_vv = self.derivatives(u, v)

        g = np.array([[_dot(r_u, r_u), _dot(r_u, r_v)],
                      [_dot(r_u, r_v), _dot(r_v, r_v)]])

        det = g[0, 0]*g[1, 1] - g[0, 1]**2

        if det <= 1e-14:
            raise DegenerateMetric('Degenerate metric at ({}, {}) on {}.'\
                                   .format(u, v, self))

        # dg[a, j, k] is the derivative of g_jk w.r.t. coordinate a
        dg = np.empty((2, 2, 2))

        dg[0, 0, 0] = 2*_dot(r_uu, r_u)
        dg[1, 0, 0] = 2*_dot(r_uv, r_u)
        dg[0, 0, 1] = _dot(r_uu, r_v) + _dot(r_u, r_uv)
        dg[1, 0, 1] = _dot(r_uv, r_v) + _dot(r_u, r_vv)
        dg[0, 1, 1] = 2*_dot(r_uv, r_v)
        dg[1, 1, 1] = 2*_dot(r_vv, r_v)
        dg[:, 1, 0] = dg[:, 0, 1]

        # First kind: Gamma_ljk = (d_j g_lk + d_k g_lj - d_l g_jk) / 2
        first_kind = 0.5*(np.einsum('jlk->ljk', dg)
                          + np.einsum('klj->ljk', dg)
                          - dg)

        g_inv = np.array([[g[1, 1], -g[0, 1]], [-g[0, 1], g[0, 0]]]) / det

        return np.einsum('il,ljk->ijk', g_inv, first_kind)

    def christoffel(self, u, v):
        """
        Levi-Civita Christoffel symbols at a chart point.

        Parameters
        ----------
        u : float
            First chart coordinate.
        v : float
            Second chart coordinate.

        Returns
        -------
        ChristoffelSymbols
            Symbols `gamma[i, j, k]`, symmetric in `j, k`.

        """
        self.check_domain(u, v)

        return ChristoffelSymbols(self.christoffel_array(float(u), float(v)))

    def classify_by_curvature(self, u, v, zero_tol=1e-7):
        """
        Classify a point by the sign of the Gaussian curvature.

        Parameters
        ----------
        u : float
            First chart coordinate.
        v : float
            Second chart coordinate.
        zero_tol : float, optional
            Values of `abs(K)` up to this tolerance are treated as zero.
            The default is 1e-7.

        Returns
        -------
        geodivpy.classifier.PointType
            Elliptic, hyperbolic or parabolic classification with
            `evidence='curvature'`.

        """
        K = self.curvature(u, v).K

        if K > zero_tol:
            kind = ELLIPTIC
        elif K < -zero_tol:
            kind = HYPERBOLIC
        else:
            kind = PARABOLIC

        return PointType(kind, None, 'curvature')

    def swapped(self):
        """
        Orientation flipped copy of the surface with chart `r(v, u)`.

        Returns
        -------
        SwappedSurface
            Surface with swapped chart coordinates. Principal curvatures
            change sign, the Gaussian curvature is unchanged.

        """
        return SwappedSurface(self)

    def describe(self):
        """
        One line description for surface listings.

        Returns
        -------
        dict
            Keys 'id', 'parameters', 'domain', 'curvature'.

        """
        return {'id': self.surface_id,
                'parameters': self.parameters,
                'domain': self.domain,
                'curvature': self.curvature_character}


class SwappedSurface(ParametricSurface):
    """
    Surface with the chart coordinates of `base` swapped.

    Parameters
    ----------
    base : ParametricSurface
        Surface to flip.

    """

    def __init__(self, base):

        (u_dom, v_dom) = base.domain

        super().__init__((v_dom, u_dom), derivative_mode=base.derivative_mode,
                         h_fd=base.h_fd)

        self.base = base
        self.surface_id = base.surface_id + '-swapped'
        self.default_point = base.default_point[::-1]
        self.curvature_character = base.curvature_character

    @property
    def parameters(self):
        return self.base.parameters

    def chart(self, u, v):
        return self.base.chart(v, u)

    def analytic_derivatives(self, u, v):
        r_v, r_u, r_vv, r_uv, r_uu = self.base.analytic_derivatives(v, u)

        return r_u, r_v, r_uu, r_uv, r_vv


class ChartSurface(ParametricSurface):
    """
    Surface from a user supplied chart callable, using finite differences.

    Parameters
    ----------
    chart_fun : function
        Function `chart_fun(u, v)` returning the ambient position with a
        trailing axis of length 3. Should broadcast over numpy arrays.
    domain : tuple of 2 tuples
        Open rectangle `((u_min, u_max), (v_min, v_max))` of the chart.
    h_fd : float, optional
        Finite difference step. The default is 1e-5.

    """

    def __init__(self, chart_fun, domain, h_fd=1e-5):

        super().__init__(domain, derivative_mode='finite-difference',
                         h_fd=h_fd)

        self.chart_fun = chart_fun

    def chart(self, u, v):
        return np.asarray(self.chart_fun(u, v), dtype=float)


def from_function(chart_fun, domain, h_fd=1e-5):
    """
    Create a finite difference surface from a chart callable.

    See Also
    --------
    ChartSurface :
        Class that is returned.
    """
    return ChartSurface(chart_fun, domain, h_fd=h_fd)
