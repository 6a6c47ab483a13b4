import numpy as np

from ..errors import InvalidParameter
from .parametric_surface import ParametricSurface, _stack


class Ellipsoid(ParametricSurface):
    """
    Triaxial ellipsoid `r(u, v) = (a sin u cos v, b sin u sin v, c cos u)`.

    Parameters
    ----------
    a, b, c : float, optional
        Semi-axes along x, y and z. The defaults are 2.0, 1.5 and 1.0.
    derivative_mode : {'analytic', 'finite-difference'}, optional
        The default is 'analytic'.
    h_fd : float, optional
        Finite difference step. The default is 1e-5.

    Notes
    -----
    `K = 1 / (a b c)**2 / (x**2/a**4 + y**2/b**4 + z**2/c**4)**2 > 0`.
    The chart domain is the same as for `Sphere`.

    """

    surface_id = 'ellipsoid'

    parameter_defaults = {'a': 2.0, 'b': 1.5, 'c': 1.0}

    default_point = (np.pi/2, 0.0)

    curvature_character = 'K > 0 everywhere (elliptic)'

    def __init__(self, a=2.0, b=1.5, c=1.0, derivative_mode='analytic',
                 h_fd=1e-5):

        if not (a > 0 and b > 0 and c > 0):
            raise InvalidParameter('Ellipsoid semi-axes must be positive.')

        super().__init__(((1e-3, np.pi - 1e-3), (-np.pi, np.pi)),
                         derivative_mode=derivative_mode, h_fd=h_fd)

        self.axes = np.array([a, b, c], dtype=float)

    @property
    def parameters(self):
        return dict(zip('abc', self.axes.tolist()))

    def chart(self, u, v):
        return self.axes*_stack(np.sin(u)*np.cos(v), np.sin(u)*np.sin(v),
                                np.cos(u) + 0.0*np.asarray(v, dtype=float))

    def analytic_derivatives(self, u, v):

        su, cu = np.sin(u), np.cos(u)
        sv, cv = np.sin(v), np.cos(v)
        zero = 0.0*su*sv
        axes = self.axes

        r_u = axes*_stack(cu*cv, cu*sv, -su + zero)
        r_v = axes*_stack(-su*sv, su*cv, zero)
        r_uu = axes*_stack(-su*cv, -su*sv, -cu + zero)
        r_uv = axes*_stack(-cu*sv, cu*cv, zero)
        r_vv = axes*_stack(-su*cv, -su*sv, zero)

        return r_u, r_v, r_uu, r_uv, r_vv
