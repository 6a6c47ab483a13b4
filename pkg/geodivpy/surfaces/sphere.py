import numpy as np

from ..errors import InvalidParameter
from .parametric_surface import ParametricSurface, _stack


class Sphere(ParametricSurface):
    """
    Round sphere `r(u, v) = radius*(sin u cos v, sin u sin v, cos u)`.

    Parameters
    ----------
    radius : float, optional
        Sphere radius. The default is 1.0.
    derivative_mode : {'analytic', 'finite-difference'}, optional
        The default is 'analytic'.
    h_fd : float, optional
        Finite difference step. The default is 1e-5.

    Notes
    -----
    The chart domain excludes the poles and the seam,
    `u in (1e-3, pi - 1e-3)` and `v in (-pi, pi)`.

    """

    surface_id = 'sphere'

    parameter_defaults = {'radius': 1.0}

    default_point = (np.pi/2, 0.0)

    curvature_character = 'K = 1/radius**2 > 0 everywhere (elliptic)'

    def __init__(self, radius=1.0, derivative_mode='analytic', h_fd=1e-5):

        if not radius > 0:
            raise InvalidParameter('Sphere radius must be positive.')

        super().__init__(((1e-3, np.pi - 1e-3), (-np.pi, np.pi)),
                         derivative_mode=derivative_mode, h_fd=h_fd)

        self.radius = float(radius)

    @property
    def parameters(self):
        return {'radius': self.radius}

    def chart(self, u, v):
        R = self.radius
        return R*_stack(np.sin(u)*np.cos(v), np.sin(u)*np.sin(v), np.cos(u))

    def analytic_derivatives(self, u, v):

        R = self.radius
        su, cu = np.sin(u), np.cos(u)
        sv, cv = np.sin(v), np.cos(v)
        zero = 0.0*su*sv

        r_u = R*_stack(cu*cv, cu*sv, -su + zero)
        r_v = R*_stack(-su*sv, su*cv, zero)
        r_uu = R*_stack(-su*cv, -su*sv, -cu + zero)
        r_uv = R*_stack(-cu*sv, cu*cv, zero)
        r_vv = R*_stack(-su*cv, -su*sv, zero)

        return r_u, r_v, r_uu, r_uv, r_vv
