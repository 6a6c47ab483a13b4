import numpy as np

from ..errors import InvalidParameter
from .parametric_surface import ParametricSurface, _stack


class Cylinder(ParametricSurface):
    """
    Circular cylinder `r(u, v) = (radius cos u, radius sin u, v)`.

    Parameters
    ----------
    radius : float, optional
        Cylinder radius. The default is 1.0.
    derivative_mode : {'analytic', 'finite-difference'}, optional
        The default is 'analytic'.
    h_fd : float, optional
        Finite difference step. The default is 1e-5.

    Notes
    -----
    The seam is placed at `u = -pi/2`, the domain is
    `u in (-pi/2, 3*pi/2)` and `v in (-50, 50)`.

    """

    surface_id = 'cylinder'

    parameter_defaults = {'radius': 1.0}

    default_point = (0.0, 0.0)

    curvature_character = 'K = 0 everywhere (parabolic), k = -1/radius, 0'

    def __init__(self, radius=1.0, derivative_mode='analytic', h_fd=1e-5):

        if not radius > 0:
            raise InvalidParameter('Cylinder radius must be positive.')

        super().__init__(((-np.pi/2, 3*np.pi/2), (-50.0, 50.0)),
                         derivative_mode=derivative_mode, h_fd=h_fd)

        self.radius = float(radius)

    @property
    def parameters(self):
        return {'radius': self.radius}

    def chart(self, u, v):
        rho = self.radius
        return _stack(rho*np.cos(u), rho*np.sin(u), v)

    def analytic_derivatives(self, u, v):

        rho = self.radius
        su, cu = np.sin(u), np.cos(u)
        zero = 0.0*su*np.asarray(v, dtype=float)

        r_u = _stack(-rho*su + zero, rho*cu + zero, zero)
        r_v = _stack(zero, zero, 1.0 + zero)
        r_uu = _stack(-rho*cu + zero, -rho*su + zero, zero)
        r_0 = _stack(zero, zero, zero)

        return r_u, r_v, r_uu, r_0, r_0
