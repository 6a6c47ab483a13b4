import numpy as np

from ..errors import InvalidParameter
from .parametric_surface import ParametricSurface, _stack


class Torus(ParametricSurface):
    """
    Torus of revolution
    `r(u, v) = ((R + r cos u) cos v, (R + r cos u) sin v, r sin u)`.

    Parameters
    ----------
    R : float, optional
        Distance from the axis to the center of the tube.
        The default is 2.0.
    r : float, optional
        Tube radius, must be less than `R`. The default is 1.0.
    derivative_mode : {'analytic', 'finite-difference'}, optional
        The default is 'analytic'.
    h_fd : float, optional
        Finite difference step. The default is 1e-5.

    Notes
    -----
    The Gaussian curvature is `K = cos u / (r (R + r cos u))`, positive on
    the outer half `|u| < pi/2`, negative on the inner half and zero on the
    top and bottom circles `u = +-pi/2`.
    The domain `u in (-pi/2, 3*pi/2)`, `v in (-pi, pi)` contains both the
    outer (`u = 0`) and the inner (`u = pi`) equator.

    """

    surface_id = 'torus'

    parameter_defaults = {'R': 2.0, 'r': 1.0}

    default_point = (0.0, 0.0)

    curvature_character = ('K = cos u/(r(R + r cos u)): K > 0 for |u| < pi/2 '
                           '(outer), K < 0 for pi/2 < u < 3pi/2 (inner), '
                           'K = 0 at u = +-pi/2')

    def __init__(self, R=2.0, r=1.0, derivative_mode='analytic', h_fd=1e-5):

        if not (0 < r < R):
            raise InvalidParameter('Torus requires 0 < r < R.')

        super().__init__(((-np.pi/2, 3*np.pi/2), (-np.pi, np.pi)),
                         derivative_mode=derivative_mode, h_fd=h_fd)

        self.R = float(R)
        self.r = float(r)

    @property
    def parameters(self):
        return {'R': self.R, 'r': self.r}

    def chart(self, u, v):
        w = self.R + self.r*np.cos(u)
        return _stack(w*np.cos(v), w*np.sin(v), self.r*np.sin(u) + 0.0*v)

    def analytic_derivatives(self, u, v):

        r = self.r
        su, cu = np.sin(u), np.cos(u)
        sv, cv = np.sin(v), np.cos(v)
        w = self.R + r*cu
        zero = 0.0*su*sv

        r_u = _stack(-r*su*cv, -r*su*sv, r*cu + zero)
        r_v = _stack(-w*sv, w*cv, zero)
        r_uu = _stack(-r*cu*cv, -r*cu*sv, -r*su + zero)
        r_uv = _stack(r*su*sv, -r*su*cv, zero)
        r_vv = _stack(-w*cv, -w*sv, zero)

        return r_u, r_v, r_uu, r_uv, r_vv
