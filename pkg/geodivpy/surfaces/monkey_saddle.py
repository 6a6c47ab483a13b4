import numpy as np

from .parametric_surface import ParametricSurface, _stack


class MonkeySaddle(ParametricSurface):
    """
    Monkey saddle graph `r(u, v) = (u, v, u**3 - 3 u v**2)`.

    Parameters
    ----------
    derivative_mode : {'analytic', 'finite-difference'}, optional
        The default is 'analytic'.
    h_fd : float, optional
        Finite difference step. The default is 1e-5.

    Notes
    -----
    `K = -36 (u**2 + v**2) / (1 + 9 (u**2 + v**2)**2)**2`. The origin is a
    planar point (`k1 = k2 = 0`), every other point is hyperbolic.

    """

    surface_id = 'monkey-saddle'

    parameter_defaults = {}

    default_point = (0.0, 0.0)

    curvature_character = 'K = -36(u^2+v^2)/(1+9(u^2+v^2)^2)^2: K < 0 ' \
                          'except the planar point K = 0 at the origin'

    def __init__(self, derivative_mode='analytic', h_fd=1e-5):

        super().__init__(((-5.0, 5.0), (-5.0, 5.0)),
                         derivative_mode=derivative_mode, h_fd=h_fd)

    def chart(self, u, v):
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        return _stack(u, v, u**3 - 3*u*v**2)

    def analytic_derivatives(self, u, v):

        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        zero = 0.0*u*v

        r_u = _stack(1.0 + zero, zero, 3*u**2 - 3*v**2)
        r_v = _stack(zero, 1.0 + zero, -6*u*v)
        r_uu = _stack(zero, zero, 6*u + zero)
        r_uv = _stack(zero, zero, -6*v + zero)
        r_vv = _stack(zero, zero, -6*u + zero)

        return r_u, r_v, r_uu, r_uv, r_vv
