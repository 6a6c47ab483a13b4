import numpy as np

from .parametric_surface import ParametricSurface, _stack


class Saddle(ParametricSurface):
    """
    Hyperbolic paraboloid graph `r(u, v) = (u, v, u**2 - v**2)`.

    Parameters
    ----------
    derivative_mode : {'analytic', 'finite-difference'}, optional
        The default is 'analytic'.
    h_fd : float, optional
        Finite difference step. The default is 1e-5.

    Notes
    -----
    `K = -4 / (1 + 4u**2 + 4v**2)**2`, so every point is hyperbolic.
    At the origin `L = 2`, `M = 0`, `N = -2` and `K = -4`.

    """

    surface_id = 'saddle'

    parameter_defaults = {}

    default_point = (0.0, 0.0)

    curvature_character = 'K = -4/(1 + 4u^2 + 4v^2)^2 < 0 everywhere ' \
                          '(hyperbolic)'

    def __init__(self, derivative_mode='analytic', h_fd=1e-5):

        super().__init__(((-5.0, 5.0), (-5.0, 5.0)),
                         derivative_mode=derivative_mode, h_fd=h_fd)

    def chart(self, u, v):
        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        return _stack(u, v, u**2 - v**2)

    def analytic_derivatives(self, u, v):

        u = np.asarray(u, dtype=float)
        v = np.asarray(v, dtype=float)
        zero = 0.0*u*v

        r_u = _stack(1.0 + zero, zero, 2*u + zero)
        r_v = _stack(zero, 1.0 + zero, -2*v + zero)
        r_uu = _stack(zero, zero, 2.0 + zero)
        r_uv = _stack(zero, zero, zero)
        r_vv = _stack(zero, zero, -2.0 + zero)

        return r_u, r_v, r_uu, r_uv, r_vv
