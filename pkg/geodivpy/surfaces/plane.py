import numpy as np

from .parametric_surface import ParametricSurface, _stack


class Plane(ParametricSurface):
    """
    Euclidean plane with the identity chart `r(u, v) = (u, v, 0)`.

    Parameters
    ----------
    derivative_mode : {'analytic', 'finite-difference'}, optional
        The default is 'analytic'.
    h_fd : float, optional
        Finite difference step. The default is 1e-5.

    """

    surface_id = 'plane'

    parameter_defaults = {}

    default_point = (0.0, 0.0)

    curvature_character = 'K = 0 everywhere (parabolic)'

    def __init__(self, derivative_mode='analytic', h_fd=1e-5):

        super().__init__(((-100.0, 100.0), (-100.0, 100.0)),
                         derivative_mode=derivative_mode, h_fd=h_fd)

    def chart(self, u, v):
        return _stack(u, v, np.zeros_like(np.asarray(u, dtype=float)))

    def analytic_derivatives(self, u, v):

        zero = np.zeros(np.broadcast(np.asarray(u), np.asarray(v)).shape)

        r_u = _stack(1.0 + zero, zero, zero)
        r_v = _stack(zero, 1.0 + zero, zero)
        r_2 = _stack(zero, zero, zero)

        return r_u, r_v, r_2, r_2, r_2
