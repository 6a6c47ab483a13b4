import numpy as np



# Functions for verification work
def check_grad(fun, U0, verbose=True, atol=1e-10, rtol=0.0, h=1e-5, silent=False):
    """
    Compare an analytical derivative with central finite differences.

    Default prints if verbose is True or if both atol and rtol are exceeded.

    Parameters
    ----------
    fun : function
        Returns `(F, dFdU)` for a (m,) vector `U`, `F` with shape (n,) and
        `dFdU` with shape (n, m).
    U0 : (m,) numpy.ndarray
        Point to check the derivative at.
    verbose : bool, optional
        Always print output. Even if False, output will be printed if the
        gradient does not pass the test.
        The default is True.
    atol : float, optional
        Absolute tolerance. The default is 1e-10.
    rtol : float, optional
        Tolerance relative to the norm of the numerical derivative.
        The default is 0.0.
    h  : float, optional
        Finite difference step size. The default is 1e-5.
    silent : bool, optional
        If True, no output will be printed regardless of the results.
        The default is False.

    Returns
    -------
    grad_failed : bool
        True if the derivative does not meet the specified tolerances.

    """

    U0 = np.array(U0, dtype=float) # copy, so steps do not modify the input

    F, dFdU = fun(U0)
    dFdU = np.atleast_2d(dFdU)

    assert dFdU.shape[1] == U0.shape[0], \
        'Derivative dimensions do not match input vector.'

    ########## Numerical Derivative

    dFdU_num = np.zeros_like(dFdU)

    for i in range(U0.shape[0]):
        U0[i] += h
        dFdU_num[:, i] += fun(U0)[0]
        U0[i] -= 2*h
        dFdU_num[:, i] -= fun(U0)[0]
        dFdU_num[:, i] = dFdU_num[:, i] / (2*h)

        U0[i] += h

    abs_error = np.max(np.abs(dFdU - dFdU_num))
    norm_error = abs_error \
                    /(np.linalg.norm(dFdU_num) + (np.linalg.norm(dFdU_num)==0))

    grad_failed = (abs_error > atol and norm_error > rtol)

    if (verbose or grad_failed) and not silent:
        print('Difference Between numerical and analytical derivative:', abs_error)
        print('Diff/norm(numerical derivative):', norm_error)

    return grad_failed


def check_chart_derivatives(surface, u, v, atol=1e-8):
    """
    Check the closed form chart derivatives of a surface against finite
    differences of the chart and of the first derivatives.

    Returns
    -------
    failed : bool
        True if any derivative fails the check.
    """

    def first(U):
        r_u, r_v = surface.analytic_derivatives(U[0], U[1])[:2]
        return surface.chart(U[0], U[1]), np.stack((r_u, r_v), axis=-1)

    def second_u(U):
        r_u, r_v, r_uu, r_uv, r_vv = surface.analytic_derivatives(U[0], U[1])
        return r_u, np.stack((r_uu, r_uv), axis=-1)

    def second_v(U):
        r_u, r_v, r_uu, r_uv, r_vv = surface.analytic_derivatives(U[0], U[1])
        return r_v, np.stack((r_uv, r_vv), axis=-1)

    U0 = np.array([u, v])

    return any(check_grad(f, U0, verbose=False, atol=atol, h=1e-6)
               for f in (first, second_u, second_v))


def unit_sphere_point(u, v):
    """
    Position on the unit sphere in the chart of geodivpy.surfaces.Sphere.
    """
    return np.array([np.sin(u)*np.cos(v), np.sin(u)*np.sin(v), np.cos(u)])


def great_circle_distance(P, Q):
    """
    Geodesic distance between two chart points on the unit sphere.
    """
    x = unit_sphere_point(*P)
    y = unit_sphere_point(*Q)

    return np.arctan2(np.linalg.norm(np.cross(x, y)), x @ y)


def lhuilier_excess(a, b, c):
    """
    Spherical excess of a unit sphere triangle with side lengths a, b, c.

    tan(E/4) = sqrt(tan(s/2) tan((s-a)/2) tan((s-b)/2) tan((s-c)/2))
    """
    s = 0.5*(a + b + c)

    t = np.tan(s/2)*np.tan((s - a)/2)*np.tan((s - b)/2)*np.tan((s - c)/2)

    return 4*np.arctan(np.sqrt(t))


def line_crossing(P, d, Q, e):
    """
    Parameters `(s, t)` of the crossing `P + s d = Q + t e` of two lines.
    """
    A = np.column_stack((d, -e))
    s, t = np.linalg.solve(A, np.asarray(Q) - np.asarray(P))

    return s, t
