import logging

import numpy as np
import scipy.optimize

from .errors import NoConvergence

logger = logging.getLogger(__name__)


class RootSolver:
    """
    Class to provide an interface to the scalar root finding methods used
    for shooting and for refining intersections.

    Parameters
    ----------
    maxiter : int, optional
        Maximum number of iterations for the secant method.
        The default is 100.

    See Also
    --------
    scipy.optimize.root_scalar :
        Secant iteration used by `secant`.
    scipy.optimize.bisect :
        Bracketing method used by `bisect`.

    Notes
    -----
    Class is implemented to provide a consistent interface so that the
    geodesic shooting and the intersection refinement do not depend on the
    exact scipy calls.

    """

    def __init__(self, maxiter=100):

        self.maxiter = maxiter

    def secant(self, fun, x0, x1, ftol=1e-10, xtol=1e-15, verbose=False):
        """
        Derivative free solution of `fun(x) = 0` with the secant method.

        Parameters
        ----------
        fun : function
            Scalar function of a scalar.
        x0 : float
            First initial guess.
        x1 : float
            Second initial guess, should be close to `x0`.
        ftol : float, optional
            Required absolute value of `fun` at the returned point.
            The default is 1e-10.
        xtol : float, optional
            Step size tolerance passed to `scipy.optimize.root_scalar`.
            The default is 1e-15.
        verbose : bool, optional
            Flag to log the final solution details at INFO level.
            The default is False.

        Returns
        -------
        x : float
            Solution.
        fx : float
            `fun(x)`.
        sol : scipy.optimize.RootResults
            Details of the solution taken directly from `root_scalar`.

        Raises
        ------
        NoConvergence
            If `maxiter` iterations do not reduce `abs(fun(x))` below `ftol`.

        """

        sol = scipy.optimize.root_scalar(fun, x0=x0, x1=x1, method='secant',
                                         xtol=xtol, rtol=4*np.finfo(float).eps,
                                         maxiter=self.maxiter)

        x = sol.root
        fx = fun(x)

        log_level = logging.INFO if verbose else logging.DEBUG
        logger.log(log_level, 'Secant: %s iterations=%d |f|=%.3e',
                   sol.flag, sol.iterations, abs(fx))

        if not (np.isfinite(fx) and abs(fx) < ftol):
            raise NoConvergence('Secant iteration did not converge after '
                                '{} iterations, |f|={:.3e}.'.format(
                                    sol.iterations, abs(fx)))

        return x, fx, sol

    def bisect(self, fun, a, b, xtol=1e-12):
        """
        Bracketed solution of `fun(x) = 0` by bisection.

        Parameters
        ----------
        fun : function
            Scalar function with `fun(a)` and `fun(b)` of opposite signs.
        a : float
            Lower end of the bracket.
        b : float
            Upper end of the bracket.
        xtol : float, optional
            Absolute width of the final bracket.
            The default is 1e-12.

        Returns
        -------
        x : float
            Solution, never outside of `[a, b]`.

        """

        fa = fun(a)
        fb = fun(b)

        if fa == 0.0:
            return a
        if fb == 0.0:
            return b

        assert np.sign(fa) != np.sign(fb), \
            'Bisection requires a bracket with a sign change.'

        # Bracket widths are relative to the start of the bracket, so the
        # relative tolerance only matters for large x.
        x = scipy.optimize.bisect(fun, a, b, xtol=xtol,
                                  rtol=4*np.finfo(float).eps, maxiter=200)

        return x

    def bracket_root(self, fun, a, b, xtol=1e-14):
        """
        Bracketed solution of `fun(x) = 0` with Brent's method.

        If `fun` does not change sign on `[a, b]`, the end point with the
        smaller absolute value is returned.

        Parameters
        ----------
        fun : function
            Scalar function of a scalar.
        a : float
            Lower end of the bracket.
        b : float
            Upper end of the bracket.
        xtol : float, optional
            Absolute tolerance on the solution.
            The default is 1e-14.

        Returns
        -------
        x : float
            Solution or best end point.

        """

        fa = fun(a)
        fb = fun(b)

        if np.sign(fa) == np.sign(fb):
            return a if abs(fa) <= abs(fb) else b

        return scipy.optimize.brentq(fun, a, b, xtol=xtol,
                                     rtol=4*np.finfo(float).eps)
