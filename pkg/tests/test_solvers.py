"""
Verification of the scalar root solvers used for shooting and for the
refinement of intersections.

Outline:
    1. Secant iteration on a smooth function
    2. Failure of the secant iteration is reported as NoConvergence
    3. Bisection and bracketed roots, including brackets without a sign
       change
"""

import sys
import numpy as np
import unittest

sys.path.append('..')
from geodivpy.solvers import RootSolver
from geodivpy.errors import NoConvergence


class TestRootSolver(unittest.TestCase):

    def test_secant(self):
        """
        Root of x**2 - 9 from guesses close to 3.
        """

        solver = RootSolver()

        x, fx, sol = solver.secant(lambda x : x**2 - 9, 3.5, 3.501)

        self.assertLess(abs(fx), 1e-10, 'Residual error is too high.')
        self.assertLess(abs(x - 3.0), 1e-11, 'Solution error is too high.')

    def test_secant_failure(self):
        """
        A function without a root cannot reach the residual tolerance.
        """

        solver = RootSolver(maxiter=20)

        with self.assertRaises(NoConvergence):
            solver.secant(lambda x : x**2 + 1.0, 0.5, 0.6)

    def test_bisect(self):

        solver = RootSolver()

        x = solver.bisect(np.cos, 0.0, 3.0, xtol=1e-13)

        self.assertLess(abs(x - np.pi/2), 1e-12,
                        'Bisection misses the root of cos.')

        # roots at the ends of the bracket are returned directly
        self.assertEqual(solver.bisect(np.sin, 0.0, 1.0), 0.0)

    def test_bracket_root(self):

        solver = RootSolver()

        x = solver.bracket_root(lambda x : x**3 - 2.0, 0.0, 2.0)

        self.assertLess(abs(x - 2.0**(1/3)), 1e-13,
                        'Brent solution is inaccurate.')

        # No sign change: end point with the smaller value
        x = solver.bracket_root(lambda x : (x - 5.0)**2, 0.0, 4.0)

        self.assertEqual(x, 4.0, 'Wrong end point without a sign change.')


if __name__ == '__main__':
    unittest.main()
