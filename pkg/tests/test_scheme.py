"""
Verification of the angle division construction and its diagnostics.

Outline:
    1. Closed form limits and the exact plane sequences
    2. Initial transversal and single steps on the plane
    3. Full runs on the plane against the plane sequences, for both
       orientations of the rays and for different initial triangles
    4. Runs on the sphere: limits, Gauss-Bonnet recurrences, shrinking
       triangles and the curvature series bound
    5. Configuration errors and non-convergence
    6. Plane runs over several mu and random initial triangles
    7. Constant p, q on the sphere, the saddle and the torus
    8. Runs that lose curvature integrals, progress output
"""

import io
import sys
import numpy as np
import unittest
from contextlib import redirect_stdout
from unittest.mock import patch

sys.path.append('..')
from geodivpy.surfaces import make_surface
from geodivpy import scheme
from geodivpy.scheme import (DivisionFunctions, TriangleConfig,
                             theoretical_limits, plane_oracle, TRACE_COLUMNS)
from geodivpy.errors import (InvalidParameter, NoConvergence, NoIntersection,
                             NonSimplePolygon)


class TestScheme(unittest.TestCase):

    def __init__(self, *args, **kwargs):
        """
        Define tolerances here for all the tests

        Returns
        -------
        None.

        """
        super(TestScheme, self).__init__(*args, **kwargs)

        # Exact geometry on the plane
        self.plane_atol = 1e-9

        # Curved surfaces
        self.atol = 1e-6

        # Plane geodesics are exact for any step
        self.plane_settings = {'step_h': 1e-2}

        self.plane = make_surface('plane')
        self.sphere = make_surface('sphere')
        self.bisection = DivisionFunctions.constant(1, 1)

    def test_theoretical_limits(self):

        examples = [((1, 1, np.pi/3), (2*np.pi/9, 2*np.pi/9)),
                    ((2, 2, np.pi/2), (np.pi/8, np.pi/8)),
                    ((1, 17, np.pi/2), (17*np.pi/70, np.pi/70)),
                    ((3, 3, np.pi/2), (np.pi/10, np.pi/10)),
                    ((1, 1, 0.0), (np.pi/3, np.pi/3))]

        for args, ref in examples:
            lim = theoretical_limits(*args)

            self.assertLess(np.max(np.abs(np.array(lim.as_tuple())
                                          - np.array(ref))), 1e-15,
                            'Wrong limits for {}.'.format(args))

        with self.assertRaises(InvalidParameter):
            theoretical_limits(0.0, 1.0, 1.0)

        with self.assertRaises(InvalidParameter):
            theoretical_limits(1.0, 1.0, 4.0)

    def test_plane_oracle(self):

        alpha, beta = plane_oracle(1, 1, np.pi/3, np.pi/3)

        self.assertLess(abs(alpha[1] - np.pi/4), 1e-15)
        self.assertLess(abs(beta[0] - np.pi/6), 1e-15)
        self.assertLess(abs(alpha[-1] - 2*np.pi/9), 1e-14)
        self.assertLess(abs(beta[-1] - 2*np.pi/9), 1e-14)

        # mu close to pi pins both limits close to 0
        alpha, beta = plane_oracle(1, 1, np.pi - 1e-6, 1e-7)

        self.assertLess(max(alpha[-1], beta[-1]), 1e-6)

    def test_divisions(self):

        self.assertEqual(self.bisection.p(0.3, 0.1), 1.0)

        gauss = scheme.make_divisions('gauss', self.sphere)
        corollary = scheme.make_divisions('corollary2', self.sphere)

        self.assertLess(abs(gauss.p(1.0, 0.0) - 2.0), 1e-12)
        self.assertLess(abs(corollary.q(1.0, 0.0) - 3.0), 1e-12)

        negative = DivisionFunctions(lambda u, v : -1.0, lambda u, v : 1.0)

        with self.assertRaises(InvalidParameter):
            negative.p(0.0, 0.0)

        with self.assertRaises(InvalidParameter):
            scheme.make_divisions('trisection', self.plane)

        with self.assertRaises(InvalidParameter):
            DivisionFunctions.constant(0.0, 1.0)

    def test_initial_transversal_plane(self):
        """
        mu = pi/2, |VA_1| = 1 and alpha_1 = pi/4 give B_1 = (0, 1) and
        beta_1 = pi/8.
        """

        config = TriangleConfig.from_angle(self.plane, (0.0, 0.0), np.pi/2,
                                           1.0, alpha1_hat=np.pi/4,
                                           config=self.plane_settings)

        B1, alpha1, beta1, seg = scheme.initial_transversal(config)

        self.assertLess(np.linalg.norm(np.array(B1) - np.array([0.0, 1.0])),
                        self.plane_atol)
        self.assertEqual(alpha1, np.pi/4)
        self.assertLess(abs(beta1 - np.pi/8), self.plane_atol)
        self.assertLess(abs(seg.length - np.sqrt(2)), self.plane_atol)

        # mu = pi/3, alpha_1 = pi/2 leaves pi/6 at B_1
        config = TriangleConfig.from_angle(self.plane, (0.0, 0.0), np.pi/3,
                                           1.0, alpha1_hat=np.pi/2,
                                           config=self.plane_settings)

        beta1 = scheme.initial_transversal(config)[2]

        self.assertLess(abs(beta1 - np.pi/12), self.plane_atol)

    def test_initial_transversal_sphere(self):
        """
        Small triangles on the sphere are almost planar.
        """

        config = TriangleConfig.from_angle(self.sphere, (np.pi/2, 0.0),
                                           np.pi/2, 1e-3,
                                           alpha1_hat=np.pi/4)

        beta1 = scheme.initial_transversal(config)[2]

        self.assertLess(abs(beta1 - np.pi/8), 1e-5)

    def test_step_plane(self):

        config = TriangleConfig.from_angle(self.plane, (0.0, 0.0), np.pi/2,
                                           1.0, alpha1_hat=np.pi/4,
                                           config=self.plane_settings)

        state = scheme.SchemeState.initial(config, self.bisection)
        state = scheme.step(state)

        self.assertEqual(state.k, 2)
        self.assertEqual(state.last, 'A')

        self.assertLess(np.linalg.norm(np.array(state.A.point)
                                       - np.array([np.tan(np.pi/8), 0.0])),
                        self.plane_atol)
        self.assertLess(abs(state.A.raw - 3*np.pi/8), self.plane_atol)
        self.assertLess(abs(state.A.divided - 3*np.pi/16), self.plane_atol)

        state = scheme.step(state)

        self.assertEqual(state.last, 'B')
        self.assertLess(state.B.s, 1.0)

    def test_run_plane(self):
        """
        Bisection with mu = pi/3 converges to 2 pi/9 and follows the plane
        sequences term by term.
        """

        mu = np.pi/3
        config = TriangleConfig.from_angle(self.plane, (0.0, 0.0), mu, 1.0,
                                           config=self.plane_settings)

        trace = scheme.run(config, self.bisection)

        self.assertTrue(trace.converged)
        self.assertLess(trace.limit_pair.gap(theoretical_limits(1, 1, mu)),
                        self.plane_atol)

        alpha, beta = plane_oracle(1, 1, mu, config.alpha1_hat,
                                   n_terms=trace.n_rows)

        self.assertLess(np.max(np.abs(trace.alpha - alpha)), self.plane_atol,
                        'Alpha sequence differs from the plane sequence.')
        self.assertLess(np.max(np.abs(trace.beta - beta)), self.plane_atol,
                        'Beta sequence differs from the plane sequence.')

        # Flat triangles, so the recurrences hold without curvature terms
        res = scheme.verify_recurrence(trace, self.plane)

        self.assertEqual(res.shape, (trace.n_rows - 1, 2))
        self.assertLess(np.max(res), self.plane_atol)

        report = scheme.contraction_diagnostics(trace, self.bisection, mu)

        self.assertEqual(report.rho, 0.25)
        self.assertLess(np.max(report.eps), self.plane_atol)
        self.assertLess(abs(report.fixed_point - 2*np.pi/9), 1e-15)

        self.assertEqual(trace.data.shape[1], len(TRACE_COLUMNS))

    def test_run_plane_pq(self):

        config = TriangleConfig.from_angle(self.plane, (0.0, 0.0), np.pi/2,
                                           1.0, config=self.plane_settings)

        trace = scheme.run(config, DivisionFunctions.constant(2, 2))

        self.assertLess(abs(trace.alpha[-1] - np.pi/8), self.plane_atol)
        self.assertLess(abs(trace.beta[-1] - np.pi/8), self.plane_atol)

    def test_orientation(self):
        """
        Rays with L_B clockwise from L_A give the same limits.
        """

        settings = dict(self.plane_settings)
        rows = []
        settings['callback'] = rows.append

        config = TriangleConfig(self.plane, (0.3, -0.2), [0.0, 1.0],
                                [1.0, 0.0], 1.0, config=settings)

        self.assertEqual(config.ray_sign, -1)

        trace = scheme.run(config, self.bisection)

        self.assertLess(abs(trace.alpha[-1] - np.pi/6), self.plane_atol)
        self.assertLess(abs(trace.beta[-1] - np.pi/6), self.plane_atol)

        self.assertEqual(len(rows), trace.n_rows,
                         'Callback should see every row.')

    def test_limit_independence(self):
        """
        Limits do not depend on the initial triangle.
        """

        mu = np.pi/3
        limits = []

        for a1, alpha1_hat, theta in [(1.0, np.pi/3, 0.0),
                                      (0.5, 1.2, 0.8)]:
            config = TriangleConfig.from_angle(self.plane, (0.0, 0.0), mu,
                                               a1, alpha1_hat=alpha1_hat,
                                               theta=theta,
                                               config=self.plane_settings)

            limits.append(scheme.run(config, self.bisection).limit_pair)

        self.assertLess(limits[0].gap(limits[1]), 10*1e-10)

    def test_run_sphere(self):
        """
        Bisection on the sphere with mu = pi/2 converges to pi/6.
        """

        V = (np.pi/2, 0.0)
        config = TriangleConfig.from_angle(self.sphere, V, np.pi/2, 0.2)

        trace = scheme.run(config, self.bisection)

        self.assertLess(abs(trace.alpha[-1] - np.pi/6), self.atol)
        self.assertLess(abs(trace.beta[-1] - np.pi/6), self.atol)
        self.assertLess(scheme.limit_gap(trace, self.bisection), self.atol)

        # Shrinking triangles
        self.assertLess(trace.column('len_VA')[-1], 0.01*0.2)
        self.assertTrue(np.all(np.diff(trace.column('len_VA')) < 0))

        # Gauss-Bonnet recurrences with the curvature integrals
        res = scheme.verify_recurrence(trace, self.sphere)

        self.assertLess(np.max(res), 1e-5,
                        'Gauss-Bonnet recurrences are not satisfied.')

        # Positive curvature, positive integrals
        self.assertTrue(np.all(trace.column('int_ABV')[:-1] > 0))

        series, bound = scheme.curvature_series_bound(trace, self.sphere)

        self.assertLess(series, bound)

        report = scheme.contraction_diagnostics(trace, self.bisection,
                                                np.pi/2)

        self.assertLess(report.eps[-1], 1e-8)
        self.assertLess(report.eps[-1], report.eps[0])

    def test_plane_angles(self):
        """
        Bisection on the plane for several mu and random initial triangles
        follows the plane sequences and converges to (pi - mu)/3.
        """

        # Seed for repeatability
        rng = np.random.default_rng(1023)

        settings = dict(self.plane_settings)
        settings['max_iters'] = 100
        settings['diagnostics'] = False

        for mu in [np.pi/6, np.pi/3, np.pi/2, 2.8]:
            for ind in range(5):
                a1 = rng.uniform(0.5, 1.5)
                alpha1_hat = rng.uniform(0.2, 0.75)*(np.pi - mu)
                theta = rng.uniform(0.0, 2*np.pi)

                config = TriangleConfig.from_angle(self.plane, (0.0, 0.0),
                                                   mu, a1,
                                                   alpha1_hat=alpha1_hat,
                                                   theta=theta,
                                                   config=settings)

                trace = scheme.run(config, self.bisection)

                alpha, beta = plane_oracle(1, 1, mu, alpha1_hat,
                                           n_terms=trace.n_rows)

                with self.subTest(mu=mu, triangle=ind):
                    self.assertLess(abs(trace.alpha[-1] - (np.pi - mu)/3),
                                    self.plane_atol)
                    self.assertLess(abs(trace.beta[-1] - (np.pi - mu)/3),
                                    self.plane_atol)
                    self.assertLess(np.max(np.abs(trace.alpha - alpha)),
                                    self.plane_atol)
                    self.assertLess(np.max(np.abs(trace.beta - beta)),
                                    self.plane_atol)

    def test_curved_limits(self):
        """
        Constant p, q on the sphere, the saddle and the torus with
        mu = pi/2 reach the closed form limits. The Gauss-Bonnet recurrences
        hold, the alpha error contracts with the factor 1/((1+p)(1+q)) and
        the triangles shrink to V.
        """

        mu = np.pi/2
        a1 = 0.2

        cases = [('sphere', (np.pi/2, 0.0)),
                 ('saddle', (0.0, 0.0)),
                 ('torus', (0.0, 0.0))]

        for key, V in cases:
            surface = make_surface(key)
            config = TriangleConfig.from_angle(surface, V, mu, a1)

            for p, q in [(1, 1), (2, 3), (0.5, 4)]:
                divisions = DivisionFunctions.constant(p, q)

                trace = scheme.run(config, divisions)

                with self.subTest(surface=key, p=p, q=q):
                    self.assertLess(scheme.limit_gap(trace, divisions), 1e-5)

                    # every triangle had its curvature integrals
                    int_ABA = trace.column('int_ABA')[:-1]
                    self.assertFalse(np.any(np.isnan(int_ABA)))

                    res = scheme.verify_recurrence(trace, surface)
                    self.assertLess(np.max(res), 1e-5)

                    len_VA = trace.column('len_VA')
                    len_VB = trace.column('len_VB')

                    self.assertTrue(np.all(np.diff(len_VA) < 0))
                    self.assertTrue(np.all(np.diff(len_VB) < 0))
                    self.assertLess(len_VA[-1], 0.01*len_VA[0])
                    self.assertLess(len_VB[-1], 0.01*len_VB[0])

                    report = scheme.contraction_diagnostics(trace, divisions,
                                                            mu)

                    self.assertLess(report.eps[-1], 1e-8)

                    # late ratios, before the errors reach round off
                    late = report.ratio[np.abs(trace.alpha[:-1]
                                               - report.fixed_point) > 1e-7]
                    self.assertLess(np.max(late[-3:]), report.rho + 0.05)

            # another initial triangle reaches the same limits
            other = TriangleConfig.from_angle(surface, V, mu, 0.15,
                                              alpha1_hat=1.0, theta=0.4)

            with self.subTest(surface=key, initial='other'):
                lim1 = scheme.run(config, self.bisection).limit_pair
                lim2 = scheme.run(other, self.bisection).limit_pair

                self.assertLess(lim1.gap(lim2), 1e-6)

    def test_diagnostics_failure(self):
        """
        A triangle without curvature integrals does not end the run.
        """

        config = TriangleConfig.from_angle(self.plane, (0.0, 0.0), np.pi/3,
                                           1.0, config=self.plane_settings)

        failure = NonSimplePolygon('Triangle boundary intersects itself.')

        with patch.object(scheme, 'curvature_integral',
                          side_effect=failure):
            with self.assertWarns(UserWarning):
                trace = scheme.run(config, self.bisection)

        self.assertTrue(trace.converged)
        self.assertTrue(np.all(np.isnan(trace.column('int_ABA'))))
        self.assertTrue(np.all(np.isnan(trace.column('res_eq1'))))
        self.assertLess(abs(trace.alpha[-1] - 2*np.pi/9), self.plane_atol)

    def test_verbose(self):

        settings = dict(self.plane_settings)
        settings['verbose'] = 5

        config = TriangleConfig.from_angle(self.plane, (0.0, 0.0), np.pi/3,
                                           1.0, config=settings)

        out = io.StringIO()
        with redirect_stdout(out):
            trace = scheme.run(config, self.bisection)

        lines = out.getvalue().splitlines()

        self.assertTrue(lines[0].startswith('Starting run'))
        self.assertTrue(lines[-1].startswith('Run converged'))
        self.assertEqual(sum(line.startswith('Step=') for line in lines),
                         (trace.n_rows - 1) // 5)

    def test_no_convergence(self):

        settings = dict(self.plane_settings)
        settings['max_iters'] = 2

        config = TriangleConfig.from_angle(self.plane, (0.0, 0.0), np.pi/3,
                                           1.0, config=settings)

        with self.assertRaises(NoConvergence) as cm:
            scheme.run(config, self.bisection)

        self.assertEqual(cm.exception.trace.n_rows, 3)
        self.assertFalse(cm.exception.trace.converged)

    def test_config_errors(self):

        with self.assertRaises(InvalidParameter):
            TriangleConfig.from_angle(self.plane, (0.0, 0.0), np.pi, 1.0)

        with self.assertRaises(InvalidParameter):
            TriangleConfig.from_angle(self.plane, (0.0, 0.0), np.pi/2, 1.0,
                                      alpha1_hat=np.pi,
                                      config=self.plane_settings)

        with self.assertRaises(InvalidParameter):
            TriangleConfig.from_angle(self.plane, (0.0, 0.0), np.pi/2, 1.0,
                                      config={'step': 0.1})

        with self.assertRaises(InvalidParameter):
            TriangleConfig(self.plane, (0.0, 0.0), [1.0, 0.0], [0.0, 1.0],
                           1.0, mu=1.0, config=self.plane_settings)

        # alpha_1 + mu > pi, the initial shot never reaches L_B
        with self.assertRaises(NoIntersection):
            TriangleConfig.from_angle(self.plane, (0.0, 0.0), np.pi/2, 1.0,
                                      alpha1_hat=3*np.pi/4,
                                      config={'step_h': 0.05})


if __name__ == '__main__':
    unittest.main()
