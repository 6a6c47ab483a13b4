"""
Verification of geodesic integration, the exponential map, tangent space
angles and rotations, and the shooting method of connect.

Outline:
    1. Straight lines on the plane, great circles on the sphere
    2. Unit speed and normal acceleration of integrated geodesics
    3. Angles and rotations in a non-orthogonal chart
    4. Connecting points on the cylinder and the sphere
    5. Chart boundary at the step result and at Runge-Kutta stages, input
       errors
    6. 4th order convergence on a great circle
"""

import sys
import numpy as np
import unittest

import verification_utils as vutils

sys.path.append('..')
from geodivpy.surfaces import make_surface
from geodivpy import geodesic as geo
from geodivpy.errors import ChartBoundaryExceeded, ZeroVector, InvalidParameter


class TestGeodesic(unittest.TestCase):

    def __init__(self, *args, **kwargs):
        """
        Define tolerances here for all the tests

        Returns
        -------
        None.

        """
        super(TestGeodesic, self).__init__(*args, **kwargs)

        # Runge-Kutta integration with step 1e-3 over unit lengths
        self.rk_atol = 1e-9

        # Exact (round off) checks
        self.atol = 1e-12

        self.sphere = make_surface('sphere')
        self.plane = make_surface('plane')

    def test_plane_lines(self):

        direction = np.array([0.6, 0.8])

        path = geo.integrate(self.plane, (1.0, -2.0), direction, 2.5, 0.1)

        self.assertLess(np.linalg.norm(np.array(path.end)
                                       - np.array([2.5, 0.0])), self.atol)

        self.assertLess(abs(path.total_length - 2.5), self.atol)

        # final state exactly at the requested length with equal steps
        self.assertEqual(path.states.shape[0], 26)

        # Hermite dense output is exact on lines
        self.assertLess(np.linalg.norm(np.array(path.point_at(1.234))
                                       - np.array([1.0 + 0.6*1.234,
                                                   -2.0 + 0.8*1.234])),
                        self.atol)

    def test_sphere_equator_meridian(self):

        path = geo.integrate(self.sphere, (np.pi/2, 0.0), [0.0, 1.0], 1.0,
                             1e-3)

        self.assertLess(np.linalg.norm(np.array(path.end)
                                       - np.array([np.pi/2, 1.0])),
                        self.rk_atol, 'Equator is not a geodesic.')

        path = geo.integrate(self.sphere, (np.pi/4, 0.3), [1.0, 0.0], 0.5,
                             1e-3)

        self.assertLess(np.linalg.norm(np.array(path.end)
                                       - np.array([np.pi/4 + 0.5, 0.3])),
                        self.rk_atol, 'Meridian is not a geodesic.')

    def test_great_circle(self):
        """
        An oblique geodesic of length 1 ends at great circle distance 1.
        """

        start = (np.pi/3, 0.2)

        e_u = geo.TangentVector(start, [1.0, 0.0]).normalized(self.sphere)
        direction = geo.rotate_tangent(self.sphere, start, e_u, 0.7, 1)

        path = geo.integrate(self.sphere, start, direction, 1.0, 1e-3)

        dist = vutils.great_circle_distance(start, path.end)

        self.assertLess(abs(dist - 1.0), self.rk_atol,
                        'Geodesic is not a great circle arc.')

        self.assertLess(path.speed_deviation(), 1e-8,
                        'Geodesic lost unit speed.')

        # exp_map is the end of the same geodesic
        end = geo.exp_map(self.sphere, start, direction.components, 1e-3)

        self.assertLess(np.linalg.norm(np.array(end) - np.array(path.end)),
                        self.atol)

        # zero vector
        self.assertEqual(geo.exp_map(self.sphere, start, [0.0, 0.0], 1e-3),
                         start)

    def test_normal_acceleration(self):
        """
        Ambient acceleration of a geodesic is normal to the surface.
        """

        saddle = make_surface('saddle')
        start = (0.2, -0.1)

        direction = geo.TangentVector(start, [1.0, 0.5]).normalized(saddle)

        path = geo.integrate(saddle, start, direction, 1.0, 5e-3)

        self.assertLess(path.tangential_acceleration(), 1e-6,
                        'Geodesic has a tangential acceleration.')

        self.assertLess(path.speed_deviation(), 1e-8)

    def test_angles_rotation(self):
        """
        Rotation by theta gives angle |theta| and keeps the norm in the non
        orthogonal saddle chart.
        """

        saddle = make_surface('saddle')
        at = (0.3, -0.2)

        # Seed for repeatability
        rng = np.random.default_rng(1023)

        w = geo.TangentVector(at, [0.4, 1.3])

        for theta in rng.uniform(-3.0, 3.0, 10):
            for orientation in (1, -1):
                rotated = geo.rotate_tangent(saddle, at, w, theta,
                                             orientation)

                self.assertLess(abs(rotated.norm(saddle) - w.norm(saddle)),
                                self.atol, 'Rotation changed the norm.')

                self.assertLess(abs(geo.angle_between(saddle, at, w, rotated)
                                    - abs(theta)), 1e-11,
                                'Rotation angle is wrong.')

                self.assertLess(abs(geo.signed_angle(saddle, at, w, rotated)
                                    - orientation*theta), 1e-11,
                                'Rotation side is wrong.')

    def test_angle_between(self):

        at = (np.pi/3, 0.0)

        self.assertLess(abs(geo.angle_between(self.sphere, at, [1.0, 0.0],
                                              [0.0, 1.0]) - np.pi/2),
                        self.atol)

        self.assertEqual(geo.angle_between(self.sphere, at, [1.0, 0.0],
                                           [2.0, 0.0]), 0.0)

        self.assertLess(abs(geo.angle_between(self.sphere, at, [1.0, 1.0],
                                              [-1.0, -1.0]) - np.pi),
                        self.atol)

        with self.assertRaises(ZeroVector):
            geo.angle_between(self.sphere, at, [0.0, 0.0], [1.0, 0.0])

        with self.assertRaises(InvalidParameter):
            geo.rotate_tangent(self.sphere, at, [1.0, 0.0], np.pi, 1)

        with self.assertRaises(InvalidParameter):
            geo.rotate_tangent(self.sphere, at, [1.0, 0.0], 0.5, 0)

    def test_path_operations(self):

        start = (np.pi/3, 0.2)
        path = geo.integrate(self.sphere, start, [1.0, 0.0], 1.0, 1e-2)

        rev = path.reversed()

        self.assertEqual(rev.start, path.end)
        self.assertEqual(rev.end, path.start)
        self.assertLess(np.linalg.norm(rev.end_tangent.components
                                       + path.start_tangent.components),
                        self.atol)

        sub = path.subpath(0.25, 0.6)

        self.assertLess(abs(sub.total_length - 0.35), self.atol)
        self.assertLess(np.linalg.norm(np.array(sub.start)
                                       - np.array(path.point_at(0.25))),
                        self.atol)

        short = path.truncate(0.4)

        self.assertLess(abs(short.total_length - 0.4), self.atol)

        pts = path.sample(n_min=500)

        self.assertEqual(pts.shape, (500, 2))

    def test_connect_cylinder(self):
        """
        The unrolled cylinder is flat, geodesics are helices of length
        sqrt(du**2 + dv**2) for radius 1.
        """

        cylinder = make_surface('cylinder')

        P = (0.0, 0.0)
        Q = (np.pi/2, 1.0)

        seg = geo.connect(cylinder, P, Q, 1e-2)

        self.assertLess(abs(seg.length - np.sqrt((np.pi/2)**2 + 1.0)),
                        1e-9, 'Helix length is wrong.')

        self.assertLess(np.linalg.norm(np.array(seg.path.end)
                                       - np.array(Q)), 1e-9)

    def test_connect_sphere(self):

        P = (np.pi/2, 0.0)
        Q = (np.pi/2, np.pi/2)

        seg = geo.connect(self.sphere, P, Q, 1e-3)

        self.assertLess(abs(seg.length - np.pi/2), self.rk_atol)

        P = (np.pi/3, 0.0)
        Q = (np.pi/2, 0.5)

        seg = geo.connect(self.sphere, P, Q, 1e-3)

        self.assertLess(abs(seg.length
                            - vutils.great_circle_distance(P, Q)),
                        1e-8, 'Connecting segment is not minimizing.')

        self.assertLess(np.linalg.norm(np.array(seg.path.end)
                                       - np.array(Q)), 1e-9)

        with self.assertRaises(InvalidParameter):
            geo.connect(self.sphere, P, P, 1e-3)

    def test_chart_boundary(self):
        """
        A meridian toward the north pole leaves the chart domain.
        """

        with self.assertRaises(ChartBoundaryExceeded) as cm:
            geo.integrate(self.sphere, (0.1, 0.0), [-1.0, 0.0], 1.0, 1e-2)

        self.assertIsNotNone(cm.exception.path)
        self.assertLess(cm.exception.path.total_length, 0.1)

        # stopping keeps the part inside of the domain
        path = geo.integrate(self.sphere, (0.1, 0.0), [-1.0, 0.0], 1.0,
                             1e-2, on_boundary='stop')

        self.assertGreater(path.end[0], self.sphere.domain[0][0])

    def test_stage_outside_domain(self):
        """
        Runge-Kutta stages past the pole are reported as a chart boundary
        instead of evaluating the metric there.
        """

        y = np.array([0.004, 0.0, -1.0, 0.0])

        with self.assertRaises(ChartBoundaryExceeded):
            geo.rk4_step(self.sphere, y, 1e-2)

    def test_convergence_order(self):
        """
        Halving the step reduces the endpoint error on a great circle by a
        factor of about 16.
        """

        start = (np.pi/2, 0.0)
        phi = 0.7
        length = 1.0

        x0 = vutils.unit_sphere_point(*start)
        t0 = np.cos(phi)*np.array([0.0, 0.0, -1.0]) \
            + np.sin(phi)*np.array([0.0, 1.0, 0.0])

        exact = np.cos(length)*x0 + np.sin(length)*t0

        errors = []
        for h in [0.1, 0.05, 0.025, 0.0125]:
            path = geo.integrate(self.sphere, start,
                                 [np.cos(phi), np.sin(phi)], length, h)

            end = vutils.unit_sphere_point(*path.end)
            errors.append(np.linalg.norm(end - exact))

        ratios = np.array(errors[:-1]) / np.array(errors[1:])

        self.assertTrue(np.all(ratios > 12) and np.all(ratios < 20),
                        'Runge-Kutta is not 4th order, ratios {}.'
                        .format(ratios))

    def test_input_errors(self):

        with self.assertRaises(InvalidParameter):
            geo.integrate(self.plane, (0.0, 0.0), [2.0, 0.0], 1.0, 0.1)

        with self.assertRaises(InvalidParameter):
            geo.integrate(self.plane, (0.0, 0.0), [1.0, 0.0], -1.0, 0.1)


if __name__ == '__main__':
    unittest.main()
