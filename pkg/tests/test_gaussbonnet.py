"""
Verification of geodesic triangles, the curvature quadrature and the
Gauss-Bonnet residual.

Outline:
    1. Flat triangles have zero curvature integral and angle excess
    2. Sphere triangles against L'Huilier's formula for the excess
    3. Saddle triangles, sign of the excess and mean value of K
    4. Additivity under splitting a triangle by a geodesic
    5. Degenerate polygons and sides that do not close
    6. Self intersection checks on densely sampled and folded boundaries
    7. Random small triangles on every gallery surface
"""

import sys
import numpy as np
import unittest

import verification_utils as vutils

sys.path.append('..')
from geodivpy.surfaces import make_surface, GALLERY
from geodivpy.geodesic import connect, GeodesicSegment, exp_map, metric_norm
from geodivpy import gaussbonnet as gb
from geodivpy.errors import NonSimplePolygon, InvalidParameter


class TestGaussBonnet(unittest.TestCase):

    def __init__(self, *args, **kwargs):
        """
        Define tolerances here for all the tests

        Returns
        -------
        None.

        """
        super(TestGaussBonnet, self).__init__(*args, **kwargs)

        # Integration step of the triangle sides
        self.step_h = 1e-3

        # Curvature integral and angle excess of smooth triangles
        self.atol = 1e-7

        self.plane = make_surface('plane')
        self.sphere = make_surface('sphere')
        self.saddle = make_surface('saddle')

    def _sphere_triangle(self):
        X = (np.pi/2, 0.0)
        Y = (np.pi/2, np.pi/8)
        Z = (np.pi/2 - np.pi/8, 0.0)

        return gb.GeodesicTriangle.from_vertices(self.sphere, X, Y, Z,
                                                 self.step_h)

    def test_plane(self):

        tri = gb.GeodesicTriangle.from_vertices(self.plane, (0.0, 0.0),
                                                (1.0, 0.0), (0.0, 1.0),
                                                self.step_h)

        self.assertLess(abs(gb.curvature_integral(self.plane, tri)), 1e-14)
        self.assertLess(abs(gb.angle_excess(self.plane, tri)), 1e-10)
        self.assertLess(gb.gauss_bonnet_residual(self.plane, tri), 1e-9)

        self.assertLess(np.max(np.abs(tri.angles
                                      - np.array([np.pi/2, np.pi/4,
                                                  np.pi/4]))), 1e-10)

        self.assertLess(np.max(np.abs(tri.side_lengths
                                      - np.array([1.0, np.sqrt(2), 1.0]))),
                        1e-10)

    def test_sphere_lhuilier(self):
        """
        Curvature integral and angle excess against the closed form excess
        from the great circle side lengths.
        """

        tri = self._sphere_triangle()

        sides = [vutils.great_circle_distance(tri.vertices[i],
                                              tri.vertices[(i + 1) % 3])
                 for i in range(3)]

        excess_ref = vutils.lhuilier_excess(*sides)

        self.assertLess(np.max(np.abs(tri.side_lengths - sides)), 1e-8,
                        'Triangle sides are not great circle arcs.')

        integral = gb.curvature_integral(self.sphere, tri)

        self.assertLess(abs(integral - excess_ref), self.atol,
                        'Curvature integral does not match the excess.')

        self.assertLess(abs(gb.angle_excess(self.sphere, tri) - excess_ref),
                        self.atol, 'Angle sum does not match the excess.')

        self.assertLess(gb.gauss_bonnet_residual(self.sphere, tri),
                        self.atol)

        # K = 1, so the absolute integral is the same
        self.assertLess(abs(gb.absolute_curvature_integral(self.sphere, tri)
                            - integral), 1e-10)

    def test_saddle(self):
        """
        Negative excess on the saddle and the mean value of K near the
        origin.
        """

        tri = gb.GeodesicTriangle.from_vertices(self.saddle, (0.0, 0.0),
                                                (0.3, 0.05), (0.05, 0.3),
                                                self.step_h)

        integral = gb.curvature_integral(self.saddle, tri)

        self.assertLess(integral, 0.0)
        self.assertLess(gb.gauss_bonnet_residual(self.saddle, tri),
                        1e-6)

        # small triangle: integral / area approaches K(0, 0) = -4
        d = 0.01
        tri = gb.GeodesicTriangle.from_vertices(self.saddle, (d, 0.0),
                                                (-d/2, d), (-d/2, -d),
                                                1e-4)

        tris = gb.triangulate(tri.boundary_polygon())
        area = gb.integrate_polygon(tris, self.saddle.area_element)

        ratio = gb.curvature_integral(self.saddle, tri) / area

        self.assertLess(abs(ratio + 4.0), 0.04,
                        'Mean curvature of a small triangle is not K(V).')

    def test_additivity(self):
        """
        Splitting XYZ by the geodesic from X to the midpoint M of YZ gives
        integrals that add up.
        """

        tri = self._sphere_triangle()

        XY, YZ, ZX = tri.sides
        X = tri.vertices[0]

        half = 0.5*YZ.length
        YM = GeodesicSegment.from_path(YZ.path.subpath(0.0, half))
        MZ = GeodesicSegment.from_path(YZ.path.subpath(half, YZ.length))

        MX = connect(self.sphere, YM.path.end, X, self.step_h)
        XM = MX.reversed()

        tri1 = gb.GeodesicTriangle(self.sphere, (XY, YM, MX))
        tri2 = gb.GeodesicTriangle(self.sphere, (XM, MZ, ZX))

        total = gb.curvature_integral(self.sphere, tri)
        parts = gb.curvature_integral(self.sphere, tri1) \
            + gb.curvature_integral(self.sphere, tri2)

        self.assertLess(abs(total - parts), 1e-8,
                        'Curvature integral is not additive.')

    def test_degenerate(self):

        with self.assertRaises(NonSimplePolygon):
            tri = gb.GeodesicTriangle.from_vertices(self.plane, (0.0, 0.0),
                                                    (1.0, 0.0), (2.0, 0.0),
                                                    self.step_h)
            gb.curvature_integral(self.plane, tri)

        bow_tie = np.array([[0.0, 0.0], [2.0, 2.0], [2.0, 0.0], [0.0, 1.0]])

        with self.assertRaises(NonSimplePolygon):
            gb.check_simple(bow_tie)

        # sides that do not close
        XY = connect(self.plane, (0.0, 0.0), (1.0, 0.0), self.step_h)
        YZ = connect(self.plane, (1.0, 0.0), (0.0, 1.0), self.step_h)
        ZW = connect(self.plane, (0.0, 1.0), (0.0, 0.1), self.step_h)

        with self.assertRaises(InvalidParameter):
            gb.GeodesicTriangle(self.plane, (XY, YZ, ZW))

    def test_dense_straight_sides(self):
        """
        Densely sampled straight sides hold thousands of collinear edges,
        none of which count as a self intersection.
        """

        tri = gb.GeodesicTriangle.from_vertices(self.plane, (0.0, 0.0),
                                                (0.2, 0.0), (0.0, 0.2),
                                                self.step_h)

        poly, sides = tri.boundary_polygon(spacing=1e-4, return_sides=True)

        self.assertEqual(sides.shape, (poly.shape[0],))
        self.assertEqual(set(sides.tolist()), {0, 1, 2})

        gb.check_simple(poly, sides)

        self.assertLess(abs(gb.curvature_integral(self.plane, tri)), 1e-14)
        self.assertLess(gb.gauss_bonnet_residual(self.plane, tri), 1e-9)

    def test_side_labels_overlap(self):
        """
        Crossings between edges of one side are ignored and collinear edges
        of different sides that overlap are rejected.
        """

        bow_tie = np.array([[0.0, 0.0], [2.0, 2.0], [2.0, 0.0], [0.0, 1.0]])

        # edges 0 and 2 cross
        gb.check_simple(bow_tie, sides=[0, 1, 0, 1])

        with self.assertRaises(NonSimplePolygon):
            gb.check_simple(bow_tie, sides=[0, 1, 2, 3])

        # edge 4 runs back along edge 0
        folded = np.array([[0.0, 0.0], [4.0, 0.0], [4.0, 1.0], [3.0, 1.0],
                           [3.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])

        with self.assertRaises(NonSimplePolygon):
            gb.check_simple(folded)

    def test_gallery_triangles(self):
        """
        Gauss-Bonnet holds on 10 random triangles of diameter at most 0.4
        around the default point of every gallery surface.
        """

        # Seed for repeatability
        rng = np.random.default_rng(1023)

        for key in GALLERY:
            surface = make_surface(key)
            P0 = surface.default_point

            for ind in range(10):
                phi = rng.uniform(0.0, 2*np.pi) + 2*np.pi*np.arange(3)/3 \
                    + rng.uniform(-0.3, 0.3, 3)
                radius = rng.uniform(0.1, 0.2, 3)

                vertices = []
                for angle, rad in zip(phi, radius):
                    d = np.array([np.cos(angle), np.sin(angle)])
                    w = rad*d/metric_norm(surface, P0, d)

                    vertices.append(exp_map(surface, P0, w, self.step_h))

                tri = gb.GeodesicTriangle.from_vertices(surface, *vertices,
                                                        self.step_h)

                with self.subTest(surface=key, triangle=ind):
                    self.assertLess(gb.gauss_bonnet_residual(surface, tri),
                                    1e-6)

    def test_quadrature(self):
        """
        The adaptive rule integrates polynomials and smooth functions over a
        triangulated square.
        """

        square = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])

        tris = gb.triangulate(square)

        self.assertLess(abs(gb.integrate_polygon(tris, lambda u, v : u**2*v)
                            - 1/6), 1e-14)

        val = gb.integrate_polygon(tris, lambda u, v : np.exp(u + v))

        self.assertLess(abs(val - (np.e - 1)**2), 1e-10)

        # Non star shaped polygon falls back to ear clipping
        comb = np.array([[0.0, 0.0], [3.0, 0.0], [3.0, 1.0], [2.9, 1.0],
                         [2.9, 0.1], [0.1, 0.1], [0.1, 1.0], [0.0, 1.0]])

        with self.assertWarns(UserWarning):
            tris = gb.triangulate(comb)

        area = gb.integrate_polygon(tris, lambda u, v : np.ones_like(u))

        self.assertLess(abs(area - (0.3 + 2*0.1*0.9)), 1e-12)


if __name__ == '__main__':
    unittest.main()
