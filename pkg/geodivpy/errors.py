"""
Exceptions raised by geodivpy.

All library errors derive from `GeodivError`. Errors that come from the
geometry of a configuration (a shot that misses, a chart that is left, a
degenerate triangle) also derive from `GeometricFailure` so that callers such
as the command line interface can treat them as one category.
"""


class GeodivError(Exception):
    """
    Base class of all geodivpy errors.
    """


class InvalidParameter(GeodivError, ValueError):
    """
    A parameter is outside of its admissible range.
    """


class GeometricFailure(GeodivError):
    """
    Base class of errors caused by the geometry of a configuration.
    """


class OutOfDomain(GeometricFailure, ValueError):
    """
    A chart point lies outside of the open domain rectangle.
    """


class DegenerateMetric(GeometricFailure):
    """
    The first fundamental form is (numerically) singular, `EG - F**2 <= 1e-14`.
    """


class ChartBoundaryExceeded(GeometricFailure):
    """
    A geodesic left the chart domain while being integrated.

    Parameters
    ----------
    message : str
        Description of the failure.
    path : geodivpy.geodesic.GeodesicPath or None, optional
        Part of the geodesic that was integrated inside of the domain.
        The default is None.
    """

    def __init__(self, message, path=None):
        super().__init__(message)
        self.path = path


class ZeroVector(GeometricFailure):
    """
    A tangent vector has metric norm below 1e-14 where a direction is needed.
    """


class NoIntersection(GeometricFailure):
    """
    A shot geodesic ended without crossing its target segment.
    """


class TangentialIntersection(GeometricFailure):
    """
    A crossing was found, but the crossing angle is too close to 0 or pi.
    """


class EndpointHit(GeometricFailure):
    """
    A crossing lies on an endpoint of the target segment instead of its
    interior.
    """


class DivisionDomain(GeometricFailure):
    """
    A measured angle that is to be divided does not lie in (0, pi).
    """


class NonSimplePolygon(GeometricFailure):
    """
    The chart space boundary of a geodesic triangle intersects itself or
    encloses no area.
    """


class NoConvergence(GeodivError):
    """
    An iteration reached its maximum number of iterations.

    Parameters
    ----------
    message : str
        Description of the failure.
    trace : geodivpy.scheme.IterationTrace or None, optional
        Iteration history up to the point of failure.
        The default is None.
    """

    def __init__(self, message, trace=None):
        super().__init__(message)
        self.trace = trace


class InconclusiveClassification(GeodivError):
    """
    A limit pair fits none of the elliptic / hyperbolic / parabolic branches.

    Parameters
    ----------
    message : str
        Description of the failure.
    limit_pair : tuple of float or None, optional
        The `(alpha_inf, beta_inf)` pair that could not be classified.
        The default is None.
    """

    def __init__(self, message, limit_pair=None):
        super().__init__(message)
        self.limit_pair = limit_pair
