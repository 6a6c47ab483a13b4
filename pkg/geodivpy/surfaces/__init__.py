"""
Parametric surfaces and the built-in gallery of test surfaces.

Gallery surfaces ship with closed form first and second chart derivatives.
User charts are supported through `from_function`, which evaluates
derivatives with central finite differences.
"""
from .parametric_surface import (ParametricSurface, SwappedSurface,
                                 ChartSurface, FundamentalForms,
                                 CurvatureData, ChristoffelSymbols,
                                 from_function)

from .plane import Plane
from .sphere import Sphere
from .cylinder import Cylinder
from .torus import Torus
from .saddle import Saddle
from .ellipsoid import Ellipsoid
from .monkey_saddle import MonkeySaddle

from ..errors import InvalidParameter

# Gallery identifiers in listing order
GALLERY = {'plane': Plane,
           'sphere': Sphere,
           'cylinder': Cylinder,
           'torus': Torus,
           'saddle': Saddle,
           'ellipsoid': Ellipsoid,
           'monkey-saddle': MonkeySaddle}


def make_surface(surface_id, derivative_mode='analytic', h_fd=1e-5,
                 **params):
    """
    Construct a gallery surface from its identifier.

    Parameters
    ----------
    surface_id : str
        One of the keys of `GALLERY`.
    derivative_mode : {'analytic', 'finite-difference'}, optional
        The default is 'analytic'.
    h_fd : float, optional
        Finite difference step. The default is 1e-5.
    **params : float
        Shape parameters of the surface. Parameters with value None are
        ignored so that unset command line options keep their defaults.

    Returns
    -------
    ParametricSurface
        The gallery surface.

    Raises
    ------
    InvalidParameter
        For an unknown identifier or a parameter that the surface does not
        take.

    """

    if surface_id not in GALLERY:
        raise InvalidParameter('Unknown gallery surface "{}", choose from '
                               '{}.'.format(surface_id, list(GALLERY)))

    surface_class = GALLERY[surface_id]

    params = {k: v for k, v in params.items() if v is not None}

    unknown = set(params) - set(surface_class.parameter_defaults)

    if len(unknown) > 0:
        raise InvalidParameter('Surface "{}" does not take parameters {}, '
                               'it takes {}.'.format(
                                   surface_id, sorted(unknown),
                                   sorted(surface_class.parameter_defaults)))

    return surface_class(derivative_mode=derivative_mode, h_fd=h_fd,
                         **params)


# Explicit modifications to '__all__'

# things imported here that should be in __all__
add_to_all = ['ParametricSurface', 'SwappedSurface', 'ChartSurface',
              'FundamentalForms', 'CurvatureData', 'ChristoffelSymbols',
              'from_function',
              'Cylinder',
              'Ellipsoid',
              'MonkeySaddle',
              'Plane',
              'Saddle',
              'Sphere',
              'Torus',
              'GALLERY',
              'make_surface'
              ]

# files that have imported contents here, so should not be in __all__
remove_from_all = ['parametric_surface',
                   'plane',
                   'sphere',
                   'cylinder',
                   'torus',
                   'saddle',
                   'ellipsoid',
                   'monkey_saddle'
                   ]

# Generate a list of submodules
import os
from pathlib import Path

search_path = os.path.dirname(os.path.abspath(__file__))

__all__ = [Path(f).stem for f in os.listdir(search_path)]

# remove anything that starts with '_'
__all__ = [f for f in __all__ if f[0] != '_']

__all__ += add_to_all

__all__ = [f for f in __all__ if not f in remove_from_all]
