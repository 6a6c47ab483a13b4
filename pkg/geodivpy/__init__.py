"""
A Python module for the angle division dynamics on geodesic triangles of
regular surfaces.

Notes
-----

Two geodesic rays leave a vertex V at the angle `mu`. Geodesic segments are
shot alternately between the rays, each at a fraction `1/(1 + p)` or
`1/(1 + q)` of the angle measured at the previous point. The package
integrates the construction numerically, compares the limits of the angle
sequences with their closed forms, checks the Gauss-Bonnet recurrences along
the way and uses the limits to classify surface points as elliptic,
hyperbolic or parabolic.
"""


from .surfaces import ParametricSurface
from .solvers import RootSolver
from .scheme import TriangleConfig, DivisionFunctions

# Explicit modifications to '__all__'

# things imported here that should be in __all__
add_to_all = ['ParametricSurface', 'RootSolver', 'TriangleConfig',
              'DivisionFunctions']

# files that have imported contents here, so should not be in __all__
remove_from_all = ['solvers',
                   '__main__'
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
