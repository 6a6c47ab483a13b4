"""
Experiment configuration and the flat `key = value` configuration file.

Keys are the long command line flag names with dashes replaced by
underscores. Values are typed with `yaml.safe_load`, so numbers, booleans,
quoted or bare strings and flow lists such as `[0.0, 1.0]` are accepted.

See Also
--------
geodivpy.cli :
    Command line interface reading these files.
"""

from dataclasses import dataclass, fields, asdict

import numpy as np
import yaml

from ..errors import InvalidParameter

# Shape parameter keys of the gallery surfaces
SHAPE_KEYS = ('radius', 'R', 'r', 'a', 'b', 'c')

FLOAT_KEYS = ('u', 'v', 'mu', 'theta', 'a1', 'alpha1', 'p_const',
              'q_const', 'step_h', 'conv_tol', 'ray_length', 'h_fd',
              'decision_tol') + SHAPE_KEYS

INT_KEYS = ('max_iters', 'jobs')


@dataclass
class ExperimentConfig:
    """
    Settings of one command line experiment.

    Attributes
    ----------
    surface : str
        Gallery surface identifier.
    radius, R, r, a, b, c : float or None
        Shape parameters, None for the surface default.
    derivative_mode : str
        'analytic' or 'finite-difference'.
    h_fd : float
        Finite difference step.
    u, v : float or None
        Vertex V, the surface default point if None.
    mu : float or None
        Angle at V.
    theta : float
        Angle of ray L_A from the chart direction `r_u`.
    a1 : float
        Arc length of A_1.
    alpha1 : float or None
        Initial angle at A_1, `(pi - mu)/2` if None.
    pq : str or None
        Named division functions ('bisection', 'corollary2', 'gauss').
    p_const, q_const : float or None
        Constant division functions, take precedence over `pq`.
    step_h : float or None
        Integration step, derived from `a1` if None.
    max_iters : int
        Maximum number of iterations.
    conv_tol : float
        Convergence tolerance.
    ray_length : float or None
        Length of ray L_B.
    mode : str
        Classification mode, 'theoretical' or 'empirical'.
    decision_tol : float or None
        Classification tolerance.
    vertices : list of float or None
        Gauss-Bonnet check vertices `[u1, v1, u2, v2, u3, v3]`.
    jobs : int
        Worker processes of batch commands.
    output : str or None
        Output CSV path, standard output if None.
    """
    surface: str = 'plane'
    radius: float = None
    R: float = None
    r: float = None
    a: float = None
    b: float = None
    c: float = None
    derivative_mode: str = 'analytic'
    h_fd: float = 1e-5
    u: float = None
    v: float = None
    mu: float = None
    theta: float = 0.0
    a1: float = 0.2
    alpha1: float = None
    pq: str = None
    p_const: float = None
    q_const: float = None
    step_h: float = None
    max_iters: int = 200
    conv_tol: float = 1e-10
    ray_length: float = None
    mode: str = 'theoretical'
    decision_tol: float = None
    vertices: list = None
    jobs: int = 1
    output: str = None

    @classmethod
    def keys(cls):
        return [f.name for f in fields(cls)]

    @classmethod
    def from_dict(cls, values):
        """
        Configuration from a dictionary, converting numeric types.

        Raises
        ------
        InvalidParameter
            For unknown keys or values of the wrong type.
        """
        known = cls.keys()
        kwargs = {}

        for key, value in values.items():
            if key not in known:
                raise InvalidParameter('Unknown configuration key "{}".'\
                                       .format(key))
            kwargs[key] = _convert(key, value)

        config = cls(**kwargs)
        config.validate()

        return config

    def merged(self, overrides):
        """
        Copy with the non-None values of `overrides` replacing settings.
        """
        values = asdict(self)
        values.update({k: v for k, v in overrides.items() if v is not None})

        return ExperimentConfig.from_dict(values)

    def validate(self):
        """
        Check ranges that do not need a surface.
        """

        if self.mu is not None and not 0 < self.mu < np.pi:
            raise InvalidParameter('mu={} is outside of (0, pi).'.format(
                                   self.mu))

        if self.alpha1 is not None and not 0 < self.alpha1 < np.pi:
            raise InvalidParameter('alpha1={} is outside of (0, pi).'.format(
                                   self.alpha1))

        if not self.a1 > 0:
            raise InvalidParameter('a1 must be positive.')

        if self.mode not in ('theoretical', 'empirical'):
            raise InvalidParameter('mode must be "theoretical" or '
                                   '"empirical".')

        if self.vertices is not None and len(self.vertices) != 6:
            raise InvalidParameter('vertices needs 6 values '
                                   '[u1, v1, u2, v2, u3, v3].')

        if (self.p_const is None) != (self.q_const is None):
            raise InvalidParameter('p_const and q_const must be given '
                                   'together.')

    def shape_parameters(self):
        return {k: getattr(self, k) for k in SHAPE_KEYS
                if getattr(self, k) is not None}

    def make_surface(self):
        """
        Gallery surface of this configuration.
        """
        from ..surfaces import make_surface

        return make_surface(self.surface,
                            derivative_mode=self.derivative_mode,
                            h_fd=self.h_fd, **self.shape_parameters())

    def vertex(self, surface):
        """
        Vertex V, the surface default point for missing coordinates.
        """
        u = surface.default_point[0] if self.u is None else self.u
        v = surface.default_point[1] if self.v is None else self.v

        return (u, v)

    def make_divisions(self, surface):
        """
        Division functions: constants if given, else the named pair, else
        bisection.
        """
        from ..scheme import DivisionFunctions, make_divisions

        if self.p_const is not None:
            return DivisionFunctions.constant(self.p_const, self.q_const)

        return make_divisions(self.pq or 'bisection', surface)

    def triangle_settings(self, callback=None):
        """
        TriangleConfig settings dictionary.
        """
        return {'step_h': self.step_h, 'max_iters': self.max_iters,
                'conv_tol': self.conv_tol, 'ray_length': self.ray_length,
                'callback': callback}

    def triangle_config(self, surface, callback=None):
        """
        TriangleConfig of this experiment, `callback` receives every trace
        row of a run.

        Raises
        ------
        InvalidParameter
            If `mu` is missing or any TriangleConfig check fails.
        """
        from ..scheme import TriangleConfig

        if self.mu is None:
            raise InvalidParameter('mu is required.')

        return TriangleConfig.from_angle(surface, self.vertex(surface),
                                         self.mu, self.a1,
                                         alpha1_hat=self.alpha1,
                                         theta=self.theta,
                                         config=self.triangle_settings(callback))


def _convert(key, value):

    if value is None:
        return None

    try:
        if key in FLOAT_KEYS:
            return float(value)
        if key in INT_KEYS:
            if float(value) != int(value):
                raise ValueError
            return int(value)
        if key == 'vertices':
            return [float(x) for x in value]
    except (TypeError, ValueError) as err:
        raise InvalidParameter('Invalid value {!r} for "{}".'.format(
                               value, key)) from err

    return value


def parse_config_text(text):
    """
    Dictionary of the `key = value` lines of a configuration text.

    Parameters
    ----------
    text : str
        Configuration text. Blank lines and lines starting with `#` are
        ignored, as is anything after ` #` on a line.

    Returns
    -------
    dict
        Raw values typed by `yaml.safe_load`.

    """
    values = {}

    for lineno, line in enumerate(text.splitlines(), start=1):

        line = line.split(' #')[0].strip()

        if len(line) == 0 or line.startswith('#'):
            continue

        key, sep, value = line.partition('=')

        if len(sep) == 0:
            raise InvalidParameter('Line {} is not of the form key = value: '
                                   '{!r}'.format(lineno, line))

        key = key.strip().replace('-', '_')

        try:
            values[key] = yaml.safe_load(value.strip())
        except yaml.YAMLError as err:
            raise InvalidParameter('Cannot parse the value of "{}" on line '
                                   '{}.'.format(key, lineno)) from err

    return values


def read_config_file(fname):
    """
    Read an ExperimentConfig from a `key = value` file.

    Parameters
    ----------
    fname : str
        Path of the file.

    Returns
    -------
    ExperimentConfig
        The validated configuration.

    """
    with open(fname, 'r') as file:
        text = file.read()

    return ExperimentConfig.from_dict(parse_config_text(text))


def format_config(config):
    """
    Configuration text of the settings that are not None.
    """
    lines = ['# geodivpy experiment configuration']

    for key, value in asdict(config).items():
        if value is None:
            continue
        lines.append('{} = {!r}'.format(key, value))

    return '\n'.join(lines) + '\n'


def write_config_file(config, fname):
    """
    Write an ExperimentConfig so that `read_config_file` restores it
    exactly.
    """
    with open(fname, 'w') as file:
        file.write(format_config(config))
