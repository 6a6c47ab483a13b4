"""
Command line experiments.

Subcommands
-----------
run
    Iterate the angle division and write the trace CSV.
classify
    Classify a surface point from the limits of the dynamics.
gbcheck
    Gauss-Bonnet check of a geodesic triangle given by its vertices.
gallery
    List the gallery surfaces.
crossval
    Cross validate the classification on the standard gallery points.

Exit codes are 0 on success, 1 on geometric, input or IO failures, 2 if a
run does not converge, 3 for an inconclusive classification and 4 if a
Gauss-Bonnet check fails.
"""

import argparse
import logging
import sys

import numpy as np
from tabulate import tabulate

from .errors import (GeodivError, NoConvergence, InconclusiveClassification,
                     InvalidParameter)
from .surfaces import GALLERY, make_surface
from .utils.config import (ExperimentConfig, read_config_file,
                           write_config_file)
from .utils.csv_output import (write_trace_csv, write_report_csv,
                                trace_row_appender)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_NO_CONVERGENCE = 2
EXIT_INCONCLUSIVE = 3
EXIT_GAUSS_BONNET = 4

# Residual accepted by gbcheck
GB_TOL = 1e-5

# Integration step of gbcheck if none is given
GB_STEP_H = 2.5e-4


class _Parser(argparse.ArgumentParser):
    """
    Argument parser that exits with the failure code on usage errors so
    that exit code 2 stays reserved for non-convergence.
    """

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_FAILURE, '{}: error: {}\n'.format(self.prog, message))


def _common_parser():

    parser = argparse.ArgumentParser(add_help=False, allow_abbrev=False)

    parser.add_argument('--config', help='key = value configuration file, '
                        'flags override its values')
    parser.add_argument('--write-config', metavar='PATH',
                        help='write the effective configuration to PATH')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='INFO logging, repeat for DEBUG')

    surf = parser.add_argument_group('surface')
    surf.add_argument('--surface', help='gallery surface identifier')
    for key in ('radius', 'R', 'r', 'a', 'b', 'c'):
        surf.add_argument('--' + key, type=float, dest=key,
                          help='shape parameter ' + key)
    surf.add_argument('--derivative-mode',
                      choices=('analytic', 'finite-difference'))
    surf.add_argument('--h-fd', type=float)

    point = parser.add_argument_group('vertex')
    point.add_argument('--u', type=float)
    point.add_argument('--v', type=float)
    point.add_argument('--mu', type=float, help='angle at V in radians')

    parser.add_argument('--output', '-o', help='output CSV path')

    return parser


def build_parser():
    """
    Argument parser of the `geodivpy` command.
    """

    common = _common_parser()

    parser = _Parser(prog='geodivpy', allow_abbrev=False,
                     description='Angle division dynamics on geodesic '
                                 'triangles.')

    sub = parser.add_subparsers(dest='command', required=True,
                                parser_class=_Parser)

    run = sub.add_parser('run', parents=[common], allow_abbrev=False,
                         help='iterate the angle division')
    run.add_argument('--theta', type=float,
                     help='angle of ray L_A from r_u')
    run.add_argument('--a1', type=float, help='arc length of A_1')
    run.add_argument('--alpha1', type=float, help='initial angle at A_1')
    run.add_argument('--pq', choices=('bisection', 'corollary2', 'gauss'))
    run.add_argument('--p-const', type=float)
    run.add_argument('--q-const', type=float)
    run.add_argument('--step-h', type=float)
    run.add_argument('--max-iters', type=int)
    run.add_argument('--conv-tol', type=float)
    run.add_argument('--ray-length', type=float)

    classify = sub.add_parser('classify', parents=[common],
                              allow_abbrev=False,
                              help='classify a point')
    classify.add_argument('--mode', choices=('theoretical', 'empirical'))
    classify.add_argument('--decision-tol', type=float)
    classify.add_argument('--a1', type=float)
    classify.add_argument('--step-h', type=float)

    gb = sub.add_parser('gbcheck', parents=[common], allow_abbrev=False,
                        help='Gauss-Bonnet check of a triangle')
    gb.add_argument('--vertices', type=float, nargs=6,
                    metavar=('U1', 'V1', 'U2', 'V2', 'U3', 'V3'))
    gb.add_argument('--step-h', type=float)

    sub.add_parser('gallery', parents=[common], allow_abbrev=False,
                   help='list gallery surfaces')

    cross = sub.add_parser('crossval', parents=[common], allow_abbrev=False,
                           help='cross validate the classification')
    cross.add_argument('--jobs', type=int)
    cross.add_argument('--mode', choices=('theoretical', 'empirical'))
    cross.add_argument('--a1', type=float)
    cross.add_argument('--step-h', type=float)

    return parser


# argparse destinations that are not experiment settings
_CONTROL_KEYS = ('command', 'config', 'write_config', 'verbose')


def load_config(args):
    """
    ExperimentConfig from the configuration file and the parsed flags.
    """

    if args.config is not None:
        config = read_config_file(args.config)
    else:
        config = ExperimentConfig()

    flags = {k: v for k, v in vars(args).items() if k not in _CONTROL_KEYS}

    config = config.merged(flags)

    if args.write_config is not None:
        write_config_file(config, args.write_config)

    return config


def _summary(rows, headers):
    return tabulate(rows, headers=headers, floatfmt='.15g')


def cmd_run(config):
    """
    Run the angle division and write the trace.
    """
    from .scheme import run, limit_gap

    surface = config.make_surface()
    divisions = config.make_divisions(surface)

    # rows reach the output file while the run is in progress
    callback = None
    if config.output is not None:
        callback = trace_row_appender(config.output, new_file=True)

    tri_config = config.triangle_config(surface, callback=callback)

    theory = tri_config.theoretical_limits(divisions)

    try:
        trace = run(tri_config, divisions)
        code = EXIT_OK
    except NoConvergence as err:
        print('error: {}'.format(err), file=sys.stderr)
        trace = err.trace
        code = EXIT_NO_CONVERGENCE

    if config.output is None:
        write_trace_csv(trace)

    emp = trace.limit_pair
    out = sys.stdout if config.output is not None else sys.stderr

    print(_summary([['alpha_inf', theory.alpha_inf, emp.alpha_inf,
                     abs(theory.alpha_inf - emp.alpha_inf)],
                    ['beta_inf', theory.beta_inf, emp.beta_inf,
                     abs(theory.beta_inf - emp.beta_inf)]],
                   ['limit', 'theoretical', 'empirical', 'gap']), file=out)

    logger.info('Limit gap %.3e after %d rows', limit_gap(trace, divisions),
                trace.n_rows)

    return code


def cmd_classify(config):
    """
    Classify the vertex and print its report line.
    """
    from .classifier import classify_point, decide, ClassificationReport

    if config.mu is None:
        raise InvalidParameter('mu is required.')

    surface = config.make_surface()
    V = config.vertex(surface)

    template = {'a1': config.a1, 'step_h': config.step_h,
                'max_iters': config.max_iters, 'conv_tol': config.conv_tol}

    row = classify_point(config.surface, surface, V, config.mu,
                         template=template,
                         empirical=config.mode == 'empirical')

    if row.exception is None and config.decision_tol is not None:
        # decision with the requested tolerance
        pair = (row.alpha_inf_emp, row.beta_inf_emp) \
            if config.mode == 'empirical' \
            else (row.alpha_inf_theory, row.beta_inf_theory)
        try:
            row.kind_limits = decide(pair, config.mu, config.decision_tol)
            row.agree = row.kind_limits == row.kind_oracle
        except InconclusiveClassification as err:
            row.exception = err
            row.error = str(err)

    write_report_csv(ClassificationReport([row]), config.output)

    if row.exception is not None:
        print('error: {}'.format(row.error), file=sys.stderr)
        if isinstance(row.exception, InconclusiveClassification):
            return EXIT_INCONCLUSIVE
        if isinstance(row.exception, NoConvergence):
            return EXIT_NO_CONVERGENCE
        return EXIT_FAILURE

    return EXIT_OK


def cmd_gbcheck(config):
    """
    Gauss-Bonnet check of the triangle with the configured vertices.
    """
    from .gaussbonnet import (GeodesicTriangle, curvature_integral,
                              angle_excess)

    if config.vertices is None:
        raise InvalidParameter('gbcheck needs --vertices U1 V1 U2 V2 U3 V3.')

    surface = config.make_surface()
    X, Y, Z = (tuple(config.vertices[2*i:2*i + 2]) for i in range(3))

    step_h = GB_STEP_H if config.step_h is None else config.step_h

    triangle = GeodesicTriangle.from_vertices(surface, X, Y, Z, step_h)

    integral = curvature_integral(surface, triangle)
    excess = angle_excess(surface, triangle)
    residual = abs(integral - excess)

    print(_summary([[integral, excess, residual]],
                   ['curvature_integral', 'angle_excess', 'residual']))

    if residual < GB_TOL:
        return EXIT_OK

    print('error: Gauss-Bonnet residual {:.3e} exceeds {:.0e}'.format(
          residual, GB_TOL), file=sys.stderr)

    return EXIT_GAUSS_BONNET


def cmd_gallery(surface_id=None):
    """
    Print the gallery, or the details of one surface.
    """

    if surface_id is None:
        rows = []
        for key, surface_class in GALLERY.items():
            params = ', '.join('{}={:g}'.format(k, v) for k, v in
                               surface_class.parameter_defaults.items())
            rows.append([key, params or '-', surface_class.curvature_character])

        print(tabulate(rows, tablefmt='plain'))

        return EXIT_OK

    surface = make_surface(surface_id)
    info = surface.describe()

    (u_min, u_max), (v_min, v_max) = info['domain']

    rows = [['id', info['id']],
            ['parameters', ', '.join('{}={:g}'.format(k, v) for k, v in
                                     info['parameters'].items()) or '-'],
            ['domain', 'u in ({:.6g}, {:.6g}), v in ({:.6g}, {:.6g})'.format(
                       u_min, u_max, v_min, v_max)],
            ['default point', '({:.6g}, {:.6g})'.format(
                              *surface.default_point)],
            ['curvature', info['curvature']]]

    print(tabulate(rows, tablefmt='plain'))

    return EXIT_OK


def cmd_crossval(config):
    """
    Cross validation on the gallery points, report CSV and agreement.
    """
    from .classifier import cross_validate, gallery_points

    mu = np.pi/2 if config.mu is None else config.mu

    template = {'a1': config.a1, 'step_h': config.step_h,
                'max_iters': config.max_iters, 'conv_tol': config.conv_tol}

    report = cross_validate(None, gallery_points(), mu, template=template,
                            empirical=config.mode == 'empirical',
                            jobs=config.jobs)

    write_report_csv(report, config.output)

    out = sys.stdout if config.output is not None else sys.stderr
    print('agreement: {:.1f}% of {} points'.format(100*report.agreement,
                                                  len(report)), file=out)

    for row in report.failures:
        print('error: {} {}'.format(row.surface, row.error), file=sys.stderr)

    return EXIT_OK if report.agreement == 1.0 else EXIT_FAILURE


def main(argv=None):
    """
    Entry point of the command line interface.

    Parameters
    ----------
    argv : list of str or None, optional
        Arguments without the program name, `sys.argv[1:]` if None.
        The default is None.

    Returns
    -------
    int
        Exit code.

    """

    parser = build_parser()
    args = parser.parse_args(argv)

    level = [logging.WARNING, logging.INFO, logging.DEBUG][min(args.verbose,
                                                               2)]
    logging.basicConfig(level=level, stream=sys.stderr,
                        format='%(levelname)s %(name)s: %(message)s')

    try:
        if args.command == 'gallery':
            if args.write_config is not None or args.config is not None:
                load_config(args)
            return cmd_gallery(args.surface)

        config = load_config(args)

        if args.command == 'run':
            return cmd_run(config)
        if args.command == 'classify':
            return cmd_classify(config)
        if args.command == 'gbcheck':
            return cmd_gbcheck(config)
        if args.command == 'crossval':
            return cmd_crossval(config)

    except NoConvergence as err:
        print('error: {}'.format(err), file=sys.stderr)
        return EXIT_NO_CONVERGENCE

    except InconclusiveClassification as err:
        print('error: {}'.format(err), file=sys.stderr)
        return EXIT_INCONCLUSIVE

    except (GeodivError, OSError) as err:
        print('error: {}: {}'.format(type(err).__name__, err),
              file=sys.stderr)
        return EXIT_FAILURE

    return EXIT_FAILURE
