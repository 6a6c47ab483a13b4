"""
CSV writers for iteration traces and classification reports.

Floats are written with 17 significant digits so that every double is
restored exactly when read back.
"""

import csv
import sys
from os.path import exists

import numpy as np

from ..scheme import TRACE_COLUMNS
from ..classifier import REPORT_COLUMNS


def format_value(value):
    """
    Text of a CSV cell.
    """
    if isinstance(value, (bool, np.bool_)):
        return 'true' if value else 'false'

    if isinstance(value, (int, np.integer)):
        return str(int(value))

    if isinstance(value, (float, np.floating)):
        return '%.17g' % value

    return '' if value is None else str(value)


def _write(rows, header, fname):

    if fname is None:
        writer = csv.writer(sys.stdout, lineterminator='\n')
        writer.writerow(header)
        writer.writerows(rows)
        return

    with open(fname, 'w', newline='') as file:
        writer = csv.writer(file, lineterminator='\n')
        writer.writerow(header)
        writer.writerows(rows)


def trace_rows(trace):
    """
    Formatted cells of a trace, the index column as an integer.
    """
    return [[str(int(row[0]))] + [format_value(float(x)) for x in row[1:]]
            for row in trace.data]


def write_trace_csv(trace, fname=None):
    """
    Write an IterationTrace with the header `TRACE_COLUMNS`.

    Parameters
    ----------
    trace : geodivpy.scheme.IterationTrace
        Trace to write.
    fname : str or None, optional
        Output path, standard output if None. The default is None.

    Returns
    -------
    None.

    """
    _write(trace_rows(trace), TRACE_COLUMNS, fname)


def write_report_csv(report, fname=None):
    """
    Write a ClassificationReport with the header `REPORT_COLUMNS`.
    """
    rows = [[format_value(x) for x in row.values()] for row in report.rows]

    _write(rows, REPORT_COLUMNS, fname)


def trace_row_appender(fname, new_file=False):
    """
    Callback that appends every trace row to a CSV file while a run is in
    progress.

    Parameters
    ----------
    fname : str
        File to append to. The header is written if the file does not exist.
    new_file : bool, optional
        Replace an existing file with the header and the first row on the
        first call. The default is False.

    Returns
    -------
    function
        Callback for the 'callback' setting of TriangleConfig.

    Examples
    --------
    Monitor a long run with

    >>> config = TriangleConfig.from_angle(surface, V, mu, a1,
    ...              config={'callback': trace_row_appender('live.csv')})

    """

    def callback(row):
        nonlocal new_file

        write_header = new_file or not exists(fname)
        mode = 'w' if new_file else 'a'
        new_file = False

        with open(fname, mode, newline='') as file:
            writer = csv.writer(file, lineterminator='\n')

            if write_header:
                writer.writerow(TRACE_COLUMNS)

            writer.writerow([str(int(row['k']))]
                            + [format_value(float(row[c]))
                               for c in TRACE_COLUMNS[1:]])

    return callback
