"""
Result files: atomic CSV writes and log-log SVG figures
"""
import csv
import io
import logging
import math
import os
import tempfile

import matplotlib

matplotlib.use('Agg')
import matplotlib.pyplot as plt  # noqa: E402

from .errors import OutputError

logger = logging.getLogger(__name__)

FLOAT_FORMAT = '.17g'


def format_value(value):
    """Serialize one CSV cell; floats keep 17 significant digits, None is empty"""
    if value is None:
        return ''
    if isinstance(value, bool):
        return 'true' if value else 'false'
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float) or hasattr(value, 'dtype'):
        number = float(value)
        if math.isnan(number):
            return 'nan'
        return format(number, FLOAT_FORMAT)
    return str(value)


def _replace_atomically(path: str, payload: bytes):
    directory = os.path.dirname(os.path.abspath(path))
    try:
        os.makedirs(directory, exist_ok=True)
        handle, temporary = tempfile.mkstemp(prefix='.tmp-', dir=directory)
        try:
            with os.fdopen(handle, 'wb') as stream:
                stream.write(payload)
            os.replace(temporary, path)
        except BaseException:
            if os.path.exists(temporary):
                os.unlink(temporary)
            raise
    except OSError as error:
        logger.error(f"Failed to write {path}: {error}")
        raise OutputError(f"cannot write {path}: {error.strerror or error}", path=path)


def write_csv_atomic(path: str, header, rows, comments=()):
    """
    Write a CSV with a header row through a temporary file and os.replace

    Args:
        path: Destination file
        header: Column names
        rows: Iterable of row tuples, formatted with format_value
        comments: Trailing lines written as '# text'

    Returns:
        str: The destination path

    Raises:
        OutputError: If the directory or file cannot be written
    """
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator='\n')
    writer.writerow(header)
    count = 0
    for row in rows:
        writer.writerow([format_value(value) for value in row])
        count += 1
    for comment in comments:
        buffer.write(f'# {comment}\n')

    _replace_atomically(path, buffer.getvalue().encode('utf-8'))
    logger.info(f"Wrote {count} rows to {path}")
    return path


def write_loglog_svg(path: str, series, title: str = None, xlabel: str = '|xi|', ylabel: str = '|u_hat|',
                     window=None):
    """
    Log-log line plot of one or more (label, x, y) series as SVG

    Non-positive samples are dropped. Output is byte-stable for equal input.

    Raises:
        OutputError: If the file cannot be written
    """
    matplotlib.rcParams['svg.hashsalt'] = 'cascade-lab'
    figure, axes = plt.subplots(figsize=(6.4, 4.8))
    try:
        for label, x, y in series:
            points = [(a, b) for a, b in zip(x, y) if a > 0 and b > 0]
            if not points:
                continue
            xs, ys = zip(*points)
            axes.loglog(xs, ys, label=label, linewidth=1.0)
        if window is not None:
            for edge in window:
                axes.axvline(edge, color='grey', linestyle=':', linewidth=0.8)
        axes.set_xlabel(xlabel)
        axes.set_ylabel(ylabel)
        if title:
            axes.set_title(title)
        if axes.get_legend_handles_labels()[0]:
            axes.legend()

        buffer = io.BytesIO()
        figure.savefig(buffer, format='svg', metadata={'Date': None})
    finally:
        plt.close(figure)

    _replace_atomically(path, buffer.getvalue())
    logger.info(f"Wrote figure {path}")
    return path
