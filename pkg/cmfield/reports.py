''' Report files: slugified names under the reports directory, csv, json and xlsx '''
import json
import os
import logging

from slugify import slugify

from cmfield.config import reports_path

logger = logging.getLogger(__name__)


def report_file(kind, name, extension, directory=None):
    filename = "{kind}-{name}.{ext}".format(kind=kind, name=slugify(str(name)), ext=extension)
    return os.path.join(directory or reports_path(), filename)


def _plain(value):
    ''' json fallback for big ints, Fractions and mpmath numbers '''
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        if value.denominator == 1:
            return str(value.numerator)
        return "{}/{}".format(value.numerator, value.denominator)
    return str(value)


def dumps(document):
    return json.dumps(document, sort_keys=True, indent=2, default=_plain)


def write_json(document, path):
    with open(path, "w") as fh:
        fh.write(dumps(document))
        fh.write("\n")
    logger.info("wrote %s", path)
    return path


def write_csv(df, path):
    df.to_csv(path, index=False)
    logger.info("wrote %s", path)
    return path


def _df_to_ws(df, wb, title):
    from openpyxl.utils.dataframe import dataframe_to_rows
    ws = wb.create_sheet(title=title)
    # big integers would lose digits as excel numbers
    for row in dataframe_to_rows(df.astype(str), index=False, header=True):
        ws.append(row)
    return ws


def write_xls_report(frames, path, summary=None):
    ''' one sheet per DataFrame, plus an optional summary sheet of (key, value) pairs '''
    import openpyxl as xls
    wb = xls.Workbook(write_only=True)
    if summary:
        summary_ws = wb.create_sheet(title="summary")
        for key, value in summary:
            summary_ws.append([key, str(value)])
    for title, df in frames.items():
        _df_to_ws(df, wb, title)
    wb.save(path)
    logger.info("wrote %s", path)
    return path
