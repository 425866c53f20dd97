''' delta heat map of a field over the (n, m) grid '''
import logging

from cmfield.commands.common import add_source, constant_for, load_lattice
from cmfield.heatmap import Heatmap
from cmfield.reports import report_file, write_csv, write_json, write_xls_report

logger = logging.getLogger(__name__)

NAME = "heatmap"
HELP = "delta(n, m) over an N x M grid, written as CSV or JSON"


def add_arguments(parser):
    add_source(parser)
    parser.add_argument("--n", type=int, default=30, help="grid width N")
    parser.add_argument("--m", type=int, default=30, help="grid height M")
    parser.add_argument("--const", help="builtin constant name, a/b or decimal; the preset limit by default")
    parser.add_argument("--out", choices=["csv", "json"], default="csv")
    parser.add_argument("--path", help="output file, a slugified name in the reports directory by default")
    parser.add_argument("--xlsx", action="store_true", help="also write an xlsx workbook")


def run(args):
    definition, lattice = load_lattice(args.source)
    L = constant_for(args.const, definition)
    heatmap = Heatmap(lattice, args.n, args.m, L)
    path = args.path or report_file("heatmap", "%s-%dx%d" % (definition.name, args.n, args.m), args.out)
    if args.out == "csv":
        write_csv(heatmap.to_frame(), path)
    else:
        write_json(heatmap.to_document(definition), path)
    if args.xlsx:
        summary = [("field", definition.name), ("constant", L.name), ("N", args.n), ("M", args.m)]
        write_xls_report({"delta": heatmap.to_frame(), "rows": heatmap.row_summary()},
                         report_file("heatmap", "%s-%dx%d" % (definition.name, args.n, args.m), "xlsx"),
                         summary)
    for line in heatmap.error_log:
        logger.warning(line)
    print(path)
    return 0
