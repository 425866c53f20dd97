''' Convergent tables of a polynomial continued fraction or of one row of a field '''
import logging

from cmfield.cf import CFSpec, convergent_stream, convergent_table, irrationality_check
from cmfield.commands.common import constant_for, emit, load_lattice, parse_term
from cmfield.exact import ContractViolation, is_integral
from cmfield.lattice import records_frame
from cmfield.reports import report_file, write_xls_report

logger = logging.getLogger(__name__)

NAME = "convergents"
HELP = "convergent table of a PCF given by a(n), b(n) or of a field row"


def add_arguments(parser):
    parser.add_argument("--a", dest="a_text", help="partial denominators a(n)")
    parser.add_argument("--b", dest="b_text", help="partial numerators b(n)")
    parser.add_argument("--a0", default="0", help="leading term a0")
    parser.add_argument("--spec", help='JSON file {"a_poly", "b_poly", "a0", "depth"}')
    parser.add_argument("--field", help="preset or definition file, tabulates P(n,m)/Q(n,m) along --row")
    parser.add_argument("--row", type=int, default=1)
    parser.add_argument("--depth", type=int, default=None)
    parser.add_argument("--const", help="reference constant: builtin name, a/b or a decimal")
    parser.add_argument("--out", help="CSV output file, stdout by default")
    parser.add_argument("--xlsx", action="store_true", help="also write an xlsx workbook to the reports directory")


def _cf_frame(args):
    if args.spec:
        with open(args.spec) as fh:
            cf, depth = CFSpec.from_json(fh.read())
    elif args.a_text and args.b_text:
        cf, depth = CFSpec.from_polys(parse_term(args.a_text), parse_term(args.b_text), args.a0), 20
    else:
        raise ContractViolation("give --a and --b, --spec or --field")
    depth = args.depth or depth
    L = constant_for(args.const) if args.const else None
    df = convergent_table(cf, depth, L)
    pairs = [(c.p, c.q) for c in convergent_stream(cf, depth) if c.n > 0 and c.q != 0]
    if L is not None and len(pairs) >= 3 and all(is_integral(p) and is_integral(q) for p, q in pairs):
        report = irrationality_check(pairs[-30:], L)
        logger.info("irrationality check against %s: %s (decay %.4f)", L.name, report.verdict,
                    report.decay_factor)
    return "pcf", df


def _field_frame(args):
    definition, lattice = load_lattice(args.field)
    L = constant_for(args.const, definition) if (args.const or definition.limit) else None
    depth = args.depth or 20
    records = [lattice.record(n, args.row, L) for n in range(1, depth + 1)]
    return "%s-row-%d" % (definition.name, args.row), records_frame(records)


def run(args):
    name, df = _field_frame(args) if args.field else _cf_frame(args)
    emit(df.to_csv(index=False), args.out)
    if args.xlsx:
        write_xls_report({"convergents": df}, report_file("convergents", name, "xlsx"))
    return 0
