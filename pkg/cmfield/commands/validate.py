''' Check the conjugacy conditions of a pair and the identities of the fields it generates '''
import logging

from cmfield.commands.common import emit, emit_json
from cmfield.exact import BiPoly, ContractViolation
from cmfield.field import build_cf_field, check_conditions, dual, is_degenerate, twist
from cmfield.presets import FieldDefinition, load_definition

logger = logging.getLogger(__name__)

NAME = "validate"
HELP = "check conjugacy, conservativeness and determinant identities"


def add_arguments(parser):
    parser.add_argument("source", nargs="?", help="preset name or field definition JSON file")
    parser.add_argument("--f", dest="f_text", help="f(x, y) as a poly-string")
    parser.add_argument("--fbar", dest="fbar_text", help="fbar(x, y) as a poly-string")
    parser.add_argument("--json", action="store_true", help="print the report as JSON")


def _definition(args):
    if args.f_text is not None or args.fbar_text is not None:
        if args.f_text is None or args.fbar_text is None:
            raise ContractViolation("--f and --fbar must be given together")
        return FieldDefinition("custom", BiPoly.parse(args.f_text), BiPoly.parse(args.fbar_text))
    if args.source is None:
        raise ContractViolation("give a preset, a field definition file or --f/--fbar")
    return load_definition(args.source)


def validate_definition(definition):
    ''' (ok, report) with every failed condition listed, not only the first '''
    residual, mixed = check_conditions(definition.f, definition.fbar)
    report = {"name": definition.name,
              "f": str(definition.f),
              "fbar": str(definition.fbar),
              "linear_condition": "pass" if residual.is_zero() else "fail, residual %s" % residual,
              "quadratic_condition": "pass" if not mixed else
              "fail, mixed monomials " + ", ".join(str(m) for m in mixed)}
    if not residual.is_zero() or mixed:
        return False, report
    pair = definition.pair()
    cf = build_cf_field(pair)
    twist(cf)
    build_cf_field(dual(pair))
    report.update({"a": str(pair.a),
                   "bX": str(pair.bX),
                   "bY": str(pair.bY),
                   "det_MX": str(cf.MX.det()),
                   "det_MY": str(cf.MY.det()),
                   "conservative": "pass",
                   "twisted": "pass",
                   "dual": "pass",
                   "degenerate": is_degenerate(pair)})
    return True, report


def run(args):
    ok, report = validate_definition(_definition(args))
    if args.json:
        emit_json(report)
    else:
        emit("\n".join("%-20s %s" % (key + ":", value) for key, value in report.items()))
    if not ok:
        logger.error("%s is not a conjugate pair", report["name"])
        return 1
    return 0
