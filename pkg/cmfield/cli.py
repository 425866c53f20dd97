''' Command-line entry point, dispatching to cmfield.commands

    Exit codes: 0 success, 1 a mathematical condition failed, 2 usage or parse error.
'''
import argparse
import logging
import sys

from cmfield.cf import DivisionByZeroInRecurrence
from cmfield.commands import COMMANDS
from cmfield.config import config, setup_logging
from cmfield.constants import UnknownConstantError
from cmfield.diagonal import NonIntegralityError, UnsupportedFieldError
from cmfield.exact import ContractViolation, PolyParseError, SingularMatrixError
from cmfield.field import ConjugacyError, FieldIdentityError
from cmfield.lattice import InapplicableError
from cmfield.presets import DefinitionError
from cmfield.search import SearchSpaceTooLarge

logger = logging.getLogger("cmfield")

EXIT_OK = 0
EXIT_MATH = 1
EXIT_USAGE = 2

MATH_ERRORS = (ConjugacyError, FieldIdentityError, NonIntegralityError, UnsupportedFieldError,
               SingularMatrixError, DivisionByZeroInRecurrence, InapplicableError)
USAGE_ERRORS = (DefinitionError, PolyParseError, UnknownConstantError, ContractViolation,
                SearchSpaceTooLarge, ValueError, OSError)


def build_parser():
    parser = argparse.ArgumentParser(prog="cmfield",
                                     description="Conservative matrix fields, polynomial continued "
                                                 "fractions and irrationality certificates")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v info, -vv debug")
    parser.add_argument("--jobs", type=int, help="worker processes for heat maps and searches")
    parser.add_argument("--reports", help="directory for generated files (CMF_REPORTS)")
    sub = parser.add_subparsers(dest="command", metavar="command")
    sub.required = True
    for name, module in COMMANDS.items():
        module.add_arguments(sub.add_parser(name, help=module.HELP, description=module.__doc__))
    return parser


def main(argv=None):
    if hasattr(sys, "set_int_max_str_digits"):
        sys.set_int_max_str_digits(0)
    args = build_parser().parse_args(argv)
    setup_logging({0: None, 1: "INFO"}.get(args.verbose, "DEBUG"))
    if args.jobs:
        config['JOBS'] = args.jobs
    if args.reports:
        config['REPORTS'] = args.reports
    try:
        return COMMANDS[args.command].run(args) or EXIT_OK
    except MATH_ERRORS as e:
        logger.error("%s: %s", type(e).__name__, e)
        return EXIT_MATH
    except USAGE_ERRORS as e:
        logger.error("%s: %s", type(e).__name__, e)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
