''' helpers shared by the subcommands '''
import logging
import sys

from cmfield.constants import HighPrecisionConstant
from cmfield.exact import BiPoly, ContractViolation
from cmfield.lattice import Lattice
from cmfield.presets import load_definition
from cmfield.reports import dumps

logger = logging.getLogger(__name__)

# names accepted for the index variable of continued fraction terms
TERM_VARIABLES = {"n": "x", "k": "x", "x": "x"}


def add_source(parser):
    parser.add_argument("source", help="preset name (zeta3, zeta2, ln2, e, degenerate, deg2-R:C, deg3:C) "
                                       "or a field definition JSON file")


def load_lattice(source):
    definition = load_definition(source)
    return definition, Lattice.from_definition(definition)


def parse_term(text):
    return BiPoly.parse(text, TERM_VARIABLES)


def constant_for(text, definition=None, bits=None):
    ''' --const value, or the limit recorded with the field definition '''
    spec = text or (definition.limit if definition is not None else None)
    if spec is None:
        name = definition.name if definition is not None else "this run"
        raise ContractViolation("no known limit for %s, pass --const" % name)
    return HighPrecisionConstant.resolve(spec, bits)


def emit(text, out=None):
    ''' data goes to stdout or to the --out file '''
    if out in (None, "-"):
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")
        return None
    with open(out, "w") as fh:
        fh.write(text)
        if not text.endswith("\n"):
            fh.write("\n")
    logger.info("wrote %s", out)
    return out


def emit_json(document, out=None):
    return emit(dumps(document), out)
