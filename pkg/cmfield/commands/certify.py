''' Irrationality certificate along the diagonal or bottom line of a field '''
from cmfield.commands.common import add_source, constant_for, emit, load_lattice
from cmfield.diagonal import certificate

NAME = "certify"
HELP = "numerical irrationality evidence with factorial reduction audit"


def add_arguments(parser):
    add_source(parser)
    parser.add_argument("--depth", type=int, default=40)
    parser.add_argument("--const", help="the constant in twisted normalization, the preset limit by default")
    parser.add_argument("--line", choices=["diagonal", "bottom"], default="diagonal")
    parser.add_argument("--exponent", type=int, help="claimed factorial reduction exponent c")
    parser.add_argument("--json", action="store_true")
    parser.add_argument("--out", help="output file, stdout by default")


def run(args):
    definition, lattice = load_lattice(args.source)
    L = constant_for(args.const, definition)
    report = certificate(lattice, L, args.depth, args.line, args.exponent)
    emit(report.to_json() if args.json else report.to_text(), args.out)
    return 0
