''' Build the cf-form and twisted matrix fields of a pair and write them as JSON '''
from dataclasses import replace

from cmfield.commands.common import add_source, emit_json
from cmfield.exact import rational
from cmfield.field import build_cf_field, dual, is_degenerate, twist
from cmfield.presets import load_definition

NAME = "build"
HELP = "construct MX, MY in both normalizations"


def add_arguments(parser):
    add_source(parser)
    parser.add_argument("--origin", nargs=2, type=int, metavar=("ALPHA", "BETA"),
                        help="translate the origin of the field")
    parser.add_argument("--split-offset", help="constant moved between bX and bY")
    parser.add_argument("--dual", action="store_true", help="build the dual field instead")
    parser.add_argument("--out", help="output file, stdout by default")


def _matrices(field):
    return {"MX": [str(e) for e in field.MX.entries()],
            "MY": [str(e) for e in field.MY.entries()]}


def field_document(definition, use_dual=False):
    pair = definition.pair()
    if use_dual:
        pair = dual(pair)
    cf = build_cf_field(pair)
    tw = twist(cf)
    return {"definition": definition.to_dict(),
            "dual": use_dual,
            "f": str(pair.f),
            "fbar": str(pair.fbar),
            "a": str(pair.a),
            "bX": str(pair.bX),
            "bY": str(pair.bY),
            "degenerate": is_degenerate(pair),
            "cf": _matrices(cf),
            "twisted": _matrices(tw)}


def run(args):
    definition = load_definition(args.source)
    if args.origin:
        definition = replace(definition, origin=tuple(args.origin))
    if args.split_offset is not None:
        definition = replace(definition, split_offset=rational(args.split_offset))
    emit_json(field_document(definition, args.dual), args.out)
    return 0
