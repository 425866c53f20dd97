''' Search for conjugate pairs in a coefficient box, or complete MY for the MX of a field '''
from cmfield.commands.common import emit, emit_json
from cmfield.config import reports_path
from cmfield.exact import BiPoly
from cmfield.field import build_cf_field, is_degenerate
from cmfield.filters import IntegralBoxFilter, NonDegenerateFilter, NonZeroBFilter
from cmfield.presets import FieldDefinition, load_definition
from cmfield.reports import report_file
from cmfield.search import SearchSpace, complete_MY, degeneracy_stats, enumerate_pairs

NAME = "search"
HELP = "enumerate conjugate pairs or complete a partial field"


def add_arguments(parser):
    parser.add_argument("--deg", type=int, default=1, help="total degree of f")
    parser.add_argument("--deg-x", type=int, help="degree bound in x, --deg by default")
    parser.add_argument("--deg-y", type=int, help="degree bound in y, --deg by default")
    parser.add_argument("--box", type=int, default=1, help="coefficients of f in [-box, box]")
    parser.add_argument("--non-degenerate", action="store_true", help="drop pairs whose a(x,y) has no y")
    parser.add_argument("--write", action="store_true",
                        help="write every pair as a field definition JSON file in the reports directory")
    parser.add_argument("--complete", metavar="SOURCE",
                        help="complete MY for the cf-form MX of a preset or definition file")
    parser.add_argument("--json", action="store_true")


def _enumerate(args):
    deg_x = args.deg if args.deg_x is None else args.deg_x
    deg_y = args.deg if args.deg_y is None else args.deg_y
    space = SearchSpace(deg_x, deg_y, args.box, total_degree=args.deg)
    filters = [NonZeroBFilter(), IntegralBoxFilter(args.box)]
    if args.non_degenerate:
        filters.append(NonDegenerateFilter())
    pairs = enumerate_pairs(space, filters)
    if args.write:
        directory = reports_path()
        for i, pair in enumerate(pairs):
            definition = FieldDefinition("search-d%d-b%d-%d" % (args.deg, args.box, i), pair.f, pair.fbar)
            path = report_file("field", definition.name, "json", directory)
            with open(path, "w") as fh:
                fh.write(definition.to_json() + "\n")
    stats = degeneracy_stats(pairs)
    if args.json:
        emit_json({"space": {"deg_x": deg_x, "deg_y": deg_y, "box": args.box, "size": space.size()},
                   "stats": stats,
                   "pairs": [{"f": str(p.f), "fbar": str(p.fbar), "degenerate": is_degenerate(p)}
                             for p in pairs]})
        return 0
    lines = ["%s | %s%s" % (p.f, p.fbar, "  (degenerate)" if is_degenerate(p) else "") for p in pairs]
    lines.append("# %(pairs)d pairs, %(degenerate)d degenerate" % stats)
    emit("\n".join(lines))
    return 0


def _complete(args):
    definition = load_definition(args.complete)
    cf = build_cf_field(definition.pair())
    deg_x = args.deg_x if args.deg_x is not None else max(BiPoly.coerce(e).deg_x() for e in cf.MY.entries())
    deg_y = args.deg_y if args.deg_y is not None else max(BiPoly.coerce(e).deg_y() for e in cf.MY.entries())
    result = complete_MY(cf.MX, max(deg_x, 0), max(deg_y, 0))
    doc = {"field": definition.name,
           "deg_x": deg_x,
           "deg_y": deg_y,
           "dimension": len(result),
           "contains_field_MY": result.contains(cf.MY),
           "basis": [[str(e) for e in M.entries()] for M in result.basis],
           "invertible": len(result.candidates)}
    if args.json:
        emit_json(doc)
    else:
        lines = ["solution space of dimension %(dimension)d (%(invertible)d invertible basis elements)" % doc,
                 "contains the field's own MY: %s" % ("yes" if doc["contains_field_MY"] else "no")]
        lines.extend("(%s)" % "; ".join(M) for M in doc["basis"])
        emit("\n".join(lines))
    return 0


def run(args):
    if args.complete:
        return _complete(args)
    return _enumerate(args)
