''' The diagonal polynomial continued fraction of a field and its normalized denominators '''
import mpmath

from cmfield.commands.common import add_source, constant_for, emit, emit_json, load_lattice
from cmfield.diagonal import apery_form_matches, diagonal_digits, diagonal_pcf, diagonal_pq, v_sequence


NAME = "diagonal"
HELP = "derive F(k), B(k) of the diagonal PCF and tabulate v_n"


def add_arguments(parser):
    add_source(parser)
    parser.add_argument("--terms", type=int, default=10, help="number of v_n (or Q(n,n+1)) to list")
    parser.add_argument("--depth", type=int, default=60, help="depth of the value estimate")
    parser.add_argument("--dps", type=int, default=50)
    parser.add_argument("--exponent", type=int, help="factorial reduction exponent, the preset one by default")
    parser.add_argument("--json", action="store_true")


def _in_k(poly):
    return str(poly).replace("x", "k")


def diagonal_document(definition, lattice, terms, depth, dps=50, exponent=None):
    pcf = diagonal_pcf(lattice)
    doc = {"field": definition.name,
           "F": _in_k(pcf.F),
           "B": _in_k(pcf.B),
           "g": _in_k(pcf.g),
           "prefix": [str(e) for e in pcf.prefix.entries()],
           "apery_form": apery_form_matches(pcf.F)}
    exponent = exponent or lattice.reduction_exponent
    if exponent:
        seq = v_sequence(lattice, terms, exponent, pcf)
        doc["v"] = [str(v) for v in seq.v]
        doc["exponent"] = exponent
        doc["recurrence_ok"] = seq.recurrence_ok
        doc["lambda_hat"] = seq.growth.lambda_hat
        doc["lambda_corrected"] = seq.growth.lambda_corrected
        if seq.growth.lambda_roots:
            doc["lambda_roots"] = list(seq.growth.lambda_roots)
    else:
        doc["Q"] = [str(v.bottom) for v in diagonal_pq(lattice, terms)]
    value = diagonal_digits(pcf, depth, dps)
    doc["value"] = mpmath.nstr(value, dps - 5)
    if definition.limit:
        L = constant_for(None, definition)
        with mpmath.workdps(dps):
            doc["distance"] = mpmath.nstr(abs(value - L.to_mpf(dps)), 5)
    return doc


def run(args):
    definition, lattice = load_lattice(args.source)
    doc = diagonal_document(definition, lattice, args.terms, args.depth, args.dps, args.exponent)
    if args.json:
        emit_json(doc)
        return 0
    lines = ["F(k) = %s" % doc["F"],
             "B(k) = %s" % doc["B"],
             "g(k) = %s" % doc["g"],
             "prefix = (%s)" % "; ".join(doc["prefix"]),
             "Apery form: %s" % ("yes" if doc["apery_form"] else "no")]
    if "v" in doc:
        lines.append("n  v_n = Q(n,n+1)/(n!)^%d" % (2 * doc["exponent"]))
        lines.extend("%-3d%s" % (n, v) for n, v in enumerate(doc["v"]))
        lines.append("growth: lambda ~ %.5f, %.5f after the n^beta correction"
                     % (doc["lambda_hat"], doc["lambda_corrected"]))
        if "lambda_roots" in doc:
            lines.append("characteristic roots: %s" % ", ".join(doc["lambda_roots"]))
    else:
        lines.append("n  Q(n,n+1)")
        lines.extend("%-3d%s" % (n, q) for n, q in enumerate(doc["Q"]))
    lines.append("value at depth %d: %s" % (args.depth, doc["value"]))
    if "distance" in doc:
        lines.append("distance to %s: %s" % (definition.limit, doc["distance"]))
    emit("\n".join(lines))
    return 0
