''' Euler continued fractions: closed-form partial values next to the convergents '''
from fractions import Fraction

import pandas as pd

from cmfield.cf import EulerSpec, convergent_stream, euler_partial
from cmfield.commands.common import emit, parse_term

NAME = "euler"
HELP = "partial values of the Euler continued fraction of (h1, h2, f)"


def add_arguments(parser):
    parser.add_argument("--h1", required=True)
    parser.add_argument("--h2", required=True)
    parser.add_argument("--f", dest="f_text", default="1")
    parser.add_argument("--depth", type=int, default=10)
    parser.add_argument("--out", help="CSV output file, stdout by default")


def euler_frame(spec, depth):
    rows = []
    # convergent n + 1 is K_1^n
    for c in convergent_stream(spec.to_cf(), depth + 1):
        if c.n == 0:
            continue
        closed = euler_partial(spec, c.n - 1)
        equal = c.q != 0 and Fraction(closed) == c.value
        rows.append([c.n - 1, str(closed), str(c.value) if c.q else "INF", equal])
    return pd.DataFrame(rows, columns=["n", "euler_partial", "convergent", "equal"])


def run(args):
    spec = EulerSpec(parse_term(args.h1), parse_term(args.h2), parse_term(args.f_text))
    df = euler_frame(spec, args.depth)
    emit(df.to_csv(index=False), args.out)
    return 0 if df.equal.all() else 1
