''' Named conjugate pairs and the JSON field definition format

    Families take an integer parameter C and are addressed as "deg2-1:C" ... "deg2-4:C"
    and "deg3:C".
'''
import json
import logging
from dataclasses import dataclass
from fractions import Fraction

from cmfield.exact import BiPoly, PolyParseError, ContractViolation, rational
from cmfield.field import validate_pair

logger = logging.getLogger(__name__)

X = BiPoly.x()
Y = BiPoly.y()


class DefinitionError(Exception):

    def __init__(self, reason, line=1, column=1):
        super().__init__("line {}, column {}: {}".format(line, column, reason))
        self.reason = reason
        self.line = line
        self.column = column


@dataclass(frozen=True)
class FieldDefinition():
    name: str
    f: BiPoly
    fbar: BiPoly
    split_offset: Fraction = Fraction(0)
    origin: tuple = (0, 0)
    limit: str = None
    reduction_exponent: int = None
    description: str = ""

    def pair(self):
        ''' the validated pair with the origin already translated '''
        from cmfield.field import translate_origin
        pair = validate_pair(self.f, self.fbar, self.split_offset)
        if self.origin != (0, 0):
            pair = translate_origin(pair, *self.origin)
        return pair

    def to_dict(self):
        return {"name": self.name,
                "f": str(self.f),
                "fbar": str(self.fbar),
                "split_offset": str(self.split_offset),
                "origin": list(self.origin)}

    def to_json(self):
        return json.dumps(self.to_dict(), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, text, name=None):
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as e:
            raise DefinitionError(e.msg, e.lineno, e.colno)
        if not isinstance(doc, dict):
            raise DefinitionError("field definition must be a JSON object")
        for key in ("f", "fbar"):
            if key not in doc:
                raise DefinitionError("missing key %r" % key, *_locate(text, "{"))
        polys = {}
        for key in ("f", "fbar"):
            try:
                polys[key] = BiPoly.parse(str(doc[key]))
            except PolyParseError as e:
                line, column = _locate(text, '"%s"' % key)
                raise DefinitionError("%s: %s" % (key, e.reason), line, column + e.column - 1)
        try:
            offset = rational(str(doc.get("split_offset", "0")))
        except (ValueError, ZeroDivisionError, ContractViolation):
            raise DefinitionError("split_offset is not a rational", *_locate(text, '"split_offset"'))
        origin = doc.get("origin", [0, 0])
        if (not isinstance(origin, list) or len(origin) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in origin)):
            raise DefinitionError("origin must be a pair of integers", *_locate(text, '"origin"'))
        return cls(doc.get("name", name or "custom"), polys["f"], polys["fbar"], offset, tuple(origin),
                   limit=doc.get("limit"))


def _locate(text, token):
    index = max(text.find(token), 0)
    line = text.count("\n", 0, index) + 1
    column = index - (text.rfind("\n", 0, index) + 1) + 1
    return line, column


def _neg_x(g):
    return g.compose(-X, Y)


def _neg_y(g):
    return g.compose(X, -Y)


def deg2_family(row, C):
    ''' the four degree-2 families, one per sign action g -> gbar '''
    C = rational(C)
    if row == 1:
        f = X ** 2 + X * Y + Y ** 2 / 2 + (X + Y) * C
        return f, -_neg_x(f)
    if row == 2:
        f = X ** 2 + X * Y * 2 + Y ** 2 * 2 + (X + Y * 2) * C
        return f, _neg_x(f)
    if row == 3:
        f = X ** 2 + X * Y * 2 + Y ** 2 * 2 + (X + Y) * C
        return f, _neg_y(f)
    if row == 4:
        f = (X ** 2 * 2 + X * Y * 2 + Y ** 2 + (X * 2 + Y) * C) / 2
        return f, -_neg_y(f)
    raise ContractViolation("degree-2 families are numbered 1..4, got %r" % row)


def deg3_family(C):
    ''' reduces to the zeta(3) pair at C = 0 '''
    C = rational(C)
    yc = Y - C
    f = X ** 3 + X ** 2 * yc * 2 + X * yc ** 2 * 2 + yc ** 3 - (X + yc) * C ** 2
    return f, _neg_x(f)


_ZETA3_F = X ** 3 + X ** 2 * Y * 2 + X * Y ** 2 * 2 + Y ** 3

PRESETS = {
    "zeta3": FieldDefinition("zeta3", _ZETA3_F, _neg_x(_ZETA3_F), limit="zeta3", reduction_exponent=3,
                             description="Apery field, its diagonal gives the zeta(3) irrationality proof"),
    "zeta2": FieldDefinition("zeta2", X ** 2 * 2 + X * Y * 2 + Y ** 2, -(X ** 2 * 2) + X * Y * 2 - Y ** 2,
                             limit="pi^2/12"),
    "ln2": FieldDefinition("ln2", X + Y, X - Y, limit="ln2"),
    "e": FieldDefinition("e", X + Y, BiPoly.const(1), limit="e-1"),
    "degenerate": FieldDefinition("degenerate", X + Y, Y - X,
                                  description="a(x,y) does not depend on y, every row is the same"),
}


def preset(name):
    ''' FieldDefinition for a preset name or a family "deg2-<row>:C" / "deg3:C" '''
    if name in PRESETS:
        return PRESETS[name]
    family, sep, param = name.partition(":")
    if sep:
        try:
            C = int(param)
        except ValueError:
            raise DefinitionError("family parameter must be an integer, got %r" % param)
        if family == "deg3":
            f, fbar = deg3_family(C)
            return FieldDefinition(name, f, fbar, limit="zeta3" if C == 0 else None,
                                   reduction_exponent=3 if C == 0 else None)
        if family.startswith("deg2-") and family[5:].isdigit():
            f, fbar = deg2_family(int(family[5:]), C)
            return FieldDefinition(name, f, fbar)
    raise DefinitionError("unknown preset %r, choose from %s, deg2-1..4:C, deg3:C"
                          % (name, ", ".join(sorted(PRESETS))))


def load_definition(source):
    ''' a preset name or the path of a field definition JSON file '''
    try:
        return preset(source)
    except DefinitionError:
        pass
    try:
        with open(source) as fh:
            text = fh.read()
    except OSError:
        raise DefinitionError("%r is neither a preset nor a readable file" % source)
    return FieldDefinition.from_json(text, name=source)
