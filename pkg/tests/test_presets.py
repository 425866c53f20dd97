from fractions import Fraction

import pytest

from cmfield.exact import BiPoly, ContractViolation
from cmfield.field import validate_pair
from cmfield.presets import PRESETS, DefinitionError, FieldDefinition, load_definition, preset

X = BiPoly.x()
Y = BiPoly.y()


@pytest.mark.parametrize("name", sorted(PRESETS))
def test_presets_are_conjugate(name):
    definition = preset(name)
    pair = definition.pair()
    assert pair.product == pair.bX + pair.bY


def test_preset_limits():
    assert preset("zeta3").limit == "zeta3"
    assert preset("zeta3").reduction_exponent == 3
    assert preset("ln2").limit == "ln2"
    assert preset("degenerate").limit is None


def test_families():
    assert preset("deg3:0").f == preset("zeta3").f
    assert preset("deg3:0").limit == "zeta3"
    assert preset("deg3:2").limit is None
    f, fbar = preset("deg2-3:1").f, preset("deg2-3:1").fbar
    assert f == X ** 2 + X * Y * 2 + Y ** 2 * 2 + X + Y
    assert fbar == f.compose(X, -Y)
    validate_pair(f, fbar)


def test_family_errors():
    with pytest.raises(DefinitionError):
        preset("deg3:one")
    with pytest.raises(ContractViolation):
        preset("deg2-5:0")
    with pytest.raises(DefinitionError) as e:
        preset("zeta4")
    assert "unknown preset" in e.value.reason


def test_from_json():
    text = '{"name": "shifted", "f": "x + y", "fbar": "x - y", "origin": [1, 0], "limit": "ln2"}'
    definition = FieldDefinition.from_json(text)
    assert definition.name == "shifted"
    assert definition.limit == "ln2"
    assert definition.origin == (1, 0)
    assert definition.pair().f == X + Y + 1


def test_from_json_defaults():
    definition = FieldDefinition.from_json('{"f": "x + y", "fbar": "1", "split_offset": "1/2"}', name="e.json")
    assert definition.name == "e.json"
    assert definition.split_offset == Fraction(1, 2)
    assert definition.pair().bX == X + Fraction(1, 2)


def test_to_json_reads_back():
    ln2 = preset("ln2")
    again = FieldDefinition.from_json(ln2.to_json())
    assert (again.name, again.f, again.fbar, again.origin) == (ln2.name, ln2.f, ln2.fbar, ln2.origin)


def test_json_syntax_error_position():
    with pytest.raises(DefinitionError) as e:
        FieldDefinition.from_json('{"f": "x + y",\n "fbar": }')
    assert e.value.line == 2


def test_poly_error_position():
    text = '{\n  "f": "x + y",\n  "fbar": "x -* y"\n}'
    with pytest.raises(DefinitionError) as e:
        FieldDefinition.from_json(text)
    assert e.value.line == 3
    assert e.value.reason.startswith("fbar:")
    assert str(e.value).startswith("line 3, column ")


@pytest.mark.parametrize("text,reason", [
    ('[1, 2]', "must be a JSON object"),
    ('{"f": "x"}', "missing key 'fbar'"),
    ('{"f": "x", "fbar": "1", "origin": [1]}', "origin must be a pair of integers"),
    ('{"f": "x", "fbar": "1", "origin": [true, 0]}', "origin must be a pair of integers"),
    ('{"f": "x", "fbar": "1", "split_offset": "half"}', "split_offset is not a rational"),
])
def test_definition_errors(text, reason):
    with pytest.raises(DefinitionError) as e:
        FieldDefinition.from_json(text)
    assert reason in e.value.reason


def test_load_definition(tmp_path):
    path = tmp_path / "field.json"
    path.write_text(preset("zeta2").to_json())
    definition = load_definition(str(path))
    assert definition.f == preset("zeta2").f
    assert load_definition("ln2") is PRESETS["ln2"]


def test_load_definition_missing(tmp_path):
    with pytest.raises(DefinitionError) as e:
        load_definition(str(tmp_path / "missing.json"))
    assert "neither a preset nor a readable file" in e.value.reason
