import pytest

from cmfield.cf import Sentinel
from cmfield.constants import HighPrecisionConstant
from cmfield.heatmap import COLUMNS, Heatmap


@pytest.fixture(scope="module")
def grid(zeta3):
    heatmap = Heatmap(zeta3, 30, 30, HighPrecisionConstant.builtin("zeta3"), jobs=1)
    heatmap.cells
    return heatmap


def test_bottom_row_is_negative(grid):
    for n in range(5, 31):
        assert grid.delta(n, 1) < 0


def test_diagonal_is_positive(grid):
    for n in range(10, 30):
        assert grid.delta(n, n + 1) > 0


def test_frame(grid):
    frame = grid.to_frame()
    assert list(frame.columns) == COLUMNS
    assert len(frame) == 900
    assert not grid.error_log


def test_document(grid):
    doc = grid.to_document()
    assert doc["grid"] == {"N": 30, "M": 30}
    assert doc["constant"]["name"] == "zeta3"
    assert len(doc["cells"]) == 900
    assert len(doc["rows"]) == 30


def test_single_cell(zeta3):
    heatmap = Heatmap(zeta3, 1, 1, HighPrecisionConstant.builtin("zeta3"), jobs=1)
    assert heatmap.delta(1, 1) is Sentinel.UNDEF
    assert heatmap.to_frame().iloc[0]["delta"] == "UNDEF"
