import json
import os
from fractions import Fraction

import pandas as pd
import pytest

from cmfield.config import config
from cmfield.reports import dumps, report_file, write_csv, write_json, write_xls_report


def test_report_file_slug(tmp_path):
    path = report_file("heatmap", "Deg2 1:0 / 30x30", "csv", str(tmp_path))
    assert os.path.basename(path) == "heatmap-deg2-1-0-30x30.csv"
    assert os.path.dirname(path) == str(tmp_path)


def test_report_file_default_directory(monkeypatch, tmp_path):
    monkeypatch.setitem(config, 'REPORTS', str(tmp_path / "reports"))
    path = report_file("field", "zeta3", "json")
    assert path == os.path.join(str(tmp_path / "reports"), "field-zeta3.json")
    assert os.path.isdir(tmp_path / "reports")


def test_dumps_exact_values():
    big = 3 ** 200
    doc = json.loads(dumps({"q": Fraction(6, 5), "n": Fraction(4, 2), "big": big}))
    assert doc["q"] == "6/5"
    assert doc["n"] == "2"
    assert doc["big"] == big


def test_write_json_and_csv(tmp_path):
    path = write_json({"b": 1, "a": [Fraction(1, 3)]}, str(tmp_path / "doc.json"))
    text = open(path).read()
    assert text.endswith("}\n")
    assert text.index('"a"') < text.index('"b"')
    df = pd.DataFrame([[1, 2], [3, 4]], columns=["n", "q"])
    path = write_csv(df, str(tmp_path / "table.csv"))
    assert pd.read_csv(path).equals(df)


def test_write_xls_report(tmp_path):
    openpyxl = pytest.importorskip("openpyxl")
    df = pd.DataFrame([[1, str(10 ** 40)]], columns=["n", "q"])
    path = write_xls_report({"convergents": df}, str(tmp_path / "book.xlsx"), summary=[("field", "zeta3")])
    wb = openpyxl.load_workbook(path)
    assert wb.sheetnames == ["summary", "convergents"]
    rows = list(wb["convergents"].values)
    assert rows[0] == ("n", "q")
    assert rows[1] == ("1", str(10 ** 40))
    assert list(wb["summary"].values) == [("field", "zeta3")]
