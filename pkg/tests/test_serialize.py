import pytest
import io
import json
import sys
import os
from fractions import Fraction

# Add project root to path so we can import the package
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from wallx.errors import TableLoadError
from wallx.lattice import P2Class
from wallx.qseries import QSeries
from wallx.serialize import (
    dt_entries_from_json,
    dt_entries_to_json,
    dump_json,
    load_dt_table,
    pair_table_from_json,
    pair_table_to_json,
    parse_fraction,
    read_pair_csv,
    relation_from_json,
    relation_to_json,
    series_to_json,
    write_pair_csv,
)
from wallx.wallcross import FormalRelation, PairTable

F = Fraction


class TestParseFraction:
    def test_accepts_strings_and_ints(self):
        assert parse_fraction("-1/4") == F(-1, 4)
        assert parse_fraction(3) == 3

    @pytest.mark.parametrize("raw", [0.5, True, None, "abc", "1/0"])
    def test_rejects(self, raw):
        with pytest.raises(TableLoadError):
            parse_fraction(raw)


class TestPairTables:
    def test_json_document(self):
        table = PairTable("behrend", {(1, 2): F(-6), (1, 1): F(3)})
        doc = pair_table_to_json(table)
        assert doc == {"mode": "behrend", "entries": [
            {"c": 1, "n": 1, "value": "3"},
            {"c": 1, "n": 2, "value": "-6"},
        ]}
        assert pair_table_from_json(json.loads(json.dumps(doc))).values == table.values

    def test_unknown_mode(self):
        with pytest.raises(TableLoadError):
            pair_table_from_json({"mode": "dt", "entries": []})

    def test_csv(self):
        table = PairTable("euler", {(1, 1): F(3), (2, 1): F(-1, 2)})
        fh = io.StringIO()
        write_pair_csv(table, fh)
        assert fh.getvalue().splitlines() == ["c,n,value", "1,1,3", "2,1,-1/2"]
        fh.seek(0)
        assert read_pair_csv(fh, "euler").values == table.values

    def test_csv_bad_field(self):
        fh = io.StringIO("c,n,value\n1,x,3\n")
        with pytest.raises(TableLoadError):
            read_pair_csv(fh, "behrend")


class TestDTTables:
    def test_entries(self):
        entries = dt_entries_from_json([{"r": 3, "c": 1, "m2": -1, "value": "5/3"}])
        assert entries == [(P2Class(3, 1, F(-1, 2)), F(5, 3))]
        assert dt_entries_to_json(entries) == [{"r": 3, "c": 1, "m2": -1, "value": "5/3"}]

    def test_parity_error(self):
        with pytest.raises(TableLoadError):
            dt_entries_from_json([{"r": 0, "c": 1, "m2": 0, "value": 1}])

    def test_not_a_list(self):
        with pytest.raises(TableLoadError):
            dt_entries_from_json({"r": 0})

    def test_load_from_file(self, tmp_path):
        path = tmp_path / "dt.json"
        path.write_text(json.dumps([{"r": 0, "c": 2, "m2": 0, "value": -6}]))
        assert load_dt_table(str(path)) == [(P2Class(0, 2, 0), F(-6))]

    def test_load_missing_file(self, tmp_path):
        with pytest.raises(TableLoadError):
            load_dt_table(str(tmp_path / "missing.json"))

    def test_load_bad_json(self, tmp_path):
        path = tmp_path / "dt.json"
        path.write_text("[{")
        with pytest.raises(TableLoadError):
            load_dt_table(str(path))


class TestSeriesAndRelations:
    def test_series(self):
        s = QSeries({F(1, 4): 2, F(9, 4): -1}, F(9, 4), den=4)
        assert series_to_json(s) == [{"exp": "1/4", "coef": "2"}, {"exp": "9/4", "coef": "-1"}]

    def test_relation(self):
        rel = FormalRelation({(4, 1): F(1)}, {(3, 0): F(-1, 2)}, target=(4, 1))
        doc = relation_to_json(rel)
        assert doc == {"lhs": [{"n": 4, "c_shift": 1, "coef": "1"}],
                       "rhs": [{"n": 3, "c_shift": 0, "coef": "-1/2"}]}
        back = relation_from_json(doc, target=(4, 1))
        assert (back.lhs, back.rhs) == (rel.lhs, rel.rhs)

    def test_dump_to_stdout(self, capsys):
        dump_json({"a": "1/2"})
        assert json.loads(capsys.readouterr().out) == {"a": "1/2"}

    def test_dump_to_file(self, tmp_path):
        path = tmp_path / "out.json"
        dump_json([1, 2], str(path))
        assert json.loads(path.read_text()) == [1, 2]
