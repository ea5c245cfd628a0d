"""
JSON and CSV encodings for tables, series and relations.

Rationals travel as strings ("3", "-1/4"); the readers also accept JSON
integers. Emitted documents re-ingest to identical in-memory values.
"""

import csv
import json
import logging
import sys
from fractions import Fraction

from wallx.errors import InvalidClass, TableLoadError
from wallx.lattice import P2Class
from wallx.wallcross import MODES, FormalRelation, PairTable

log = logging.getLogger(__name__)

PAIR_CSV_FIELDS = ("c", "n", "value")


def fmt(value):
    return str(Fraction(value))


def parse_fraction(raw, what="value"):
    if isinstance(raw, bool) or not isinstance(raw, (int, str, Fraction)):
        raise TableLoadError(f"{what} must be an integer or a 'p/q' string, got {raw!r}")
    try:
        return Fraction(raw)
    except (ValueError, ZeroDivisionError):
        raise TableLoadError(f"{what} '{raw}' is not a rational number") from None


def _int_field(row, name):
    raw = row.get(name)
    if isinstance(raw, bool):
        raise TableLoadError(f"field '{name}' must be an integer")
    try:
        return int(raw)
    except (TypeError, ValueError):
        raise TableLoadError(f"field '{name}' must be an integer, got {raw!r}") from None


# ---------------------------------------------------------------------------
# Pair tables
# ---------------------------------------------------------------------------

def pair_table_to_json(table: PairTable):
    return {
        "mode": table.mode,
        "entries": [{"c": c, "n": n, "value": fmt(v)} for (c, n), v in table.entries()],
    }


def pair_table_from_json(data):
    if not isinstance(data, dict) or "entries" not in data:
        raise TableLoadError("pair table must be an object with 'mode' and 'entries'")
    mode = data.get("mode")
    if mode not in MODES:
        raise TableLoadError(f"unknown pair-table mode {mode!r}")
    table = PairTable(mode)
    for row in data["entries"]:
        key = (_int_field(row, "c"), _int_field(row, "n"))
        table.values[key] = parse_fraction(row.get("value"), f"P{key}")
    return table


def write_pair_csv(table: PairTable, fh):
    writer = csv.writer(fh)
    writer.writerow(PAIR_CSV_FIELDS)
    for (c, n), v in table.entries():
        writer.writerow([c, n, fmt(v)])


def read_pair_csv(fh, mode):
    table = PairTable(mode)
    for row in csv.DictReader(fh):
        key = (_int_field(row, "c"), _int_field(row, "n"))
        table.values[key] = parse_fraction(row.get("value"), f"P{key}")
    return table


# ---------------------------------------------------------------------------
# DT tables
# ---------------------------------------------------------------------------

def dt_entries_from_json(data):
    """[(P2Class, value)] from a JSON array of {r, c, m2, value}."""
    if not isinstance(data, list):
        raise TableLoadError("DT table must be a JSON array")
    out = []
    for i, row in enumerate(data):
        if not isinstance(row, dict):
            raise TableLoadError(f"DT table row {i} is not an object")
        try:
            cls = P2Class.from_m2(_int_field(row, "r"), _int_field(row, "c"), _int_field(row, "m2"))
        except InvalidClass as e:
            raise TableLoadError(f"DT table row {i}: {e.message}") from None
        out.append((cls, parse_fraction(row.get("value"), f"DT{cls}")))
    return out


def dt_entries_to_json(entries):
    return [{"r": cls.r, "c": cls.c, "m2": cls.m2, "value": fmt(v)} for cls, v in entries]


def load_dt_table(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as e:
        raise TableLoadError(f"cannot read DT table {path}: {e.strerror}") from None
    except json.JSONDecodeError as e:
        raise TableLoadError(f"DT table {path} is not valid JSON: {e.msg}") from None
    entries = dt_entries_from_json(data)
    log.info("[serialize] %d user DT entries from %s", len(entries), path)
    return entries


# ---------------------------------------------------------------------------
# Series and relations
# ---------------------------------------------------------------------------

def series_to_json(series):
    return [{"exp": fmt(e), "coef": fmt(c)} for e, c in series.items()]


def _relation_side(side):
    return [{"n": n, "c_shift": s, "coef": fmt(v)} for (n, s), v in sorted(side.items())]


def relation_to_json(rel: FormalRelation):
    return {"lhs": _relation_side(rel.lhs), "rhs": _relation_side(rel.rhs)}


def relation_from_json(data, target=None):
    rel = FormalRelation(target=target)
    for name in ("lhs", "rhs"):
        side = getattr(rel, name)
        for row in data.get(name, []):
            key = (_int_field(row, "n"), _int_field(row, "c_shift"))
            side[key] = parse_fraction(row.get("coef"), f"{name} coefficient")
    return rel


def dump_json(doc, path=None):
    """Write doc to path, or stdout when path is None."""
    text = json.dumps(doc, indent=2)
    if path is None:
        sys.stdout.write(text + "\n")
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text + "\n")
