"""
API Endpoint: DT invariant lookup
GET /api/dt?r=0&c=2&m2=0 -> {"success": true, "value": "-6", "source": "builtin"}
"""

from http.server import BaseHTTPRequestHandler

from api.utils.response import error_response, parse_query, send_json, send_options
from api.utils.validation import int_param
from wallx.errors import WallxError
from wallx.lattice import P2Class
from wallx.wallcross import build_table

# ---------------------------------------------------------------------------
# One frozen table per warm instance; lookups memoize inside it.
# ---------------------------------------------------------------------------
_table = None
_cache = {}


def _get_table():
    global _table
    if _table is None:
        _table, _ = build_table()
    return _table


def validate_params(params):
    """Returns (cleaned_params, error_message)."""
    errors = []
    r = int_param(params, "r", None, errors, lo=-6, hi=6)
    c = int_param(params, "c", None, errors, lo=-50, hi=50)
    m2 = int_param(params, "m2", None, errors, lo=-200, hi=200)
    if errors:
        return None, "; ".join(errors)
    return {"r": r, "c": c, "m2": m2}, None


def lookup(cleaned):
    key = (cleaned["r"], cleaned["c"], cleaned["m2"])
    if key not in _cache:
        value, source = _get_table().lookup_with_source(P2Class.from_m2(*key))
        _cache[key] = {"value": value, "source": source}
    return {"success": True, **cleaned, **_cache[key]}


class handler(BaseHTTPRequestHandler):
    def do_GET(self):
        cleaned, error = validate_params(parse_query(self.path))
        if error:
            send_json(self, 400, error_response(error, kind="validation"))
            return
        try:
            send_json(self, 200, lookup(cleaned))
        except WallxError as e:
            print(f"[api/dt] {type(e).__name__}: {e.message}")
            send_json(self, 422, e.to_response())
        except Exception as e:
            print(f"[api/dt] error: {e}")
            send_json(self, 500, error_response("DT lookup failed"))

    def do_OPTIONS(self):
        """Handle CORS preflight requests."""
        send_options(self)
