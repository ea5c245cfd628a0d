"""
API Endpoint: Stable pair invariants of local P²
GET /api/pairs?cmax=1&nmax=8&mode=behrend -> {"mode": ..., "entries": [...]}

Limits come from WALLX_API_MAX_C / WALLX_API_MAX_N so a deployment can
keep requests inside the function timeout.
"""

from http.server import BaseHTTPRequestHandler

from api.utils.response import env_limit, error_response, parse_query, send_json, send_options
from api.utils.validation import choice_param, int_param
from wallx.errors import WallxError
from wallx.serialize import pair_table_to_json
from wallx.wallcross import MODES, build_table, pt_local

_cache = {}


def validate_params(params):
    """Returns (cleaned_params, error_message)."""
    errors = []
    max_c = env_limit("WALLX_API_MAX_C", 2)
    max_n = env_limit("WALLX_API_MAX_N", 8)
    c_max = int_param(params, "cmax", 1, errors, lo=0, hi=max_c)
    n_max = int_param(params, "nmax", 8, errors, hi=max_n)
    mode = choice_param(params, "mode", "behrend", MODES, errors)
    if errors:
        return None, "; ".join(errors)
    return {"c_max": c_max, "n_max": n_max, "mode": mode}, None


def compute(cleaned):
    key = (cleaned["c_max"], cleaned["n_max"], cleaned["mode"])
    if key not in _cache:
        dt, _ = build_table()
        table = pt_local(cleaned["c_max"], cleaned["n_max"], dt, cleaned["mode"])
        _cache[key] = pair_table_to_json(table)
    return {"success": True, **_cache[key]}


class handler(BaseHTTPRequestHandler):
    def do_GET(self):
        cleaned, error = validate_params(parse_query(self.path))
        if error:
            send_json(self, 400, error_response(error, kind="validation"))
            return
        try:
            send_json(self, 200, compute(cleaned))
        except WallxError as e:
            print(f"[api/pairs] {type(e).__name__}: {e.message}")
            send_json(self, 422, e.to_response())
        except Exception as e:
            print(f"[api/pairs] error: {e}")
            send_json(self, 500, error_response("Pair invariant computation failed"))

    def do_OPTIONS(self):
        """Handle CORS preflight requests."""
        send_options(self)
