"""
API Endpoint: Twist constraint relations
GET /api/constraint?d_beta0=1&l_beta0=0&n=5 -> {"lhs": [...], "rhs": [...], "text": "..."}
"""

from http.server import BaseHTTPRequestHandler

from api.utils.response import env_limit, error_response, parse_query, send_json, send_options
from api.utils.validation import choice_param, fraction_param, int_param
from wallx.errors import WallxError
from wallx.lattice import AmbientData
from wallx.serialize import relation_to_json
from wallx.wallcross import MODES, build_table, constraint_relation

_cache = {}


def validate_params(params):
    """Returns (cleaned_params, error_message)."""
    errors = []
    max_n = env_limit("WALLX_API_MAX_N", 8)
    d_beta0 = fraction_param(params, "d_beta0", None, errors)
    if d_beta0 is None and not errors:
        errors.append("d_beta0 is required")
    l_beta0 = fraction_param(params, "l_beta0", None, errors)
    n = int_param(params, "n", 5, errors, lo=-max_n, hi=max_n)
    shift = int_param(params, "shift", 1, errors, lo=-2, hi=2)
    mode = choice_param(params, "mode", "behrend", MODES, errors)
    if errors:
        return None, "; ".join(errors)
    return {"d_beta0": d_beta0, "l_beta0": l_beta0, "n": n, "shift": shift, "mode": mode}, None


def compute(cleaned):
    key = tuple(cleaned.values())
    if key not in _cache:
        dt, _ = build_table()
        amb = AmbientData(cleaned["d_beta0"], cleaned["l_beta0"])
        rel = constraint_relation(cleaned["n"], amb, dt, cleaned["mode"], shift=cleaned["shift"])
        _cache[key] = {**relation_to_json(rel), "text": str(rel)}
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
            print(f"[api/constraint] {type(e).__name__}: {e.message}")
            send_json(self, 422, e.to_response())
        except Exception as e:
            print(f"[api/constraint] error: {e}")
            send_json(self, 500, error_response("Constraint computation failed"))

    def do_OPTIONS(self):
        """Handle CORS preflight requests."""
        send_options(self)
