"""
API Endpoint: Generating series
GET /api/series?which=eta3&order=3 -> terms [{"exp": "0", "coef": "1"}, ...]
"""

from http.server import BaseHTTPRequestHandler

from api.utils.response import env_limit, error_response, parse_query, send_json, send_options
from api.utils.validation import choice_param, fraction_param, int_param
from wallx.errors import WallxError
from wallx.qseries import GENERATORS, series_for
from wallx.serialize import series_to_json

_cache = {}


def validate_params(params):
    """Returns (cleaned_params, error_message)."""
    errors = []
    max_order = env_limit("WALLX_API_MAX_N", 8)
    which = choice_param(params, "which", "eta3", GENERATORS, errors)
    order = fraction_param(params, "order", "4", errors)
    if order is not None and not 0 <= order <= max_order:
        errors.append(f"order must be between 0 and {max_order}")
    r = int_param(params, "r", 2, errors, lo=1, hi=4)
    a = int_param(params, "a", 0, errors)
    if errors:
        return None, "; ".join(errors)
    return {"which": which, "order": order, "r": r, "a": a}, None


def compute(cleaned):
    key = (cleaned["which"], cleaned["order"], cleaned["r"], cleaned["a"])
    if key not in _cache:
        series = series_for(cleaned["which"], cleaned["order"], cleaned["r"], cleaned["a"])
        _cache[key] = series_to_json(series)
    return {
        "success": True,
        "which": cleaned["which"],
        "order": str(cleaned["order"]),
        "terms": _cache[key],
    }


class handler(BaseHTTPRequestHandler):
    def do_GET(self):
        cleaned, error = validate_params(parse_query(self.path))
        if error:
            send_json(self, 400, error_response(error, kind="validation"))
            return
        try:
            send_json(self, 200, compute(cleaned))
        except WallxError as e:
            print(f"[api/series] {type(e).__name__}: {e.message}")
            send_json(self, 422, e.to_response())
        except Exception as e:
            print(f"[api/series] error: {e}")
            send_json(self, 500, error_response("Series computation failed"))

    def do_OPTIONS(self):
        """Handle CORS preflight requests."""
        send_options(self)
