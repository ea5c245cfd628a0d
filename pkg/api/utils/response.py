import json
import os
from urllib.parse import parse_qs, urlparse
from fractions import Fraction


def _rational(value):
    if isinstance(value, Fraction):
        return str(value)
    raise TypeError(f"{type(value).__name__} is not JSON serializable")


def cors_headers():
    """Return standard CORS headers dict."""
    return {
        "Access-Control-Allow-Origin": "*",
        "Access-Control-Allow-Methods": "GET, OPTIONS",
        "Access-Control-Allow-Headers": "Content-Type",
    }

def send_json(handler, status, data):
    """Send a JSON response with CORS headers; Fractions are written as "p/q" strings."""
    handler.send_response(status)
    handler.send_header("Content-Type", "application/json")
    for k, v in cors_headers().items():
        handler.send_header(k, v)
    handler.end_headers()
    handler.wfile.write(json.dumps(data, default=_rational).encode())

def send_options(handler):
    """Handle CORS preflight OPTIONS request."""
    handler.send_response(204)
    for k, v in cors_headers().items():
        handler.send_header(k, v)
    handler.end_headers()

def error_response(message, hint=None, kind=None):
    """Create standardized error response dict."""
    resp = {"success": False, "error": message}
    if kind:
        resp["kind"] = kind
    if hint:
        resp["hint"] = hint
    return resp

def parse_query(path):
    """First value of every query parameter in a request path."""
    params = parse_qs(urlparse(path).query)
    return {k: v[0] for k, v in params.items() if v}

def env_limit(name, default):
    """Positive integer limit from the environment, falling back to default."""
    try:
        value = int(os.environ.get(name, default))
    except ValueError:
        return default
    return value if value > 0 else default
