"""
Error hierarchy for the wall-crossing calculator.

Every error carries a message and an optional hint, mirroring the
{"success": False, "error": ..., "hint": ...} shape the API layer returns.
"""


class WallxError(Exception):
    """Base class for all calculator errors."""

    hint = None

    def __init__(self, message, hint=None):
        super().__init__(message)
        self.message = message
        if hint is not None:
            self.hint = hint

    def to_response(self):
        """Return the standard error response dict."""
        resp = {"success": False, "error": self.message, "kind": type(self).__name__}
        if self.hint:
            resp["hint"] = self.hint
        return resp


# ---------------------------------------------------------------------------
# lattice
# ---------------------------------------------------------------------------

class InvalidClass(WallxError):
    pass


class ParityViolation(WallxError):
    hint = "an Euler pairing or sign exponent came out non-integral"


class UndefinedProduct(WallxError):
    hint = "supply d_beta0 / l_beta0 for classes carrying the external curve"


class RankNonzero(WallxError):
    pass


# ---------------------------------------------------------------------------
# qseries
# ---------------------------------------------------------------------------

class OrderUnderflow(WallxError):
    pass


class NotInvertible(WallxError):
    pass


class OutOfOrder(WallxError):
    hint = "recompute the series at a larger truncation order"


# ---------------------------------------------------------------------------
# dtstore
# ---------------------------------------------------------------------------

class ZeroClass(WallxError):
    pass


class NotAvailable(WallxError):
    hint = "provide the value in a user DT table (--dt-table)"

    def __init__(self, key, message=None, hint=None):
        self.key = key
        super().__init__(message or f"no source resolves DT{_fmt_key(key)}", hint)


class MissingPairValue(WallxError):
    def __init__(self, c, n, hint=None):
        self.c = c
        self.n = n
        super().__init__(f"pair invariant P(n={n}, c={c}) is not in the table", hint)


class TableFrozen(WallxError):
    pass


class TableNotFrozen(WallxError):
    hint = "call freeze() after attaching sources"


class TableLoadError(WallxError):
    pass


# ---------------------------------------------------------------------------
# wallcross
# ---------------------------------------------------------------------------

class WindowOverflow(WallxError):
    hint = "shrink the windows or raise max_candidates"


class ResolutionCycle(WallxError):
    pass


# ---------------------------------------------------------------------------
# config / cli
# ---------------------------------------------------------------------------

class ConfigError(WallxError):
    pass


def _fmt_key(key):
    try:
        r, c, m = key.r, key.c, key.m
    except AttributeError:
        return f"{key}"
    return f"({r}, {c}, {m})"
