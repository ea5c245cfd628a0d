"""
Generalized DT invariants DT(r, c, m) of semistable sheaves on local P².

Keys are canonical representatives of the orbit generated by tensor shifts,
duality and the sign of the class. Values resolve through an ordered list of
sources (builtin constants, generating series, the rank-zero bootstrap from
a pair table, a user table, the rigid-sum supplement); every resolved value
remembers its source.
"""

import logging
import threading
from fractions import Fraction
from math import floor
from typing import Protocol

from wallx.errors import (
    MissingPairValue,
    NotAvailable,
    TableFrozen,
    TableLoadError,
    TableNotFrozen,
    ZeroClass,
)
from wallx.lattice import P2Class
from wallx.qseries import QSeries, dt21_series, extract_dt, goettsche_series

log = logging.getLogger(__name__)

BUILTIN = "builtin"
SERIES = "series"
RANKZERO = "rankzero"
USER = "user"
SUPPLEMENT = "supplement"
BOGOMOLOV = "bogomolov"
DEFAULT_SOURCES = (BUILTIN, SERIES, RANKZERO, USER, SUPPLEMENT)

# DT(0, 2, m) after normalization; m is an integer in [0, 1].
_CONIC = {0: Fraction(-6), 1: Fraction(-21, 4)}

# Keys are P2Class values already in normalize() form.
DTKey = P2Class

# Grow cached generating series in steps so repeated lookups don't recompute.
_SERIES_MIN_ORDER = 8


class PairSource(Protocol):
    def get(self, c: int, n: int) -> Fraction: ...


def n_min(c):
    """Support bound of P_{n, c[l]}: the minimal χ of a degree-c plane curve."""
    return c * (3 - c) // 2


# ---------------------------------------------------------------------------
# Canonical keys
# ---------------------------------------------------------------------------

def in_negative_cone(cls: P2Class):
    return cls.r < 0 or (cls.r == 0 and cls.c < 0) or (cls.r == 0 and cls.c == 0 and cls.m < 0)


def normalize(cls: P2Class) -> DTKey:
    """Canonical representative of the DT-preserving orbit of cls."""
    if cls.is_zero():
        raise ZeroClass("DT of the zero class is undefined")
    if in_negative_cone(cls):
        cls = -cls
    r, c = cls.r, cls.c
    if r > 0:
        cls = cls.shift(-floor(Fraction(c, r)))
        if 2 * cls.c > r:
            cls = cls.dual().shift(1)
    elif c > 0:
        m = cls.m - c * floor(cls.m / c)
        # duality then negation sends m to −m
        if 2 * m > c:
            m = c - m
        cls = P2Class(0, c, m)
    return cls


def bogomolov_nonzero(cls: P2Class):
    return cls.discriminant() >= 0


# ---------------------------------------------------------------------------
# Rank-zero bootstrap
# ---------------------------------------------------------------------------

def _ordered_compositions(total):
    if total == 0:
        yield ()
        return
    for first in range(1, total + 1):
        for rest in _ordered_compositions(total - first):
            yield (first,) + rest


def _rankzero_shift(c, m):
    m = Fraction(m)
    if 3 * c + 2 * m == 0:
        m += c
    return m


def rankzero_single_coefficient(c, m):
    """Coefficient A of (P_{N,c} − P_{−N,c}) in DT(0, c, m), N = 3c/2 + m."""
    m = _rankzero_shift(c, m)
    big_n = int(Fraction(3 * c, 2) + m)
    sign = 1 if (big_n - 1) % 2 == 0 else -1
    return Fraction(2 * sign) / (3 * c + 2 * m)


def _curve_series(pairs: PairSource, degree, top):
    """Σ_n P_{n, degree} q^n for n_min(degree) <= n <= top."""
    terms = {}
    for n in range(n_min(degree), top + 1):
        value = pairs.get(degree, n)
        if value:
            terms[n] = value
    return QSeries(terms, top)


def rankzero_dt(c, m, pairs: PairSource, skip_single=False):
    """DT(0, c, m) from pair invariants of degree <= c.

    Sums over ordered compositions c = c_1 + ... + c_k with c_j >= 1 of
    2(−1)^{N−k} / ((3c + 2m)k) · ([q^N] − [q^{−N}]) ∏ Z_{c_j}, where
    Z_d = Σ P_{n,d} q^n and N = 3c/2 + m. With skip_single the k = 1
    composition is left out, leaving the part not proportional to P_{N,c}.
    """
    if c <= 0:
        raise ValueError("rankzero_dt needs c > 0")
    m = _rankzero_shift(c, m)
    big_n = int(Fraction(3 * c, 2) + m)
    denom = 3 * c + 2 * m
    total = Fraction(0)
    for parts in _ordered_compositions(c):
        k = len(parts)
        if skip_single and k == 1:
            continue
        floor_sum = sum(n_min(d) for d in parts)
        bracket = Fraction(0)
        for target, sign in ((big_n, 1), (-big_n, -1)):
            if target < floor_sum:
                continue
            product = None
            for d in parts:
                top = target - (floor_sum - n_min(d))
                factor = _curve_series(pairs, d, top)
                product = factor if product is None else product.mul(factor)
            bracket += sign * product.coefficient(target)
        if bracket:
            sign = 1 if (big_n - k) % 2 == 0 else -1
            total += Fraction(2 * sign) / (denom * k) * bracket
    return total


# ---------------------------------------------------------------------------
# Table
# ---------------------------------------------------------------------------

def _builtin(key: P2Class):
    if key.r == 0 and key.c == 1:
        return Fraction(3)
    if key.r == 0 and key.c == 2:
        return _CONIC[key.m]
    if key.r in (1, 2) and key.c == 0 and key.m == 0:
        return Fraction(1, key.r * key.r)
    return None


def _supplement(key: P2Class):
    """1/r² for DT(r, 0, 0), r >= 3; consulted only after the user table."""
    if key.r >= 3 and key.c == 0 and key.m == 0:
        log.info("[dtstore] DT%s taken from the rigid-sum supplement", key)
        return Fraction(1, key.r * key.r)
    return None


class DTTable:
    """Layered store of DT(r, c, m) keyed by canonical classes.

    Freezing fixes the sources. Resolved values and generated series are
    memoized afterwards; the memo is guarded by a lock so solver threads can
    share one table.
    """

    def __init__(self, sources=DEFAULT_SOURCES):
        self.sources = tuple(sources)
        self.frozen = False
        self.pairs = None
        self._user = {}
        self._values = {}
        self._provenance = {}
        self._series = {}
        self._memo_lock = threading.RLock()

    # -- bootstrap phase ---------------------------------------------------

    def _check_open(self):
        if self.frozen:
            raise TableFrozen("table is frozen; sources can no longer change")

    def add_user(self, cls: P2Class, value):
        """Attach a user value; keys are normalized, conflicts are errors."""
        self._check_open()
        key = normalize(cls)
        value = Fraction(value)
        old = self._user.get(key)
        if old is not None and old != value:
            raise TableLoadError(f"conflicting user values for DT{key}: {old} vs {value}")
        self._user[key] = value

    def add_user_entries(self, entries):
        for cls, value in entries:
            self.add_user(cls, value)

    def attach_pairs(self, pairs: PairSource):
        self._check_open()
        self.pairs = pairs

    def freeze(self):
        self.frozen = True
        log.info("[dtstore] frozen with sources %s, %d user entries",
                 ",".join(self.sources), len(self._user))
        return self

    # -- lookups -----------------------------------------------------------

    def lookup(self, cls: P2Class) -> Fraction:
        return self.lookup_with_source(cls)[0]

    def lookup_with_source(self, cls: P2Class):
        if not self.frozen:
            raise TableNotFrozen("lookups need a frozen table")
        if cls.is_zero():
            raise ZeroClass("DT of the zero class is undefined")
        if not bogomolov_nonzero(cls):
            return Fraction(0), BOGOMOLOV
        key = normalize(cls)
        with self._memo_lock:
            if key in self._values:
                return self._values[key], self._provenance[key]
            for source in self.sources:
                value = self._resolve(source, key)
                if value is not None:
                    self._values[key] = value
                    self._provenance[key] = source
                    log.debug("[dtstore] DT%s = %s (%s)", key, value, source)
                    return value, source
        raise NotAvailable(key)

    def provenance(self):
        """Resolved values so far: {key: (value, source)}."""
        with self._memo_lock:
            return {k: (v, self._provenance[k]) for k, v in self._values.items()}

    def user_entries(self):
        return dict(self._user)

    def _resolve(self, source, key):
        if source == BUILTIN:
            return _builtin(key)
        if source == SERIES:
            return self._from_series(key)
        if source == RANKZERO:
            if key.r == 0 and key.c >= 2 and self.pairs is not None:
                return rankzero_dt(key.c, key.m, self.pairs)
            return None
        if source == USER:
            return self._user.get(key)
        if source == SUPPLEMENT:
            return _supplement(key)
        raise ValueError(f"unknown DT source '{source}'")

    def _from_series(self, key):
        if key.r == 1:
            kind, generator = "eta3", goettsche_series
        elif key.r == 2 and key.c % 2 == 1:
            kind, generator = "dt21", dt21_series
        else:
            return None
        needed = (key.c * key.c - 2 * key.r * key.m) / (2 * key.r)
        series = self._series.get(kind)
        if series is None or series.order < needed:
            order = max(Fraction(_SERIES_MIN_ORDER), 2 * needed)
            series = generator(order)
            self._series[kind] = series
        return extract_dt(key.r, key.c, key.m, series)


def static_pair_source(values):
    """Wrap a {(c, n): value} mapping with the support conventions of pair tables."""
    return _StaticPairs(values)


class _StaticPairs:
    def __init__(self, values):
        self.values = dict(values)

    def get(self, c, n):
        if c == 0:
            return Fraction(1 if n == 0 else 0)
        if n < n_min(c):
            return Fraction(0)
        try:
            return self.values[(c, n)]
        except KeyError:
            raise MissingPairValue(c, n) from None
