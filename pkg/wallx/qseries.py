"""
Truncated q-series with exact rational exponents and coefficients.

A QSeries knows its truncation order: every coefficient with exponent
<= order is exact, everything above it is unknown. Operations propagate the
order and refuse to answer past it.
"""

import itertools
import logging
from fractions import Fraction
from math import floor, isqrt, lcm
from types import MappingProxyType

from wallx.errors import NotInvertible, OrderUnderflow, OutOfOrder

log = logging.getLogger(__name__)

GENERATORS = ("eta3", "dt21", "theta")


class QSeries:
    """Σ coef · q^exp with all exponents on the grid (1/den)·Z and <= order."""

    __slots__ = ("_terms", "order", "den")

    def __init__(self, terms, order, den=1):
        order = Fraction(order)
        clean = {}
        for exp, coef in terms.items():
            exp, coef = Fraction(exp), Fraction(coef)
            if coef == 0 or exp > order:
                continue
            if (exp * den).denominator != 1:
                raise ValueError(f"exponent {exp} is off the 1/{den} grid")
            clean[exp] = clean.get(exp, 0) + coef
        self._terms = {e: c for e, c in clean.items() if c != 0}
        self.order = order
        self.den = den

    # -- accessors ---------------------------------------------------------

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def valuation(self):
        """Lowest exponent carrying a nonzero coefficient (order if none)."""
        return min(self._terms) if self._terms else self.order

    def coefficient(self, exp):
        exp = Fraction(exp)
        if exp > self.order:
            raise OutOfOrder(f"exponent {exp} lies beyond the truncation order {self.order}")
        return self._terms.get(exp, Fraction(0))

    def is_zero(self):
        return not self._terms

    # -- ring operations ---------------------------------------------------

    def truncate(self, order):
        order = Fraction(order)
        if order > self.order:
            raise OrderUnderflow(f"cannot raise the order from {self.order} to {order}")
        return QSeries(self._terms, order, self.den)

    def add(self, other, order=None):
        if not isinstance(other, QSeries):
            other = constant(other, self.order)
        known = min(self.order, other.order)
        out = dict(self._terms)
        for e, c in other._terms.items():
            out[e] = out.get(e, 0) + c
        result = QSeries(out, known, lcm(self.den, other.den))
        return _clip(result, order)

    def mul(self, other, order=None):
        """Product; exact up to min(order_a + val_b, order_b + val_a).

        With both valuations >= 0 this is at least the smaller input order;
        negative valuations lower the guaranteed order by the same shift.
        """
        if not isinstance(other, QSeries):
            k = Fraction(other)
            return QSeries({e: c * k for e, c in self._terms.items()}, self.order, self.den)
        known = min(self.order + other.valuation(), other.order + self.valuation())
        out = {}
        right = other.items()
        for ea, ca in self.items():
            for eb, cb in right:
                e = ea + eb
                if e > known:
                    break
                out[e] = out.get(e, 0) + ca * cb
        result = QSeries(out, known, lcm(self.den, other.den))
        return _clip(result, order)

    def neg(self):
        return QSeries({e: -c for e, c in self._terms.items()}, self.order, self.den)

    __add__ = add
    __mul__ = mul

    def __radd__(self, other):
        return self.add(other)

    def __rmul__(self, other):
        return self.mul(other)

    def __neg__(self):
        return self.neg()

    def __sub__(self, other):
        return self.add(other.neg() if isinstance(other, QSeries) else -Fraction(other))

    def invert(self):
        """Multiplicative inverse on the 1/den grid, same order as the input."""
        a0 = self._terms.get(Fraction(0), 0)
        if a0 == 0 or self.valuation() != 0:
            raise NotInvertible("series needs a nonzero constant term and valuation 0")
        steps = floor(self.order * self.den)
        a = {int(e * self.den): c for e, c in self._terms.items() if e > 0}
        b = [Fraction(0)] * (steps + 1)
        b[0] = 1 / a0
        for j in range(1, steps + 1):
            acc = Fraction(0)
            for i, c in a.items():
                if i <= j:
                    acc += c * b[j - i]
            b[j] = -acc / a0
        return QSeries({Fraction(j, self.den): v for j, v in enumerate(b)}, self.order, self.den)

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return self._terms == other._terms and self.order == other.order

    def __repr__(self):
        body = " + ".join(f"{c}*q^{e}" for e, c in self.items()) or "0"
        return f"QSeries({body} + O(q^{self.order}))"


def _clip(series, order):
    if order is None:
        return series
    if Fraction(order) > series.order:
        raise OrderUnderflow(
            f"requested order {order} exceeds the guaranteed order {series.order}")
    return series.truncate(order)


def constant(value, order):
    return QSeries({0: value}, order)


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def euler_product(power, order):
    """∏_{k>=1} (1 − q^k)^power truncated at the given order."""
    top = max(floor(Fraction(order)), 0)
    coeffs = [0] * (top + 1)
    coeffs[0] = 1
    for k in range(1, top + 1):
        for _ in range(abs(power)):
            if power > 0:
                for j in range(top, k - 1, -1):
                    coeffs[j] -= coeffs[j - k]
            else:
                for j in range(k, top + 1):
                    coeffs[j] += coeffs[j - k]
    return QSeries(dict(enumerate(coeffs)), order)


def goettsche_series(order):
    """∏ (1 − q^k)^(-3): the rank-one generating series on local P²."""
    return euler_product(-3, order)


def vartheta(r, a, order):
    """Σ q^{Σ_{i<=j} k_i k_j} over (a/r, ..., a/r) + Z^{r−1}."""
    if r < 1:
        raise ValueError("vartheta needs r >= 1")
    order = Fraction(order)
    if r == 1:
        return constant(1, order)
    if order < 0:
        return QSeries({}, order, r * r)
    shift = Fraction(a, r)
    bound = isqrt(floor(2 * order)) + 1
    lo = floor(-bound - shift)
    hi = floor(bound - shift) + 1
    out = {}
    for ts in itertools.product(range(lo, hi + 1), repeat=r - 1):
        ks = [shift + t for t in ts]
        q = (sum(k * k for k in ks) + sum(ks) ** 2) / 2
        if q <= order:
            out[q] = out.get(q, 0) + 1
    return QSeries(out, order, r * r)


def indefinite_theta_21(order):
    """Σ (2a − 6b) q^{a² − b²} over a ∈ Z, b ∈ 1/2 + Z, a > b > 0."""
    order = Fraction(order)
    out = {}
    j = 0
    while j + Fraction(3, 4) <= order:
        b = j + Fraction(1, 2)
        a = j + 1
        while a * a - b * b <= order:
            e = a * a - b * b
            out[e] = out.get(e, 0) + 2 * a - 6 * b
            a += 1
        j += 1
    return QSeries(out, order, 4)


def dt21_series(order):
    """Rank-two, odd-degree generating series ∏(1−q^k)^(-6) · θ₃⁻¹ · Σ(2a − 6b)q^{a²−b²}."""
    order = Fraction(order)
    prefactor = euler_product(-6, order)
    theta_inv = vartheta(2, 0, order).invert()
    result = prefactor.mul(theta_inv).mul(indefinite_theta_21(order))
    log.debug("[qseries] dt21 order=%s terms=%d", order, len(result.terms))
    return result.truncate(order)


def extract_dt(r, c, m, series):
    """DT(r, c, m) read off Σ DT(r, c, m)(−q^{1/2r})^{c² − 2rm}."""
    if r not in (1, 2):
        raise ValueError("series extraction is defined for ranks 1 and 2")
    disc = c * c - 2 * r * Fraction(m)
    if disc.denominator != 1:
        raise ValueError(f"c² − 2rm = {disc} is not an integer")
    exp = disc / (2 * r)
    coef = series.coefficient(exp)
    return coef if disc.numerator % 2 == 0 else -coef


def series_for(which, order, r=None, a=None):
    """Dispatch used by the CLI and the API."""
    if which == "eta3":
        return goettsche_series(order)
    if which == "dt21":
        return dt21_series(order)
    if which == "theta":
        if r is None:
            raise ValueError("theta needs r")
        return vartheta(int(r), int(a or 0), order)
    raise ValueError(f"unknown series '{which}', expected one of {', '.join(GENERATORS)}")
