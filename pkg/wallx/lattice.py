"""
Numerical classes on P² and on the ambient Calabi-Yau 3-fold.

A P2Class is a Chern character (r, c, m) on P². An XClass lives in
rank ⊕ Q[D] ⊕ H⁴ ⊕ H⁶ with H⁴ spanned by the line class [l] and a formal
external curve class β₀. All arithmetic is exact (fractions.Fraction).
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from wallx.errors import InvalidClass, ParityViolation, RankNonzero, UndefinedProduct

log = logging.getLogger(__name__)

# Fixed intersection numbers on the divisor D ≅ P² with normal bundle O(-3).
D_CUBED = 9
D_SQUARED_L = -3          # D² = -3[l]
D_DOT_L = -3              # D·[l]
LINE_DOT_L = 1            # c₁(L)·[l]
D_DOT_L_SQUARED = 1       # D·c₁(L)²
C2_DOT_D = -6             # c₂(X)·D

HALF = Fraction(1, 2)


def frac(x):
    """Coerce ints, Fractions and "p/q" strings to Fraction."""
    return x if isinstance(x, Fraction) else Fraction(x)


def require_integer(value, what):
    value = frac(value)
    if value.denominator != 1:
        raise ParityViolation(f"{what} = {value} is not an integer")
    return value.numerator


# ---------------------------------------------------------------------------
# Classes
# ---------------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class P2Class:
    """Chern character (r, c, m) on P² with 2m ≡ c (mod 2)."""

    r: int
    c: int
    m: Fraction

    def __post_init__(self):
        if not isinstance(self.r, int) or not isinstance(self.c, int):
            raise InvalidClass(f"rank and degree must be integers, got ({self.r}, {self.c})")
        m = frac(self.m)
        object.__setattr__(self, "m", m)
        twice = 2 * m
        if twice.denominator != 1:
            raise InvalidClass(f"2m must be an integer, got m = {m}")
        if (twice.numerator - self.c) % 2:
            raise InvalidClass(
                f"parity violated for ({self.r}, {self.c}, {m}): 2m must match c mod 2",
                hint="χ = r + 3c/2 + m has to be an integer",
            )

    @classmethod
    def from_m2(cls, r, c, m2):
        return cls(int(r), int(c), Fraction(int(m2), 2))

    @property
    def m2(self):
        return int(2 * self.m)

    @property
    def r_hat(self):
        return Fraction(self.r)

    @property
    def c_hat(self):
        return self.c + Fraction(self.r, 2)

    @property
    def m_hat(self):
        return self.m + Fraction(self.c, 2) + Fraction(self.r, 8)

    @property
    def hatted(self):
        return (self.r_hat, self.c_hat, self.m_hat)

    def discriminant(self):
        """c² − 2rm, invariant under tensor shifts and duality."""
        return self.c * self.c - 2 * self.r * self.m

    def is_zero(self):
        return self.r == 0 and self.c == 0 and self.m == 0

    def __neg__(self):
        return P2Class(-self.r, -self.c, -self.m)

    def __add__(self, other):
        return P2Class(self.r + other.r, self.c + other.c, self.m + other.m)

    def shift(self, a):
        """Tensor by O(a): (r, c, m) -> (r, c + ar, m + ac + a²r/2)."""
        return P2Class(self.r, self.c + a * self.r,
                       self.m + a * self.c + Fraction(a * a * self.r, 2))

    def dual(self):
        return P2Class(self.r, -self.c, self.m)

    def proportional_to(self, other):
        """True when self = a·other for some rational a > 0."""
        u, v = self.hatted, other.hatted
        for i in range(3):
            for j in range(3):
                if u[i] * v[j] != u[j] * v[i]:
                    return False
        return any(x * y > 0 for x, y in zip(u, v))

    def __str__(self):
        return f"({self.r}, {self.c}, {self.m})"


@dataclass(frozen=True)
class XClass:
    """(rank, d[D], l[l] + b0·β₀, n) on the ambient 3-fold."""

    rank: int
    d: Fraction
    l: Fraction  # noqa: E741
    b0: int
    n: Fraction

    def __post_init__(self):
        for name in ("d", "l", "n"):
            object.__setattr__(self, name, frac(getattr(self, name)))

    def __add__(self, other):
        return XClass(self.rank + other.rank, self.d + other.d, self.l + other.l,
                      self.b0 + other.b0, self.n + other.n)

    def __neg__(self):
        return XClass(-self.rank, -self.d, -self.l, -self.b0, -self.n)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        k = frac(k)
        if (k * self.b0).denominator != 1:
            raise InvalidClass("β₀ multiplicity must stay integral")
        return XClass(int(k * self.rank), k * self.d, k * self.l, int(k * self.b0), k * self.n)

    def is_zero(self):
        return self.rank == 0 and self.d == 0 and self.l == 0 and self.b0 == 0 and self.n == 0


ZERO_X = XClass(0, 0, 0, 0, 0)


@dataclass(frozen=True)
class AmbientData:
    """Intersection numbers of the external curve β₀; None means unknown."""

    d_beta0: Optional[Fraction] = None
    l_beta0: Optional[Fraction] = None

    def __post_init__(self):
        for name in ("d_beta0", "l_beta0"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, frac(value))

    def d_dot(self, l, b0):
        """D·(l[l] + b0·β₀)."""
        value = D_DOT_L * frac(l)
        if b0:
            if self.d_beta0 is None:
                raise UndefinedProduct("D·β₀ is required but was not supplied")
            value += b0 * self.d_beta0
        return value

    def l_dot(self, l, b0):
        """c₁(L)·(l[l] + b0·β₀)."""
        value = LINE_DOT_L * frac(l)
        if b0:
            if self.l_beta0 is None:
                raise UndefinedProduct("c₁(L)·β₀ is required but was not supplied")
            value += b0 * self.l_beta0
        return value


LOCAL = AmbientData()


# ---------------------------------------------------------------------------
# Maps
# ---------------------------------------------------------------------------

def i_sharp(alpha: P2Class) -> XClass:
    """Pushforward of a class on D: (0, r[D], (3r/2 + c)[l], 3r/2 + 3c/2 + m)."""
    r, c, m = alpha.r, alpha.c, alpha.m
    return XClass(0, Fraction(r), Fraction(3 * r, 2) + c, 0,
                  Fraction(3 * r, 2) + Fraction(3 * c, 2) + m)


def project(v: XClass) -> P2Class:
    """Inverse of i_sharp on its image."""
    if v.rank != 0 or v.b0 != 0:
        raise InvalidClass(f"{v} is not supported on D")
    r = require_integer(v.d, "D-coefficient")
    c = require_integer(v.l - Fraction(3 * r, 2), "degree")
    m = v.n - Fraction(3 * r, 2) - Fraction(3 * c, 2)
    alpha = P2Class(r, c, m)
    if i_sharp(alpha) != v:
        raise InvalidClass(f"{v} is not in the image of i_sharp")
    return alpha


def exp_rD_pair_class(r, beta_l, b0, n, amb: AmbientData = LOCAL) -> XClass:
    """e^{rD}(1, 0, −β, −n) with β = beta_l[l] + b0·β₀."""
    beta_l, n = frac(beta_l), frac(n)
    d_beta = amb.d_dot(beta_l, b0)
    return XClass(1, Fraction(r), -Fraction(3 * r * r, 2) - beta_l, -b0,
                  Fraction(3 * r ** 3, 2) - r * d_beta - n)


def exp_rDL_residual(r, beta_l, b0, n, amb: AmbientData = LOCAL) -> XClass:
    """e^{rD + c₁(L)}(1, 0, −β, −n) − e^{c₁(L)}, componentwise.

    Every L² and L³ term cancels in the difference; only c₁(L)·β survives.
    """
    beta_l, n = frac(beta_l), frac(n)
    d_beta = amb.d_dot(beta_l, b0)
    l_beta = amb.l_dot(beta_l, b0)
    return XClass(
        0,
        Fraction(r),
        r - Fraction(3 * r * r, 2) - beta_l,
        -b0,
        Fraction(r, 2) - Fraction(3 * r * r, 2) + Fraction(3 * r ** 3, 2)
        - r * d_beta - l_beta - n,
    )


def theta_sharp(v: XClass, amb: AmbientData = LOCAL) -> XClass:
    """Action of the spherical twist along O_D on a rank-zero class."""
    if v.rank != 0:
        raise RankNonzero(f"theta_sharp needs a rank-zero class, got rank {v.rank}")
    r = v.d
    beta_d = amb.d_dot(v.l, v.b0)
    l_beta = amb.l_dot(v.l, v.b0)
    return XClass(
        0,
        Fraction(5, 2) * r + beta_d,
        v.l + Fraction(13, 4) * r + Fraction(3, 2) * beta_d,
        v.b0,
        v.n + Fraction(11, 4) * r + Fraction(3, 2) * beta_d + l_beta,
    )


def twist_down(v: XClass, amb: AmbientData = LOCAL) -> XClass:
    """ch(E ⊗ L⁻¹) for a D-supported class E."""
    if v.rank != 0:
        raise UndefinedProduct(
            "twisting by L⁻¹ is only determined for classes supported on D")
    l_beta = amb.l_dot(v.l, v.b0)
    return XClass(0, v.d, v.l - v.d, v.b0,
                  v.n - l_beta + v.d * Fraction(D_DOT_L_SQUARED, 2))


# ---------------------------------------------------------------------------
# Pairings
# ---------------------------------------------------------------------------

def euler_pairing(E: XClass, F: XClass, amb: AmbientData = LOCAL) -> Fraction:
    """χ(E, F) by Riemann-Roch on the Calabi-Yau 3-fold.

    Only D·(H⁴) products occur, so the result is determined as soon as D·β₀
    is known for whichever side carries β₀ against a nonzero [D] part.
    """
    value = E.rank * F.n - E.n * F.rank
    if E.d:
        value -= E.d * amb.d_dot(F.l, F.b0)
    if F.d:
        value += F.d * amb.d_dot(E.l, E.b0)
    value += Fraction(C2_DOT_D, 12) * (E.rank * F.d - E.d * F.rank)
    return value


def twisted_pairing(E: XClass, r, beta_l, b0, n, amb: AmbientData = LOCAL) -> Fraction:
    """χ(E, e^{rD + c₁(L)}(1, 0, −β, −n)) for D-supported E."""
    return euler_pairing(twist_down(E, amb), exp_rD_pair_class(r, beta_l, b0, n, amb), amb)


def chi_ab(a: P2Class, b: P2Class) -> int:
    return 3 * (a.r * b.c - b.r * a.c)


def chi_ae(a: P2Class, r, d_beta) -> int:
    """χ(v_a, v_e) for v_a = −i♯a and v_e = e^{rD}(1, 0, −β, −n)."""
    d_beta = frac(d_beta)
    value = (a.r + a.m + 3 * r * a.c - a.r * d_beta + Fraction(3, 2) * a.c
             + Fraction(9, 2) * r * a.r + Fraction(9, 2) * r * r * a.r)
    return require_integer(value, f"chi_ae({a}, r={r}, Dβ={d_beta})")


def chi_ae_L(a: P2Class, r, d_beta) -> int:
    """χ(v_a, v_e) for the L-twisted rank-one class e^{rD + c₁(L)}(1, 0, −β, −n)."""
    d_beta = frac(d_beta)
    value = (a.m + HALF * a.c + 3 * r * a.c - a.r * d_beta
             + Fraction(3, 2) * r * a.r + Fraction(9, 2) * r * r * a.r)
    return require_integer(value, f"chi_ae_L({a}, r={r}, Dβ={d_beta})")
