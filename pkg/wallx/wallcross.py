"""
Wall-crossing sums for stable pairs on a Calabi-Yau 3-fold containing P².

One engine enumerates the solutions of the class equation

    (1, −u) = e^{rD}(1, 0, −β, −n) − Σ_j i♯(r_j, c_j, m_j)

(or its L-twisted variant) as Terms, weighs each Term with its sign and its
f / g coefficient, and leaves the DT and pair-invariant factors to the
callers: the local recursion (pt_local), the orbifold sum (orbifold_pt) and
the constraint relations (constraint_relation).
"""

import logging
from collections import defaultdict
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor, isqrt
from typing import Callable, Dict, NamedTuple, Optional, Tuple

from wallx.combinat import PartsTuple, f_coeff, g_coeff, iota, iota_eps, u_coeff
from wallx.dtstore import (
    BOGOMOLOV,
    DEFAULT_SOURCES,
    RANKZERO,
    USER,
    DTTable,
    n_min,
    normalize,
    rankzero_single_coefficient,
)
from wallx.errors import (
    MissingPairValue,
    ParityViolation,
    ResolutionCycle,
    WallxError,
    WindowOverflow,
)
from wallx.lattice import (
    LOCAL,
    AmbientData,
    P2Class,
    XClass,
    chi_ab,
    chi_ae,
    chi_ae_L,
    exp_rD_pair_class,
    exp_rDL_residual,
    i_sharp,
    require_integer,
    theta_sharp,
)

log = logging.getLogger(__name__)

BEHREND = "behrend"
EULER = "euler"
MODES = (BEHREND, EULER)

_CHUNK = 64


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class WindowConfig:
    """Bounds on the coordinates the class equation leaves free.

    m_window: parts of rank >= 0 have m̂ >= −m_window, parts of rank < 0 have
    m̂ <= m_window. r_window: |r_j| <= r_window. n_pad: n′ <= n + n_pad.
    """

    m_window: int = 3
    r_window: int = 3
    n_pad: int = 3
    saturation_steps: int = 2
    max_candidates: int = 2_000_000

    def __post_init__(self):
        if self.m_window < 0 or self.r_window < 1 or self.n_pad < 0 or self.saturation_steps < 1:
            raise ValueError(f"invalid window configuration {self}")

    def enlarged(self, step=1):
        return replace(self, m_window=self.m_window + step, r_window=self.r_window + step,
                       n_pad=self.n_pad + step)


@dataclass(frozen=True)
class Term:
    """One summand: parts around the rank-one slot, r, and the pair symbol (n′, c′)."""

    k: int
    e: int
    parts: PartsTuple
    r: int
    cprime: int
    nprime: int
    b0: int = 0
    twisted: bool = False

    def is_trivial(self):
        return self.k == 1


@dataclass
class PairTable:
    """P_{n, c[l]} values with the degree-zero and support conventions."""

    mode: str
    values: Dict[Tuple[int, int], Fraction] = field(default_factory=dict)

    def get(self, c, n):
        if c < 0:
            return Fraction(0)
        if c == 0:
            return Fraction(1 if n == 0 else 0)
        if n < n_min(c):
            return Fraction(0)
        try:
            return self.values[(c, n)]
        except KeyError:
            raise MissingPairValue(c, n) from None

    def entries(self):
        return sorted(self.values.items())


@dataclass
class FormalRelation:
    """Σ lhs[(n, s)] P_{n, β₀+s[l]} = Σ rhs[(n, s)] P_{n, β₀+s[l]}."""

    lhs: Dict[Tuple[int, int], Fraction] = field(default_factory=dict)
    rhs: Dict[Tuple[int, int], Fraction] = field(default_factory=dict)
    target: Optional[Tuple[int, int]] = None

    def is_empty(self):
        return not self.lhs and not self.rhs

    def solved(self):
        """{symbol: coef} with P_target = Σ coef · P_symbol."""
        if self.target is None or self.lhs.get(self.target) != 1:
            raise WallxError("relation is not monic in its target symbol")
        out = defaultdict(Fraction)
        for sym, coef in self.lhs.items():
            if sym != self.target:
                out[sym] -= coef
        for sym, coef in self.rhs.items():
            out[sym] += coef
        out.pop(self.target, None)
        return {k: v for k, v in sorted(out.items()) if v}

    def __str__(self):
        def side(d):
            if not d:
                return "0"
            return " + ".join(f"({c})*P[n={n},s={s}]" for (n, s), c in sorted(d.items()))
        return f"{side(self.lhs)} = {side(self.rhs)}"


# ---------------------------------------------------------------------------
# Class equations
# ---------------------------------------------------------------------------

class ClassEquation:
    """The plain or L-twisted class equation for a rank-zero target u."""

    def __init__(self, u: XClass, amb: AmbientData = LOCAL, twisted=False):
        self.u = u
        self.amb = amb
        self.twisted = twisted
        self.b0 = u.b0
        self.base = theta_sharp(u, amb) if twisted else u

    def rho(self, r):
        return r + self.base.d

    def s(self, r, c_hat):
        value = self.base.l - Fraction(3 * r * r, 2) - c_hat - self.rho(r)
        return value + r if self.twisted else value

    def n_prime(self, r, s, c_hat, m_hat):
        d_beta = self.amb.d_dot(s, self.b0)
        value = (self.base.n + Fraction(3 * r ** 3, 2) - r * d_beta - m_hat - c_hat
                 - Fraction(7, 8) * self.rho(r))
        if self.twisted:
            value += Fraction(r, 2) - Fraction(3 * r * r, 2) - self.amb.l_dot(s, self.b0)
        return value

    def r_range(self):
        if self.base.d.denominator != 1:
            return []
        span = max(ceil(self.base.l - self.base.d), 0)
        bound = isqrt(2 * span) + 2
        return [r for r in range(-bound, bound + 1) if self.s(r, 0) >= 0]

    def d_beta(self, term: Term):
        return self.amb.d_dot(term.cprime, term.b0)

    def verify(self, term: Term):
        """Re-check a term against the class equation with lattice operations."""
        pushed = XClass(0, 0, 0, 0, 0)
        for p in term.parts.parts:
            pushed = pushed + i_sharp(p)
        if self.twisted:
            lhs = exp_rDL_residual(term.r, term.cprime, term.b0, term.nprime, self.amb)
            rhs = pushed - self.base
        else:
            lhs = XClass(1, 0, 0, 0, 0) - self.u
            rhs = exp_rD_pair_class(term.r, term.cprime, term.b0, term.nprime, self.amb) - pushed
        if lhs != rhs:
            raise WallxError(f"term {term} violates its class equation: {lhs} != {rhs}")


# ---------------------------------------------------------------------------
# Candidate parts and chains
# ---------------------------------------------------------------------------

class _Part(NamedTuple):
    cls: P2Class
    c_hat: Fraction
    r: int
    slope: Fraction
    ratio: Fraction
    m_hat: Fraction


def _rest_floor(budget, m_window):
    """Lower bound magnitude for Σ m̂ over parts with Σ ĉ <= budget."""
    return budget * budget / 2 + 2 * budget * m_window


@lru_cache(maxsize=64)
def _catalog(cap, m_window, r_window, h0):
    out = []
    for twice in range(1, floor(2 * cap) + 1):
        c_hat = Fraction(twice, 2)
        for r in range(-r_window, r_window + 1):
            c = c_hat - Fraction(r, 2)
            if c.denominator != 1:
                continue
            c = int(c)
            if r > 0:
                lo, hi = Fraction(-m_window), c_hat * c_hat / (2 * r)
            elif r < 0:
                lo, hi = -c_hat * c_hat / (2 * -r), Fraction(m_window)
            else:
                lo, hi = Fraction(-m_window), Fraction(h0)
            offset = Fraction(c, 2) + Fraction(r, 8)
            half_c = Fraction(c, 2)
            m = half_c + ceil(lo - offset - half_c)
            while m + offset <= hi:
                cls = P2Class(r, c, m)
                if cls.discriminant() >= 0:
                    out.append(_Part(cls, c_hat, r, r / c_hat, cls.m_hat / c_hat, cls.m_hat))
                m += 1
    out.sort(key=lambda p: p.c_hat)
    return tuple(out)


class _ChainBuilder:
    def __init__(self, catalog, cap, m_window, m_upper, limit):
        self.catalog = catalog
        self.cap = cap
        self.m_window = m_window
        self.m_upper = m_upper
        self.limit = limit
        self.count = 0

    def _bump(self):
        self.count += 1
        if self.count > self.limit:
            raise WindowOverflow(f"more than {self.limit} chains; windows too large")

    def _too_heavy(self, c_hat, m):
        return m - _rest_floor(self.cap - c_hat, self.m_window) > self.m_upper

    def left(self):
        """Parts before the rank-one slot, keyed by (Σĉ, Σr, Σm̂)."""
        out = defaultdict(list)
        parts = []

        def grow(c_hat, rho, m, last):
            if last is None or iota(-last.r) != iota(m):
                self._bump()
                out[(c_hat, rho, m)].append(tuple(p.cls for p in parts))
            for p in self.catalog:
                nc = c_hat + p.c_hat
                if nc > self.cap:
                    break
                nm = m + p.m_hat
                if self._too_heavy(nc, nm):
                    continue
                if last is not None and not p.cls.proportional_to(last.cls):
                    if iota_eps(p.slope - last.slope, last.ratio - p.ratio) == iota(m):
                        continue
                parts.append(p)
                grow(nc, rho + p.r, nm, p)
                parts.pop()

        grow(Fraction(0), 0, Fraction(0), None)
        return out

    def right(self):
        """Parts after the rank-one slot, grown leftwards from the last slot."""
        out = defaultdict(list)
        parts = []

        def grow(c_hat, rho, m, first):
            if first is None or iota(-first.r) != iota(m):
                self._bump()
                out[(c_hat, rho, m)].append(tuple(p.cls for p in reversed(parts)))
            for p in self.catalog:
                nc = c_hat + p.c_hat
                if nc > self.cap:
                    break
                nm = m + p.m_hat
                if self._too_heavy(nc, nm):
                    continue
                if first is not None and not p.cls.proportional_to(first.cls):
                    if iota_eps(first.slope - p.slope, p.ratio - first.ratio) == -iota(m):
                        continue
                parts.append(p)
                grow(nc, rho + p.r, nm, p)
                parts.pop()

        grow(Fraction(0), 0, Fraction(0), None)
        return out


# ---------------------------------------------------------------------------
# Enumeration and weights
# ---------------------------------------------------------------------------

NBounds = Callable[[int], Tuple[int, int]]


def local_bounds(n_target, w: WindowConfig) -> NBounds:
    """n′ range for pure [l] classes: support bound below, n + n_pad above."""
    def bounds(s):
        if s == 0:
            return 0, 0
        return n_min(s), n_target + w.n_pad
    return bounds


def floor_bounds(n_floor, n_cap) -> NBounds:
    def bounds(s):
        return n_floor, n_cap
    return bounds


def enumerate_candidates(eq: ClassEquation, w: WindowConfig, bounds: NBounds):
    """Every (parts, r, c′, n′) solving eq whose ψ-independent U factors are nonzero."""
    rs = eq.r_range()
    if not rs:
        return []
    cap = max(eq.s(r, 0) for r in rs)
    m_upper = None
    for r in rs:
        for twice in range(0, floor(2 * cap) + 1):
            c_hat = Fraction(twice, 2)
            s = eq.s(r, c_hat)
            if s < 0 or s.denominator != 1:
                continue
            lo, hi = bounds(int(s))
            if lo > hi:
                continue
            top = eq.n_prime(r, s, c_hat, 0) - lo
            m_upper = top if m_upper is None else max(m_upper, top)
    if m_upper is None:
        return []
    h0 = ceil(m_upper + _rest_floor(cap, w.m_window)) + w.m_window
    catalog = _catalog(cap, w.m_window, w.r_window, h0)
    builder = _ChainBuilder(catalog, cap, w.m_window, m_upper, w.max_candidates)
    lefts = builder.left()
    rights = builder.right()

    right_index = defaultdict(dict)
    for (c_hat, rho, m), chains in rights.items():
        right_index[(c_hat, rho)][m] = chains

    out = []
    for (cl, rho_l, ml), left_chains in lefts.items():
        for (cr, rho_r), by_m in right_index.items():
            c_hat = cl + cr
            if c_hat > cap:
                continue
            r = rho_l + rho_r - eq.base.d
            if r.denominator != 1:
                continue
            r = int(r)
            s = eq.s(r, c_hat)
            if s < 0 or s.denominator != 1:
                continue
            s = int(s)
            lo, hi = bounds(s)
            base = eq.n_prime(r, s, c_hat, 0)
            for nprime in range(lo, hi + 1):
                right_chains = by_m.get(base - nprime - ml)
                if not right_chains:
                    continue
                for left in left_chains:
                    for right in right_chains:
                        out.append((left, right, r, s, nprime))
                        if len(out) > w.max_candidates:
                            raise WindowOverflow(
                                f"more than {w.max_candidates} candidate terms")
    log.debug("[wallcross] u=%s twisted=%s chains=%d/%d candidates=%d",
              eq.u, eq.twisted, sum(map(len, lefts.values())),
              sum(map(len, rights.values())), len(out))
    return out


def sign_exponent(term: Term, mode, amb: AmbientData = LOCAL):
    """Exponent of the wall-crossing sign; Behrend exponents are cross-checked."""
    parts = term.parts.parts
    if mode == EULER:
        return term.k - 1 + sum(require_integer(p.r + p.c + 2 * p.r * p.m, "Euler sign")
                                for p in parts)
    d_beta = amb.d_dot(term.cprime, term.b0)
    r = term.r
    chi = chi_ae_L if term.twisted else chi_ae
    pair_sum = sum(chi_ab(parts[a], parts[b])
                   for a in range(len(parts)) for b in range(a + 1, len(parts)))
    exponent = term.k - 1 + sum(chi(p, r, d_beta) for p in parts) + pair_sum

    expanded = Fraction(term.k - 1)
    for p in parts:
        if term.twisted:
            expanded += (p.m + Fraction(p.c, 2) + r * p.c + p.r * d_beta
                         + Fraction(3, 2) * r * p.r + Fraction(r * r * p.r, 2))
        else:
            expanded += (p.r + p.m + r * p.c - p.r * d_beta + Fraction(3, 2) * p.c
                         + Fraction(r * p.r, 2) + Fraction(r * r * p.r, 2))
    expanded += Fraction(pair_sum, 3)
    expanded = require_integer(expanded, "expanded sign exponent")
    if (exponent - expanded) % 2:
        raise ParityViolation(f"sign parity mismatch on {term}: {exponent} vs {expanded}")
    return exponent


def sign_factor(term: Term, mode, amb: AmbientData = LOCAL):
    """(−1)^{k−1+...}: the sign of a term in the wall-crossing identity."""
    return -1 if sign_exponent(term, mode, amb) % 2 else 1


def recursion_sign(term: Term, mode, amb: AmbientData = LOCAL):
    """Sign of a term once moved to the right of P_{n,c} = ... in the recursion."""
    return -sign_factor(term, mode, amb)


def _weigh(job):
    eq, mode, cand = job
    left, right, r, s, nprime = cand
    k = len(left) + len(right) + 1
    e = len(left) + 1
    pt = PartsTuple(k, e, left + right)
    term = Term(k, e, pt, r, s, nprime, eq.b0, eq.twisted)
    u = u_coeff(pt)
    if not u:
        return None
    d_beta = eq.d_beta(term)
    coef = (g_coeff if eq.twisted else f_coeff)(pt, r, d_beta, u=u)
    if not coef:
        return None
    eq.verify(term)
    return term, sign_factor(term, mode, eq.amb) * coef


def weighted_terms(eq: ClassEquation, mode, w: WindowConfig, bounds: NBounds, threads=1):
    """[(Term, sign · f)] for every candidate with a nonzero coefficient."""
    candidates = enumerate_candidates(eq, w, bounds)
    jobs = [(eq, mode, c) for c in candidates]
    if threads > 1 and len(jobs) > _CHUNK:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_weigh, jobs, chunksize=_CHUNK))
    else:
        results = [_weigh(j) for j in jobs]
    return [res for res in results if res is not None]


def enumerate_terms_star2(c, n, w: WindowConfig, threads=1):
    """Nontrivial terms of the degree-c recursion with nonzero f."""
    eq = ClassEquation(XClass(0, 0, c, 0, n))
    return [t for t, _ in weighted_terms(eq, BEHREND, w, local_bounds(n, w), threads)
            if not t.is_trivial()]


# ---------------------------------------------------------------------------
# Pair invariants
# ---------------------------------------------------------------------------

def _dt_product(dt: DTTable, term: Term, consumed=None):
    prod = Fraction(1)
    for p in term.parts.parts:
        value, source = dt.lookup_with_source(p)
        if consumed is not None and source != BOGOMOLOV:
            consumed[normalize(p)] = value
        prod *= value
        if not prod:
            break
    return prod


def _is_diagonal(term: Term, c):
    """The k = 2, r = 0, c′ = 0 term whose single part is a degree-c sheaf on a curve."""
    if term.k != 2 or term.r != 0 or term.cprime != 0:
        return False
    part = term.parts.parts[0]
    return part.r == 0 and part.c == c


def diagonal_coupling(c, n, w: WindowConfig = WindowConfig(), threads=1):
    """(m, κ·A) for the degree-c recursion at χ = n, or None without a diagonal term.

    κ is the weight with which DT(0, c, m) enters P_{n, c[l]} and A the k = 1
    coefficient of P_{n, c[l]} in the rank-zero identity for DT(0, c, m).
    κ·A = 1 means substituting the identity into the recursion gives 0 = 0,
    so DT(0, c, m) has to come from the table.
    """
    eq = ClassEquation(XClass(0, 0, c, 0, n))
    kappa = Fraction(0)
    m = None
    for term, weight in weighted_terms(eq, BEHREND, w, local_bounds(n, w), threads):
        if _is_diagonal(term, c):
            kappa -= weight
            m = term.parts.parts[0].m
    if m is None or not kappa:
        return None
    return m, kappa * rankzero_single_coefficient(c, m)


class PairSolver:
    """Lazily solves the local recursion for P_{n, c[l]} with memoization.

    Every DT value a recursion consumes comes from the table, including the
    DT(0, c, ·) keys of the degree being solved (see diagonal_coupling).
    consumed_dt records those values by canonical key. With
    assume_support=False values below n_min(c) are computed, not read as 0.
    """

    def __init__(self, dt: DTTable, mode=BEHREND, w: WindowConfig = WindowConfig(),
                 threads=1, assume_support=True):
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}")
        self.dt = dt
        self.mode = mode
        self.w = w
        self.threads = threads
        self.assume_support = assume_support
        self.values = {}
        self.consumed_dt = {}
        self._pending = set()

    def get(self, c, n):
        if c < 0:
            return Fraction(0)
        if c == 0:
            return Fraction(1 if n == 0 else 0)
        if self.assume_support and n < n_min(c):
            return Fraction(0)
        key = (c, n)
        if key not in self.values:
            if key in self._pending:
                raise ResolutionCycle(f"P(n={n}, c={c}) depends on itself")
            self._pending.add(key)
            try:
                self.values[key] = self.compute(c, n)
            finally:
                self._pending.discard(key)
        return self.values[key]

    def compute(self, c, n):
        """Evaluate the recursion for (c, n) without consulting the memo for it."""
        eq = ClassEquation(XClass(0, 0, c, 0, n))
        terms = weighted_terms(eq, self.mode, self.w, local_bounds(n, self.w), self.threads)
        value = Fraction(0)
        for term, weight in terms:
            if term.is_trivial():
                continue
            pair = self.get(term.cprime, term.nprime)
            if not pair:
                continue
            value -= weight * _dt_product(self.dt, term, self.consumed_dt) * pair
        log.info("[pt-local] %s P(n=%d, c=%d) = %s (%d terms)", self.mode, n, c, value, len(terms))
        return value

    def table(self, c_max, n_max):
        out = PairTable(self.mode)
        for c in range(1, c_max + 1):
            for n in range(n_min(c), n_max + 1):
                out.values[(c, n)] = self.get(c, n)
        return out


def build_table(user_entries=(), w: WindowConfig = WindowConfig(), threads=1,
                prefer_user=False):
    """A frozen DTTable linked to the Behrend PairSolver that reads from it.

    The rank-zero source is left out: DT(0, c, ·) enters the degree-c
    recursion only through the diagonal term, where the rank-zero identity
    is no condition, so those keys come from builtins or the user table.
    """
    sources = tuple(s for s in DEFAULT_SOURCES if s != RANKZERO)
    if prefer_user:
        sources = (USER,) + tuple(s for s in sources if s != USER)
    dt = DTTable(sources)
    dt.add_user_entries(user_entries)
    solver = PairSolver(dt, BEHREND, w, threads)
    dt.attach_pairs(solver)
    dt.freeze()
    return dt, solver


def pt_local(c_max, n_max, dt: DTTable, mode=BEHREND, w: WindowConfig = WindowConfig(),
             threads=1) -> PairTable:
    """P_{n, c[l]} (or χ P_n(X, c[l]) in euler mode) for 1 <= c <= c_max, n <= n_max."""
    solver = dt.pairs
    if not (isinstance(solver, PairSolver) and solver.mode == mode and solver.w == w):
        solver = PairSolver(dt, mode, w, threads)
    return solver.table(c_max, n_max)


def stratum_coefficients(c, n, cprime, dt: DTTable, mode=BEHREND,
                         w: WindowConfig = WindowConfig(), n_floor=None, threads=1):
    """{n′: coefficient of P_{n′, c′[l]}} in the recursion for P_{n, c[l]}."""
    floor_ = n_min(cprime) if n_floor is None else n_floor

    def bounds(s):
        if s != cprime:
            return 1, 0
        return floor_, n + w.n_pad

    eq = ClassEquation(XClass(0, 0, c, 0, n))
    out = defaultdict(Fraction)
    for term, weight in weighted_terms(eq, mode, w, bounds, threads):
        if term.is_trivial():
            continue
        out[term.nprime] -= weight * _dt_product(dt, term)
    return {k: v for k, v in sorted(out.items()) if v}


def orbifold_pt(u: XClass, pairs, dt: DTTable, mode=BEHREND, w: WindowConfig = WindowConfig(),
                threads=1):
    """Orbifold stable pair invariant of the class with ch(Φ_*γ) = u."""
    if u.rank != 0 or u.b0 != 0:
        raise WallxError("orbifold_pt takes a rank-zero class without β₀ part")
    eq = ClassEquation(u)
    bounds = local_bounds(ceil(u.n), w)
    total = Fraction(0)
    for term, weight in weighted_terms(eq, mode, w, bounds, threads):
        pair = pairs.get(term.cprime, term.nprime)
        if not pair:
            continue
        total += weight * _dt_product(dt, term) * pair
    return total


def constraint_relation(n0, amb: AmbientData, dt: DTTable, mode=BEHREND,
                        w: WindowConfig = WindowConfig(), shift=1, n_floor=0, threads=1):
    """Both sides of the twist constraint for the target β₀ + shift·[l], χ = n0."""
    u = XClass(0, 0, shift, 1, n0)
    relation = FormalRelation(target=(n0, shift))
    for twisted, side in ((False, relation.lhs), (True, relation.rhs)):
        eq = ClassEquation(u, amb, twisted)
        cap = ceil(max(eq.base.n, u.n)) + w.n_pad
        for term, weight in weighted_terms(eq, mode, w, floor_bounds(n_floor, cap), threads):
            coef = weight * _dt_product(dt, term)
            if coef:
                key = (term.nprime, term.cprime)
                side[key] = side.get(key, Fraction(0)) + coef
    for side in (relation.lhs, relation.rhs):
        for key in [k for k, v in side.items() if not v]:
            del side[key]
    log.info("[constraint] n0=%d shift=%d lhs=%d rhs=%d", n0, shift,
             len(relation.lhs), len(relation.rhs))
    return relation


# ---------------------------------------------------------------------------
# Saturation
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PtLocalJob:
    c_max: int
    n_max: int
    mode: str = BEHREND
    user_entries: tuple = ()
    threads: int = 1
    prefer_user: bool = False

    def __call__(self, w: WindowConfig):
        dt, _ = build_table(self.user_entries, w, self.threads, self.prefer_user)
        return dict(pt_local(self.c_max, self.n_max, dt, self.mode, w, self.threads).values)


@dataclass(frozen=True)
class OrbifoldJob:
    """Orbifold invariants of several classes over one shared table."""

    classes: Tuple[XClass, ...]
    mode: str = BEHREND
    user_entries: tuple = ()
    threads: int = 1
    prefer_user: bool = False

    def __call__(self, w: WindowConfig):
        dt, solver = build_table(self.user_entries, w, self.threads, self.prefer_user)
        pairs = solver if self.mode == BEHREND else PairSolver(dt, self.mode, w, self.threads)
        return {u: orbifold_pt(u, pairs, dt, self.mode, w, self.threads) for u in self.classes}


@dataclass(frozen=True)
class ConstraintJob:
    n0: int
    amb: AmbientData
    mode: str = BEHREND
    shift: int = 1
    n_floor: int = 0

    def __call__(self, w: WindowConfig):
        dt, _ = build_table((), w)
        rel = constraint_relation(self.n0, self.amb, dt, self.mode, w, self.shift, self.n_floor)
        return rel.lhs, rel.rhs


def saturation_check(computation, w: WindowConfig):
    """True iff enlarging every window by 1, saturation_steps times, changes nothing."""
    reference = computation(w)
    for step in range(1, w.saturation_steps + 1):
        if computation(w.enlarged(step)) != reference:
            log.warning("[saturation] result moved when windows grew by %d", step)
            return False
    return True


__all__ = [
    "BEHREND", "EULER", "MODES",
    "WindowConfig", "Term", "PairTable", "FormalRelation", "ClassEquation", "PairSolver",
    "enumerate_candidates", "enumerate_terms_star2", "weighted_terms",
    "sign_factor", "sign_exponent", "recursion_sign",
    "pt_local", "diagonal_coupling", "orbifold_pt", "constraint_relation", "stratum_coefficients",
    "build_table", "saturation_check", "PtLocalJob", "OrbifoldJob", "ConstraintJob",
]
