"""
Wall-crossing coefficients: ι, oriented trees, and the U / f / g functions.

u_coeff evaluates the closed form for one rank-one class among rank-zero
pushforwards; u_coeff_oracle evaluates the general definition by comparing
central-charge phases in the two limits and is used to cross-check it.
"""

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import factorial
from typing import Callable, FrozenSet, Optional, Tuple

import networkx as nx
import sympy

from wallx.errors import InvalidClass
from wallx.lattice import P2Class, chi_ab, chi_ae, chi_ae_L

log = logging.getLogger(__name__)

# Above this many vertices tree sums use the matrix-tree theorem.
PRUFER_LIMIT = 5

ONE = "rank-one"
INFINITY = "infinity"
ZERO = "zero"
# Any phase strictly between π/2 and π gives the same comparisons.
_COT_PSI = Fraction(-1)


def iota(x):
    return 1 if x > 0 else -1


def iota_eps(a, b):
    """lim_{ε→0⁺} ι(a + εb)."""
    return 1 if a > 0 or (a == 0 and b > 0) else -1


# ---------------------------------------------------------------------------
# Types
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OrientedTree:
    k: int
    edges: FrozenSet[Tuple[int, int]]

    def is_spanning(self):
        g = nx.Graph()
        g.add_nodes_from(range(1, self.k + 1))
        g.add_edges_from(self.edges)
        return len(self.edges) == self.k - 1 and nx.is_connected(g)


@dataclass(frozen=True)
class PartsTuple:
    """k slots; slot e holds the rank-one class, the others hold parts in order."""

    k: int
    e: int
    parts: Tuple[P2Class, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if not 1 <= self.e <= self.k or len(self.parts) != self.k - 1:
            raise InvalidClass(f"{len(self.parts)} parts do not fit k={self.k}, e={self.e}")
        for p in self.parts:
            if p.c_hat <= 0:
                raise InvalidClass(f"part {p} has ĉ = {p.c_hat} <= 0")

    def slots(self):
        """Slot list of length k with None at the rank-one position."""
        out = list(self.parts)
        out.insert(self.e - 1, None)
        return out


# ---------------------------------------------------------------------------
# Trees
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def _trees(k):
    if k == 1:
        return (OrientedTree(1, frozenset()),)
    out = []
    for seq in itertools.product(range(k), repeat=k - 2):
        g = nx.from_prufer_sequence(list(seq))
        edges = frozenset((min(u, v) + 1, max(u, v) + 1) for u, v in g.edges())
        out.append(OrientedTree(k, edges))
    return tuple(out)


def enumerate_trees(k):
    """All spanning trees on 1..k, each edge oriented from the smaller label."""
    if k < 1:
        raise ValueError("k must be positive")
    return list(_trees(k))


def kirchhoff_tree_sum(k, weights):
    """Σ_T ∏_{(i,j)∈T} w(i, j) via a cofactor of the weighted Laplacian."""
    if k == 1:
        return Fraction(1)
    lap = sympy.zeros(k - 1, k - 1)
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            w = Fraction(weights[(i, j)])
            w = sympy.Rational(w.numerator, w.denominator)
            for a, b in ((i, j), (j, i)):
                if a < k:
                    lap[a - 1, a - 1] += w
                    if b < k:
                        lap[a - 1, b - 1] -= w
    det = sympy.Rational(lap.det(method="bareiss"))
    return Fraction(int(det.p), int(det.q))


def tree_weight_sum(k, weights, method=None):
    """Σ over G(k) of the product of edge weights; weights[(i, j)] for i < j."""
    method = method or ("prufer" if k <= PRUFER_LIMIT else "kirchhoff")
    if method == "kirchhoff":
        return kirchhoff_tree_sum(k, weights)
    total = Fraction(0)
    for tree in _trees(k):
        prod = Fraction(1)
        for edge in tree.edges:
            prod *= weights[edge]
            if not prod:
                break
        total += prod
    return total


# ---------------------------------------------------------------------------
# U, closed form
# ---------------------------------------------------------------------------

def _admissible_blocks(slots, e):
    """Consecutive blocks of slot indices; e alone, other blocks proportional."""
    k = len(slots)

    def walk(i):
        if i == k:
            yield ()
            return
        if i == e - 1:
            for rest in walk(i + 1):
                yield ((i,),) + rest
            return
        j = i
        while j < k and j != e - 1 and slots[j].proportional_to(slots[i]):
            for rest in walk(j + 1):
                yield (tuple(range(i, j + 1)),) + rest
            j += 1

    return walk(0)


def _hatted_sum(parts):
    r = sum((p.r_hat for p in parts), Fraction(0))
    c = sum((p.c_hat for p in parts), Fraction(0))
    m = sum((p.m_hat for p in parts), Fraction(0))
    return r, c, m


def u_coeff(pt: PartsTuple) -> Fraction:
    slots = pt.slots()
    total = Fraction(0)
    for blocks in _admissible_blocks(slots, pt.e):
        kp = len(blocks)
        ep = next(i for i, b in enumerate(blocks, 1) if b == (pt.e - 1,))
        sums = {}
        for i, b in enumerate(blocks, 1):
            if i != ep:
                sums[i] = _hatted_sum([slots[j] for j in b])
        r = {i: s[0] for i, s in sums.items()}
        slope = {i: s[0] / s[1] for i, s in sums.items()}
        ratio = {i: s[2] / s[1] for i, s in sums.items()}
        m = {i: s[2] for i, s in sums.items()}

        factor = 1
        prefix = Fraction(0)
        for i in range(1, ep - 1):
            prefix += m[i]
            factor *= iota_eps(slope[i + 1] - slope[i], ratio[i] - ratio[i + 1]) - iota(prefix)
            if not factor:
                break
        if factor and ep >= 2:
            factor *= iota(-r[ep - 1]) - iota(prefix + m[ep - 1])
        if factor and ep <= kp - 1:
            suffix = sum((m[i] for i in range(ep + 1, kp + 1)), Fraction(0))
            factor *= -iota(-r[ep + 1]) + iota(suffix)
            for i in range(ep + 1, kp):
                suffix -= m[i]
                factor *= iota_eps(slope[i + 1] - slope[i], ratio[i] - ratio[i + 1]) + iota(suffix)
                if not factor:
                    break
        if not factor:
            continue
        weight = Fraction(factor, 2 ** (kp - 1))
        for b in blocks:
            weight /= factorial(len(b))
        total += weight
    return total


# ---------------------------------------------------------------------------
# U, general definition
# ---------------------------------------------------------------------------

def _cot_expansion(v, regime):
    """Leading terms of cot arg Z_t, ordered by dominance in the given limit."""
    if v == ONE:
        return (Fraction(0), _COT_PSI, Fraction(0))
    r, c, m = v
    if regime == INFINITY:
        return (r / (2 * c), Fraction(0), -m / c)
    return (-m / c, Fraction(0), r / (2 * c))


def _arg_cmp(x, y, regime):
    """+1 if arg Z(x) > arg Z(y) in the limit, 0 if equal, -1 otherwise."""
    kx, ky = _cot_expansion(x, regime), _cot_expansion(y, regime)
    if kx == ky:
        return 0
    return 1 if kx < ky else -1


def _class_sum(vs):
    if any(v == ONE for v in vs):
        return ONE
    return tuple(sum(col, Fraction(0)) for col in zip(*vs))


def _joyce_s(vs):
    """S({v_1..v_k}) from the two phase conditions at each split."""
    a = 0
    for i in range(len(vs) - 1):
        at_inf = _arg_cmp(vs[i], vs[i + 1], INFINITY)
        at_zero = _arg_cmp(_class_sum(vs[:i + 1]), _class_sum(vs[i + 1:]), ZERO)
        if at_inf <= 0 and at_zero > 0:
            a += 1
        elif not (at_inf > 0 and at_zero <= 0):
            return 0
    return -1 if a % 2 else 1


def _compositions(n):
    """Non-decreasing surjections {1..n} -> {1..n'} as tuples of block sizes."""
    if n == 0:
        yield ()
        return
    for first in range(1, n + 1):
        for rest in _compositions(n - first):
            yield (first,) + rest


def _split(seq, sizes):
    out, pos = [], 0
    for s in sizes:
        out.append(seq[pos:pos + s])
        pos += s
    return out


def u_coeff_oracle(pt: PartsTuple) -> Fraction:
    vs = [ONE if p is None else p.hatted for p in pt.slots()]
    total = Fraction(0)
    for sizes in _compositions(len(vs)):
        blocks = _split(vs, sizes)
        if any(_arg_cmp(x, y, INFINITY) != 0 for b in blocks for x in b for y in b):
            continue
        vdag = [_class_sum(b) for b in blocks]
        block_weight = Fraction(1)
        for s in sizes:
            block_weight /= factorial(s)
        for outer in _compositions(len(vdag)):
            groups = _split(vdag, outer)
            sums = [_class_sum(g) for g in groups]
            if any(_arg_cmp(x, y, ZERO) != 0 for x in sums for y in sums):
                continue
            s_prod = 1
            for g in groups:
                s_prod *= _joyce_s(g)
                if not s_prod:
                    break
            if s_prod:
                kk = len(groups)
                total += Fraction(s_prod * (-1) ** (kk - 1), kk) * block_weight
    return total


# ---------------------------------------------------------------------------
# f and g
# ---------------------------------------------------------------------------

ChiE = Callable[[P2Class, int, Fraction], int]
ChiPair = Callable[[P2Class, P2Class], int]


def edge_weights(pt: PartsTuple, r, d_beta, chi_e: ChiE = chi_ae, chi_pair: ChiPair = chi_ab):
    slots = pt.slots()
    weights = {}
    for i in range(1, pt.k + 1):
        for j in range(i + 1, pt.k + 1):
            if i == pt.e:
                weights[(i, j)] = iota(pt.e - j) * chi_e(slots[j - 1], r, d_beta)
            elif j == pt.e:
                weights[(i, j)] = iota(pt.e - i) * chi_e(slots[i - 1], r, d_beta)
            else:
                weights[(i, j)] = chi_pair(slots[i - 1], slots[j - 1])
    return weights


def wall_coefficient(pt: PartsTuple, r, d_beta, chi_e: ChiE = chi_ae,
                     chi_pair: ChiPair = chi_ab, u: Optional[Fraction] = None):
    """(1/2^{k−1}) · U · Σ_{G(k)} ∏ edge weights."""
    u = u_coeff(pt) if u is None else u
    if not u:
        return Fraction(0)
    trees = tree_weight_sum(pt.k, edge_weights(pt, r, d_beta, chi_e, chi_pair))
    return u * trees / 2 ** (pt.k - 1)


def f_coeff(pt: PartsTuple, r, d_beta, u=None):
    return wall_coefficient(pt, r, d_beta, chi_ae, chi_ab, u)


def g_coeff(pt: PartsTuple, r, d_beta, u=None):
    return wall_coefficient(pt, r, d_beta, chi_ae_L, chi_ab, u)
