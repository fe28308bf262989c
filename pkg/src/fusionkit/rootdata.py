"""Cartan data, roots, weights and the finite Weyl group.

Weights are plain integer tuples in fundamental-weight coordinates, so the
pairing ``<lam, alpha_j^vee>`` is just ``lam[j]`` and the simple root
``alpha_i`` is column ``i`` of the stored Cartan matrix. The bilinear form is
exact rational, normalized so the highest root theta has squared length 2.
Everything built here is immutable after construction and safe to share.
"""

from __future__ import annotations

import math
import re
import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce

from .errors import CapExceededError, PreconditionError, UnsupportedTypeError

Weight = tuple[int, ...]

DEFAULT_WEYL_CAP = 2_000_000

_EXCEPTIONAL_RANKS = {"E": (6, 7, 8), "F": (4,), "G": (2,)}
_MIN_RANK = {"A": 1, "B": 2, "C": 2, "D": 3}

_E_ORDERS = {6: 51_840, 7: 2_903_040, 8: 696_729_600}


def weyl_group_order(series: str, rank: int) -> int:
    if series == "A":
        return math.factorial(rank + 1)
    if series in ("B", "C"):
        return 2**rank * math.factorial(rank)
    if series == "D":
        return 2 ** (rank - 1) * math.factorial(rank)
    if series == "E":
        return _E_ORDERS[rank]
    if series == "F":
        return 1152
    return 12  # G2


@dataclass(frozen=True)
class CartanType:
    series: str
    rank: int

    def __post_init__(self):
        if self.series not in "ABCDEFG":
            raise UnsupportedTypeError(f"unknown series {self.series!r}")
        if self.series in _EXCEPTIONAL_RANKS:
            if self.rank not in _EXCEPTIONAL_RANKS[self.series]:
                raise UnsupportedTypeError(f"{self.series}{self.rank} is not a finite type")
        elif self.rank < _MIN_RANK[self.series]:
            raise UnsupportedTypeError(
                f"{self.series} requires rank >= {_MIN_RANK[self.series]}"
            )

    @property
    def weyl_order(self) -> int:
        return weyl_group_order(self.series, self.rank)

    def __str__(self) -> str:
        return f"{self.series}{self.rank}"


def parse_cartan_type(text: str, max_weyl_order: int = DEFAULT_WEYL_CAP) -> CartanType:
    """Parse strings like "A2", "B3", "G2" and enforce the Weyl-order cap."""
    m = re.fullmatch(r"([A-Ga-g])([0-9]+)", text.strip())
    if not m:
        raise UnsupportedTypeError(f"cannot parse Cartan type {text!r}")
    ct = CartanType(m.group(1).upper(), int(m.group(2)))
    if ct.weyl_order > max_weyl_order:
        raise CapExceededError(
            f"{ct} has Weyl group order {ct.weyl_order} > cap {max_weyl_order}"
        )
    return ct


# -- weight tuple helpers ----------------------------------------------------

def wadd(a: Weight, b: Weight) -> Weight:
    return tuple(x + y for x, y in zip(a, b))


def wsub(a: Weight, b: Weight) -> Weight:
    return tuple(x - y for x, y in zip(a, b))


def wneg(a: Weight) -> Weight:
    return tuple(-x for x in a)


def wscale(c: int, a: Weight) -> Weight:
    return tuple(c * x for x in a)


def is_dominant(w: Weight) -> bool:
    return all(x >= 0 for x in w)


def apply_matrix(m: tuple[tuple[int, ...], ...], w: Weight) -> Weight:
    return tuple(sum(row[c] * w[c] for c in range(len(w))) for row in m)


def _mat_mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


# -- Dynkin diagram data -----------------------------------------------------

def _dynkin(series: str, rank: int):
    """Edges of the Dynkin diagram plus half squared lengths d_i = (a_i,a_i)/2.

    Lengths are normalized so long roots have d = 1; theta is always long, so
    (theta, theta) = 2 comes out automatically.
    """
    edges = [(i, i + 1) for i in range(rank - 1)]
    d = [Fraction(1)] * rank
    if series == "B":
        d[-1] = Fraction(1, 2)
    elif series == "C":
        d = [Fraction(1, 2)] * (rank - 1) + [Fraction(1)]
    elif series == "D":
        edges = [(i, i + 1) for i in range(rank - 2)] + [(rank - 3, rank - 1)]
    elif series == "E":
        chain = [0, 2, 3, 4, 5, 6, 7][: rank - 1]
        edges = list(zip(chain, chain[1:])) + [(1, 3)]
    elif series == "F":
        d = [Fraction(1), Fraction(1), Fraction(1, 2), Fraction(1, 2)]
    elif series == "G":
        d = [Fraction(1), Fraction(1, 3)]
    return edges, d


@dataclass(frozen=True)
class RootSystem:
    """Combinatorial skeleton of a finite simple Lie algebra.

    ``cartan_matrix`` is oriented so its columns are the simple roots in
    fundamental-weight coordinates. ``sym_form`` holds the Gram matrix
    (lam_i, lam_j) of the fundamental weights.
    """

    cartan_type: CartanType
    cartan_matrix: tuple[tuple[int, ...], ...]
    cartan_inverse: tuple[tuple[Fraction, ...], ...]
    simple_roots: tuple[Weight, ...]
    root_halfnorms: tuple[Fraction, ...]  # d_i = (alpha_i, alpha_i)/2
    sym_form: tuple[tuple[Fraction, ...], ...]
    positive_roots: tuple[Weight, ...]
    theta: Weight
    theta_path: tuple[int, ...]  # simple indices; every partial sum is a root
    marks: tuple[int, ...]
    comarks: tuple[int, ...]
    rho: Weight
    dual_coxeter: int
    w0_word: tuple[int, ...]
    w0_matrix: tuple[tuple[int, ...], ...]
    dual_permutation: tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.cartan_type.rank

    @property
    def weyl_order(self) -> int:
        return self.cartan_type.weyl_order

    def __str__(self) -> str:
        return str(self.cartan_type)


def _reflection_matrix(cartan_matrix, i: int, rank: int):
    return tuple(
        tuple((1 if j == m else 0) - (cartan_matrix[j][i] if m == i else 0) for m in range(rank))
        for j in range(rank)
    )


def _close_positive_roots(simple: list[Weight], rank: int):
    """Height-by-height closure of the simple roots under root addition."""
    alpha_coords: dict[Weight, tuple[int, ...]] = {}
    parent: dict[Weight, tuple[Weight, int]] = {}
    level = []
    for i, a in enumerate(simple):
        alpha_coords[a] = tuple(1 if j == i else 0 for j in range(rank))
        level.append(a)
    ordered = list(level)
    while level:
        nxt = []
        for beta in level:
            for i in range(rank):
                down = 0
                cur = wsub(beta, simple[i])
                while cur in alpha_coords:
                    down += 1
                    cur = wsub(cur, simple[i])
                if down - beta[i] > 0:  # string continues upward
                    gamma = wadd(beta, simple[i])
                    if gamma not in alpha_coords:
                        ac = list(alpha_coords[beta])
                        ac[i] += 1
                        alpha_coords[gamma] = tuple(ac)
                        parent[gamma] = (beta, i)
                        nxt.append(gamma)
                        ordered.append(gamma)
        level = nxt
    ordered.sort(key=lambda r: (sum(alpha_coords[r]), r))
    return ordered, alpha_coords, parent


_ROOT_SYSTEM_MEMO: dict[str, RootSystem] = {}
_WEYL_MEMO: dict[str, list[tuple[tuple[tuple[int, ...], ...], int]]] = {}
_MEMO_LOCK = threading.Lock()


def build_root_system(t: CartanType | str, max_weyl_order: int = DEFAULT_WEYL_CAP) -> RootSystem:
    """Construct the full root datum for a supported Cartan type."""
    if isinstance(t, str):
        t = parse_cartan_type(t, max_weyl_order)
    elif t.weyl_order > max_weyl_order:
        raise CapExceededError(
            f"{t} has Weyl group order {t.weyl_order} > cap {max_weyl_order}"
        )
    key = str(t)
    got = _ROOT_SYSTEM_MEMO.get(key)
    if got is not None:
        return got

    rank = t.rank
    edges, d = _dynkin(t.series, rank)
    pair_form = [[Fraction(0)] * rank for _ in range(rank)]
    for i in range(rank):
        pair_form[i][i] = 2 * d[i]
    for i, j in edges:
        v = -max(d[i], d[j])
        pair_form[i][j] = v
        pair_form[j][i] = v
    # M[i][j] = <alpha_j, alpha_i^vee> = (alpha_i, alpha_j)/d_i; columns are simple roots
    cartan = []
    for i in range(rank):
        row = []
        for j in range(rank):
            q = pair_form[i][j] / d[i]
            assert q.denominator == 1
            row.append(int(q))
        cartan.append(tuple(row))
    cartan = tuple(cartan)
    simple = [tuple(cartan[j][i] for j in range(rank)) for i in range(rank)]

    from .linalg import RationalMatrix

    minv = RationalMatrix(cartan).inverse()
    cartan_inverse = tuple(tuple(minv.row(i)) for i in range(rank))
    # sym_form G solves G @ M = diag(d), i.e. (lam_i, alpha_j) = d_j delta_ij
    sym = tuple(tuple(d[i] * minv[i, j] for j in range(rank)) for i in range(rank))
    for i in range(rank):
        for j in range(rank):
            assert sym[i][j] == sym[j][i]

    positive, alpha_coords, parent = _close_positive_roots(simple, rank)
    heights = {r: sum(alpha_coords[r]) for r in positive}
    max_h = max(heights.values())
    tops = [r for r in positive if heights[r] == max_h]
    assert len(tops) == 1, "highest root must be unique"
    theta = tops[0]
    marks = alpha_coords[theta]
    comarks = []
    for i in range(rank):
        c = marks[i] * d[i]
        assert c.denominator == 1
        comarks.append(int(c))
    # theta dominates every root in the partial order
    for r in positive:
        assert all(m - a >= 0 for m, a in zip(marks, alpha_coords[r]))

    path = []
    node = theta
    while node in parent:
        node, i = parent[node]
        path.append(i)
    first = next(i for i, a in enumerate(simple) if a == node)
    path.append(first)
    path.reverse()

    rho = (1,) * rank

    def _form(a: Weight, b: Weight) -> Fraction:
        return sum(sym[i][j] * a[i] * b[j] for i in range(rank) for j in range(rank))

    assert _form(theta, theta) == 2
    dual_coxeter = 1 + sum(comarks)

    # fold -rho to dominance; the recorded word is reduced and gives w0
    refls = [_reflection_matrix(cartan, i, rank) for i in range(rank)]
    x = wneg(rho)
    word: list[int] = []
    while True:
        ineg = next((i for i, c in enumerate(x) if c < 0), None)
        if ineg is None:
            break
        word.append(ineg)
        x = apply_matrix(refls[ineg], x)
    assert x == rho and len(word) == len(positive)
    w0 = reduce(_mat_mul, (refls[i] for i in word))
    sigma = []
    for i in range(rank):
        img = wneg(apply_matrix(w0, simple[i]))
        sigma.append(simple.index(img))
    sigma = tuple(sigma)
    assert tuple(sigma[sigma[i]] for i in range(rank)) == tuple(range(rank))

    rs = RootSystem(
        cartan_type=t,
        cartan_matrix=cartan,
        cartan_inverse=cartan_inverse,
        simple_roots=tuple(simple),
        root_halfnorms=tuple(d),
        sym_form=sym,
        positive_roots=tuple(positive),
        theta=theta,
        theta_path=tuple(path),
        marks=tuple(marks),
        comarks=tuple(comarks),
        rho=rho,
        dual_coxeter=dual_coxeter,
        w0_word=tuple(word),
        w0_matrix=w0,
        dual_permutation=sigma,
    )
    with _MEMO_LOCK:
        _ROOT_SYSTEM_MEMO.setdefault(key, rs)
    return _ROOT_SYSTEM_MEMO[key]


# -- operations ---------------------------------------------------------------

def pairing(rs: RootSystem, lam: Weight, j: int) -> int:
    """<lam, alpha_j^vee>; coordinate-reading in the fundamental basis."""
    if not 0 <= j < rs.rank:
        raise PreconditionError(f"simple root index {j} out of range for {rs}")
    return lam[j]


def form(rs: RootSystem, lam: Weight, mu: Weight) -> Fraction:
    """Symmetric bilinear form with (theta, theta) = 2."""
    sym = rs.sym_form
    total = Fraction(0)
    for i, a in enumerate(lam):
        if not a:
            continue
        row = sym[i]
        total += a * sum(row[j] * b for j, b in enumerate(mu) if b)
    return total


def root_pairing(rs: RootSystem, lam: Weight, root: Weight) -> Fraction:
    """<lam, root^vee> = 2 (lam, root) / (root, root) for any root."""
    return 2 * form(rs, lam, root) / form(rs, root, root)


def reflect(rs: RootSystem, i: int, lam: Weight) -> Weight:
    """Simple reflection r_i(lam) = lam - <lam, alpha_i^vee> alpha_i."""
    if not 0 <= i < rs.rank:
        raise PreconditionError(f"simple root index {i} out of range for {rs}")
    c = lam[i]
    if not c:
        return lam
    col = rs.simple_roots[i]
    return tuple(x - c * col[j] for j, x in enumerate(lam))


def weyl_elements(rs: RootSystem) -> list[tuple[tuple[tuple[int, ...], ...], int]]:
    """The full Weyl group as (action matrix, sign) pairs, identity first."""
    key = str(rs.cartan_type)
    got = _WEYL_MEMO.get(key)
    if got is not None:
        return got
    rank = rs.rank
    refls = [_reflection_matrix(rs.cartan_matrix, i, rank) for i in range(rank)]
    ident = tuple(tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank))
    elements = [(ident, 1)]
    seen = {ident}
    queue = [(ident, 1)]
    while queue:
        nxt = []
        for mat, sign in queue:
            for r in refls:
                cand = _mat_mul(r, mat)
                if cand not in seen:
                    seen.add(cand)
                    item = (cand, -sign)
                    elements.append(item)
                    nxt.append(item)
        queue = nxt
    assert len(elements) == rs.weyl_order
    with _MEMO_LOCK:
        _WEYL_MEMO.setdefault(key, elements)
    return _WEYL_MEMO[key]


def dual_weight(rs: RootSystem, lam: Weight) -> Weight:
    """lam* = -w0(lam); permutes fundamental coordinates by the diagram involution."""
    sigma = rs.dual_permutation
    return tuple(lam[sigma[j]] for j in range(rs.rank))


def dominant_in_orbit(rs: RootSystem, mu: Weight) -> Weight:
    """The unique dominant weight in the W-orbit of mu (no rho shift)."""
    x = mu
    while True:
        i = next((i for i, c in enumerate(x) if c < 0), None)
        if i is None:
            return x
        x = reflect(rs, i, x)


def make_dominant(rs: RootSystem, mu: Weight) -> tuple[Weight, int]:
    """Rho-shifted fold of mu to the dominant chamber.

    Returns (w(mu+rho)-rho, sign of w) when mu+rho is regular; sign 0 when
    mu+rho lies on a reflection wall (the weight slot is then meaningless).
    """
    x = wadd(mu, rs.rho)
    sign = 1
    while True:
        i = next((i for i, c in enumerate(x) if c < 0), None)
        if i is None:
            break
        x = reflect(rs, i, x)
        sign = -sign
    if any(c == 0 for c in x):
        sign = 0
    return wsub(x, rs.rho), sign


def alpha_coordinates(rs: RootSystem, w: Weight) -> tuple[Fraction, ...]:
    """Coordinates of w in the simple-root basis (rational in general)."""
    inv = rs.cartan_inverse
    return tuple(
        sum(inv[i][j] * w[j] for j in range(rs.rank)) for i in range(rs.rank)
    )


def in_root_lattice_below(rs: RootSystem, lower: Weight, upper: Weight) -> bool:
    """Whether upper - lower is a nonnegative integer sum of simple roots."""
    for c in alpha_coordinates(rs, wsub(upper, lower)):
        if c.denominator != 1 or c < 0:
            return False
    return True
