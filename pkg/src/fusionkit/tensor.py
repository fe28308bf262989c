"""Tensor product multiplicities, weight strings, and stability thresholds.

The production path is the Racah-Speiser signed sum over the Weyl group,
evaluated directly against the full weight diagram. A greedy
character-subtraction decomposition is kept alongside as an independent
oracle for tests: multiply two diagrams as multisets, then repeatedly peel
the highest remaining weight.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import PreconditionError
from .multiplicity import WeightDiagram, weight_diagram
from .rootdata import (
    RootSystem,
    Weight,
    alpha_coordinates,
    apply_matrix,
    is_dominant,
    wadd,
    weyl_elements,
    wsub,
)


@dataclass(frozen=True)
class TensorDecomposition:
    left: Weight
    right: Weight
    terms: dict[Weight, int]


@dataclass(frozen=True)
class WeightString:
    """Maximal string base - down*dir, ..., base, ..., base + up*dir in a diagram."""

    base: Weight
    direction: Weight
    down: int
    up: int


def _require_dominant(*weights: Weight) -> None:
    for w in weights:
        if not is_dominant(w):
            raise PreconditionError(f"{tuple(w)} is not dominant")


def tensor_multiplicity(rs: RootSystem, lam: Weight, mu: Weight, nu: Weight) -> int:
    """Number of copies of V^nu inside V^lam (x) V^mu."""
    _require_dominant(lam, mu, nu)
    diagram = weight_diagram(rs, lam)
    mu_rho = wadd(mu, rs.rho)
    nu_rho = wadd(nu, rs.rho)
    total = 0
    for mat, sign in weyl_elements(rs):
        arg = wsub(apply_matrix(mat, nu_rho), mu_rho)
        m = diagram.table.get(arg)
        if m:
            total += sign * m
    assert total >= 0
    return total


def tensor_decompose(rs: RootSystem, lam: Weight, mu: Weight) -> TensorDecomposition:
    """Full decomposition of V^lam (x) V^mu into irreducibles."""
    _require_dominant(lam, mu)
    diagram = weight_diagram(rs, lam)
    terms: dict[Weight, int] = {}
    for beta in diagram.table:
        nu = wadd(beta, mu)
        if not is_dominant(nu) or nu in terms:
            continue
        m = tensor_multiplicity(rs, lam, mu, nu)
        if m:
            terms[nu] = m
    return TensorDecomposition(left=tuple(lam), right=tuple(mu), terms=dict(sorted(terms.items())))


def product_diagram(d1: WeightDiagram, d2: WeightDiagram) -> dict[Weight, int]:
    """Pointwise multiset product of two weight diagrams."""
    out: dict[Weight, int] = {}
    for b, mb in d1.table.items():
        for c, mc in d2.table.items():
            key = wadd(b, c)
            out[key] = out.get(key, 0) + mb * mc
    return out


def greedy_decompose(rs: RootSystem, lam: Weight, mu: Weight) -> dict[Weight, int]:
    """Independent decomposition oracle by repeated top-weight peeling."""
    _require_dominant(lam, mu)
    remaining = product_diagram(weight_diagram(rs, lam), weight_diagram(rs, mu))
    top = wadd(lam, mu)
    depths: dict[Weight, int] = {}
    for w in remaining:
        coords = alpha_coordinates(rs, wsub(top, w))
        assert all(c.denominator == 1 and c >= 0 for c in coords)
        depths[w] = int(sum(coords))
    terms: dict[Weight, int] = {}
    while remaining:
        head = min(remaining, key=lambda w: (depths[w], w))
        count = remaining[head]
        assert count > 0 and is_dominant(head)
        terms[head] = count
        for w, m in weight_diagram(rs, head).table.items():
            left = remaining[w] - count * m
            assert left >= 0
            if left:
                remaining[w] = left
            else:
                del remaining[w]
    return dict(sorted(terms.items()))


def weight_string(diagram: WeightDiagram, beta: Weight, direction: Weight) -> WeightString:
    """Scan the maximal arithmetic string through beta in a root direction."""
    beta = tuple(beta)
    if beta not in diagram.table:
        raise PreconditionError(f"{beta} is not a weight of V^{diagram.highest}")
    up = 0
    cur = wadd(beta, direction)
    while cur in diagram.table:
        up += 1
        cur = wadd(cur, direction)
    down = 0
    cur = wsub(beta, direction)
    while cur in diagram.table:
        down += 1
        cur = wsub(cur, direction)
    return WeightString(base=beta, direction=tuple(direction), down=down, up=up)


def stability_threshold(diagram: WeightDiagram, beta: Weight, j: int) -> int:
    """Upper string length q through beta along alpha_j.

    Once <mu, alpha_j> reaches this value, growing mu along the j-th
    fundamental weight no longer changes the outer multiplicity at beta + mu.
    """
    rs = diagram.root_system
    if not 0 <= j < rs.rank:
        raise PreconditionError(f"simple root index {j} out of range for {rs}")
    return weight_string(diagram, beta, rs.simple_roots[j]).up
