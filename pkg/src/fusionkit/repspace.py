"""Explicit irreducible modules with exact operator matrices.

A module is built weight space by weight space, walking down from the highest
weight vector. Basis vectors are honest f-monomials: the label (i1, ..., is)
means f_{i1} f_{i2} ... f_{is} applied to the highest weight vector. Inner
products come from the contravariant form, (f_i u, w) = (u, e_i w), which lets
each level's Gram matrix be assembled from the level above; a maximal
independent subset of the spanning monomials (first wins, in label order)
becomes the basis. Raising matrices are then forced by form-adjointness, so
bracket relations hold because the matrices are the true module action.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field

from .errors import CapExceededError, PreconditionError
from .linalg import RationalMatrix, kernel
from .multiplicity import WeightDiagram, weight_diagram, weyl_dimension
from .rootdata import (
    RootSystem,
    Weight,
    alpha_coordinates,
    is_dominant,
    wadd,
    wsub,
)

DEFAULT_DIM_CAP = 3000

MonomialLabel = tuple[int, ...]


@dataclass(eq=False)
class RepModule:
    """V^lam with weight-graded basis, Gram matrices, and operator blocks.

    All maps are keyed by the source weight: ``lowering[(i, b)]`` is
    f_i : V_b -> V_{b - alpha_i}, ``raising[(i, b)]`` is e_i : V_b -> V_{b + alpha_i},
    and the theta blocks shift by +-theta. Immutable once built (theta blocks
    are attached by build_theta_operators before the module is shared).
    """

    root_system: RootSystem
    highest: Weight
    diagram: WeightDiagram
    basis_index: dict[Weight, tuple[MonomialLabel, ...]]
    gram: dict[Weight, RationalMatrix]
    lowering: dict[tuple[int, Weight], RationalMatrix]
    raising: dict[tuple[int, Weight], RationalMatrix]
    theta_raising: dict[Weight, RationalMatrix] | None = None
    theta_lowering: dict[Weight, RationalMatrix] | None = None
    _gram_inv: dict[Weight, RationalMatrix] = field(default_factory=dict, repr=False)

    @property
    def dimension(self) -> int:
        return sum(len(v) for v in self.basis_index.values())

    def dim_at(self, beta: Weight) -> int:
        return len(self.basis_index.get(tuple(beta), ()))

    def gram_inverse(self, beta: Weight) -> RationalMatrix:
        beta = tuple(beta)
        got = self._gram_inv.get(beta)
        if got is None:
            got = self.gram[beta].inverse()
            self._gram_inv[beta] = got
        return got


def _depth_key(rs: RootSystem, lam: Weight):
    def key(nu: Weight):
        coords = alpha_coordinates(rs, wsub(lam, nu))
        return (int(sum(coords)), nu)

    return key


def build_module(rs: RootSystem, lam: Weight, max_dim: int = DEFAULT_DIM_CAP) -> RepModule:
    """Construct V^lam explicitly; rejects modules over the dimension cap."""
    lam = tuple(lam)
    if not is_dominant(lam):
        raise PreconditionError(f"{lam} is not dominant")
    dim = weyl_dimension(rs, lam)
    if dim > max_dim:
        raise CapExceededError(f"dim V^{lam} = {dim} > cap {max_dim}")
    diagram = weight_diagram(rs, lam)
    order = sorted(diagram.table, key=_depth_key(rs, lam))
    assert order[0] == lam

    basis: dict[Weight, tuple[MonomialLabel, ...]] = {lam: ((),)}
    gram: dict[Weight, RationalMatrix] = {lam: RationalMatrix.identity(1)}
    lowering: dict[tuple[int, Weight], RationalMatrix] = {}
    raising: dict[tuple[int, Weight], RationalMatrix] = {}
    gram_inv: dict[Weight, RationalMatrix] = {lam: RationalMatrix.identity(1)}

    for beta in order[1:]:
        dirs = [i for i in range(rs.rank) if wadd(beta, rs.simple_roots[i]) in basis]
        assert dirs, f"no way down to {beta}"
        ups = {i: wadd(beta, rs.simple_roots[i]) for i in dirs}
        dims = {i: len(basis[ups[i]]) for i in dirs}
        offsets = {}
        total = 0
        for i in dirs:
            offsets[i] = total
            total += dims[i]

        # spanning Gram, block by block: (f_i a, f_j b) = d_ij <up, a_i>(a,b) + (a, f_j e_i b)
        sg = [[None] * total for _ in range(total)]
        for i in dirs:
            gi = gram[ups[i]]
            for j in dirs:
                up_j = ups[j]
                cross = wadd(up_j, rs.simple_roots[i])  # == ups[i] + alpha_j
                block = None
                e_blk = raising.get((i, up_j))
                if e_blk is not None and e_blk.rows:
                    f_blk = lowering.get((j, cross))
                    assert f_blk is not None
                    block = gi @ (f_blk @ e_blk)
                if block is None:
                    block = RationalMatrix.zeros(dims[i], dims[j])
                if i == j:
                    c = ups[i][i]
                    if c:
                        block = block + gi.scale(c)
                for a in range(dims[i]):
                    row = block.row(a)
                    for b in range(dims[j]):
                        sg[offsets[i] + a][offsets[j] + b] = row[b]
        for s in range(total):
            for t in range(s):
                assert sg[s][t] == sg[t][s], f"Gram not symmetric at {beta}"

        target = diagram.table[beta]
        chosen = _greedy_independent(sg, total, target)
        assert len(chosen) == target, f"rank deficit at {beta}"

        span_pairs = [(i, b) for i in dirs for b in range(dims[i])]
        labels = tuple((i,) + basis[ups[i]][b] for i, b in (span_pairs[s] for s in chosen))
        basis[beta] = labels
        g_beta = RationalMatrix([[sg[a][b] for b in chosen] for a in chosen])
        gram[beta] = g_beta
        g_beta_inv = g_beta.inverse()
        gram_inv[beta] = g_beta_inv

        # coordinates of every spanning vector in the chosen basis
        rhs = RationalMatrix([[sg[a][s] for s in range(total)] for a in chosen], total)
        coords = g_beta_inv @ rhs
        for i in dirs:
            cols = [coords.column(offsets[i] + b) for b in range(dims[i])]
            lowering[(i, ups[i])] = RationalMatrix.from_columns(cols, target)
            # adjoint forces the raising block: (e u, w) = (u, f w)
            raising[(i, beta)] = gram_inv[ups[i]] @ lowering[(i, ups[i])].transpose() @ g_beta

    module = RepModule(
        root_system=rs,
        highest=lam,
        diagram=diagram,
        basis_index=basis,
        gram=gram,
        lowering=lowering,
        raising=raising,
    )
    module._gram_inv.update(gram_inv)
    assert module.dimension == dim
    return module


def _greedy_independent(sg, total: int, target: int) -> list[int]:
    """First-wins Gram-Schmidt selection of independent spanning vectors."""
    chosen: list[int] = []
    ortho: list[tuple[list, object]] = []
    for s in range(total):
        v = [0] * total
        v[s] = 1
        for u, nsq in ortho:
            c = sum(sg[s][t] * u[t] for t in range(total) if u[t]) / nsq
            if c:
                v = [a - c * b for a, b in zip(v, u)]
        nv = _sg_pair(sg, v, v)
        assert nv >= 0, "contravariant form not positive semidefinite on span"
        if nv > 0:
            chosen.append(s)
            ortho.append((v, nv))
            if len(chosen) == target:
                break
    return chosen


def _sg_pair(sg, x, y):
    total = 0
    for s, xs in enumerate(x):
        if not xs:
            continue
        row = sg[s]
        total += xs * sum(row[t] * yt for t, yt in enumerate(y) if yt)
    return total


def build_theta_operators(rs: RootSystem, module: RepModule) -> RepModule:
    """Attach e_theta (nested commutator of simple raisings) and its form-adjoint f_theta."""
    path = rs.theta_path

    def simple_raise(i: int):
        blocks = {b: mat for (j, b), mat in module.raising.items() if j == i}
        return blocks, rs.simple_roots[i]

    cur, shift = simple_raise(path[0])
    for i in path[1:]:
        nxt, nshift = simple_raise(i)
        cur, shift = _block_commutator(module, nxt, nshift, cur, shift)
    assert shift == rs.theta

    theta_raising: dict[Weight, RationalMatrix] = {}
    for src in module.basis_index:
        tgt = wadd(src, rs.theta)
        if tgt not in module.basis_index:
            continue
        blk = cur.get(src)
        if blk is None:
            blk = RationalMatrix.zeros(module.dim_at(tgt), module.dim_at(src))
        theta_raising[src] = blk
    if module.highest != (0,) * rs.rank:
        assert any(not blk.is_zero() for blk in theta_raising.values()), "e_theta vanished"

    theta_lowering: dict[Weight, RationalMatrix] = {}
    for src in module.basis_index:
        tgt = wsub(src, rs.theta)
        if tgt not in module.basis_index:
            continue
        e_blk = theta_raising[tgt]  # V_tgt -> V_src
        theta_lowering[src] = module.gram_inverse(tgt) @ e_blk.transpose() @ module.gram[src]

    module.theta_raising = theta_raising
    module.theta_lowering = theta_lowering
    return module


def _block_compose(module: RepModule, a_blocks, a_shift, b_blocks, b_shift):
    out = {}
    for src, mb in b_blocks.items():
        ma = a_blocks.get(wadd(src, b_shift))
        if ma is not None:
            out[src] = ma @ mb
    return out


def _block_commutator(module: RepModule, a_blocks, a_shift, b_blocks, b_shift):
    shift = wadd(a_shift, b_shift)
    ab = _block_compose(module, a_blocks, a_shift, b_blocks, b_shift)
    ba = _block_compose(module, b_blocks, b_shift, a_blocks, a_shift)
    out = {}
    for src in set(ab) | set(ba):
        tgt = wadd(src, shift)
        if tgt not in module.basis_index:
            continue
        rows, cols = module.dim_at(tgt), module.dim_at(src)
        first = ab.get(src)
        second = ba.get(src)
        if first is None:
            first = RationalMatrix.zeros(rows, cols)
        if second is None:
            second = RationalMatrix.zeros(rows, cols)
        out[src] = first - second
    return out, shift


_OPERATOR_KINDS = ("e", "f", "etheta", "ftheta")


def _operator_blocks(module: RepModule, op: str):
    """Source-keyed blocks plus weight shift for an operator id like "e0" or "ftheta"."""
    rs = module.root_system
    if op == "etheta" or op == "ftheta":
        if module.theta_raising is None or module.theta_lowering is None:
            raise PreconditionError("theta operators not built for this module")
        if op == "etheta":
            return module.theta_raising, rs.theta
        return module.theta_lowering, tuple(-x for x in rs.theta)
    kind, idx = op[0], op[1:]
    if kind not in ("e", "f") or not idx.isdigit():
        raise PreconditionError(f"unknown operator id {op!r}")
    i = int(idx)
    if i >= rs.rank:
        raise PreconditionError(f"operator index {i} out of range for {rs}")
    if kind == "e":
        blocks = {b: mat for (j, b), mat in module.raising.items() if j == i}
        return blocks, rs.simple_roots[i]
    blocks = {b: mat for (j, b), mat in module.lowering.items() if j == i}
    return blocks, tuple(-x for x in rs.simple_roots[i])


def operator_power_block(module: RepModule, op: str, p: int, beta: Weight) -> RationalMatrix:
    """Matrix of op^p out of V_beta (a zero-row matrix when the image space dies)."""
    beta = tuple(beta)
    if beta not in module.basis_index:
        raise PreconditionError(f"{beta} is not a weight of V^{module.highest}")
    if p < 0:
        raise PreconditionError("operator power must be nonnegative")
    blocks, shift = _operator_blocks(module, op)
    src_dim = module.dim_at(beta)
    mat = RationalMatrix.identity(src_dim)
    cur = beta
    for _ in range(p):
        tgt = wadd(cur, shift)
        blk = blocks.get(cur)
        if blk is None:
            blk = RationalMatrix.zeros(module.dim_at(tgt), module.dim_at(cur))
        mat = blk @ mat
        cur = tgt
        if mat.rows == 0:
            return RationalMatrix.zeros(0, src_dim)
    return mat


def power_kernel(module: RepModule, op: str, p: int, beta: Weight) -> RationalMatrix:
    """Kernel basis of the p-fold operator block out of V_beta."""
    return kernel(operator_power_block(module, op, p, beta))


_MODULE_MEMO: dict[tuple[str, Weight], RepModule] = {}
_MODULE_LOCK = threading.Lock()


def cached_module(rs: RootSystem, lam: Weight, max_dim: int = DEFAULT_DIM_CAP) -> RepModule:
    """Shared, fully built (theta included) module; cap still applies per call."""
    lam = tuple(lam)
    dim = weyl_dimension(rs, lam)
    if dim > max_dim:
        raise CapExceededError(f"dim V^{lam} = {dim} > cap {max_dim}")
    key = (str(rs.cartan_type), lam)
    got = _MODULE_MEMO.get(key)
    if got is not None:
        return got
    module = build_theta_operators(rs, build_module(rs, lam, max_dim))
    with _MODULE_LOCK:
        _MODULE_MEMO.setdefault(key, module)
    return _MODULE_MEMO[key]
