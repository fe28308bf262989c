"""Level-k fusion coefficients with three independent backends.

The production backend cuts the PRV subspace of V^lam_beta further by a power
of the raising operator for the highest root ("Walton space"); its dimension
is the fusion coefficient. Two oracles cross-certify it: Kac-Walton affine
folding of tensor multiplicities at shifted level k + h_vee, and a direct
Frenkel-Zhu computation on the tensor product module (invariant forms that
kill e_theta^{k-<nu,theta>+1} of everything).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CapExceededError, PreconditionError
from .linalg import RationalMatrix
from .multiplicity import weight_diagram, weyl_dimension
from .repspace import (
    DEFAULT_DIM_CAP,
    RepModule,
    _operator_blocks,
    cached_module,
    operator_power_block,
)
from .rootdata import (
    RootSystem,
    Weight,
    dual_weight,
    is_dominant,
    reflect,
    wadd,
    wneg,
    wscale,
    wsub,
)
from .tensor import tensor_decompose

DEFAULT_FZ_CAP = 400

_FOLD_LIMIT = 100_000


def check_level(k: int) -> int:
    if not isinstance(k, int) or isinstance(k, bool) or k < 1:
        raise PreconditionError(f"level must be a positive integer, got {k!r}")
    return k


def theta_pairing(rs: RootSystem, w: Weight) -> int:
    """<w, theta> as an integer; theta is its own coroot here."""
    return sum(c * x for c, x in zip(rs.comarks, w))


def in_alcove(rs: RootSystem, k: int, w: Weight) -> bool:
    return is_dominant(w) and theta_pairing(rs, w) <= k


def _require_alcove(rs: RootSystem, k: int, w: Weight, name: str) -> None:
    if not is_dominant(w):
        raise PreconditionError(f"{name} = {tuple(w)} is not dominant")
    if theta_pairing(rs, w) > k:
        raise PreconditionError(
            f"level violation: <{name}, theta> = {theta_pairing(rs, w)} > k = {k}"
        )


def level_alcove(rs: RootSystem, k: int) -> list[Weight]:
    """All dominant weights with <lam, theta> <= k, sorted lexicographically."""
    check_level(k)
    out: list[Weight] = []

    def rec(prefix: tuple[int, ...], used: int):
        i = len(prefix)
        if i == rs.rank:
            out.append(prefix)
            return
        c = 0
        while used + c * rs.comarks[i] <= k:
            rec(prefix + (c,), used + c * rs.comarks[i])
            c += 1

    rec((), 0)
    return sorted(out)


def prv_dimension(rs: RootSystem, lam: Weight, beta: Weight, mu: Weight,
                  max_dim: int = DEFAULT_DIM_CAP) -> int:
    """dim{v in V^lam_beta : e_j^{<mu,alpha_j>+1} v = 0 for all j}.

    Equals the tensor multiplicity of V^{beta+mu} in V^lam (x) V^mu.
    """
    lam, beta, mu = tuple(lam), tuple(beta), tuple(mu)
    for w, name in ((lam, "lam"), (mu, "mu"), (wadd(beta, mu), "beta+mu")):
        if not is_dominant(w):
            raise PreconditionError(f"{name} = {w} is not dominant")
    module = cached_module(rs, lam, max_dim)
    if beta not in module.basis_index:
        raise PreconditionError(f"beta = {beta} is not a weight of V^{lam}")
    blocks = [
        operator_power_block(module, f"e{j}", mu[j] + 1, beta) for j in range(rs.rank)
    ]
    stacked = RationalMatrix.vstack(blocks, cols=module.dim_at(beta))
    return module.dim_at(beta) - stacked.rank()


def walton_dimension(rs: RootSystem, k: int, lam: Weight, beta: Weight, mu: Weight,
                     max_dim: int = DEFAULT_DIM_CAP) -> int:
    """Walton-space dimension: the PRV conditions plus e_theta^{k-<beta+mu,theta>+1} v = 0."""
    check_level(k)
    lam, beta, mu = tuple(lam), tuple(beta), tuple(mu)
    _require_alcove(rs, k, lam, "lam")
    _require_alcove(rs, k, mu, "mu")
    module = cached_module(rs, lam, max_dim)
    if beta not in module.basis_index:
        raise PreconditionError(f"beta = {beta} is not a weight of V^{lam}")
    top = wadd(beta, mu)
    _require_alcove(rs, k, top, "beta+mu")
    p_theta = k - theta_pairing(rs, top) + 1
    assert p_theta >= 1
    blocks = [
        operator_power_block(module, f"e{j}", mu[j] + 1, beta) for j in range(rs.rank)
    ]
    blocks.append(operator_power_block(module, "etheta", p_theta, beta))
    stacked = RationalMatrix.vstack(blocks, cols=module.dim_at(beta))
    return module.dim_at(beta) - stacked.rank()


def fusion_coefficient(rs: RootSystem, k: int, lam: Weight, mu: Weight, nu: Weight,
                       max_dim: int = DEFAULT_DIM_CAP) -> int:
    """N^(k)nu_{lam,mu}, computed on the Walton space with beta = nu - mu."""
    check_level(k)
    lam, mu, nu = tuple(lam), tuple(mu), tuple(nu)
    _require_alcove(rs, k, lam, "lam")
    _require_alcove(rs, k, mu, "mu")
    _require_alcove(rs, k, nu, "nu")
    beta = wsub(nu, mu)
    if beta not in weight_diagram(rs, lam).table:
        return 0
    return walton_dimension(rs, k, lam, beta, mu, max_dim)


def affine_fold(rs: RootSystem, x: Weight, shifted_level: int) -> tuple[Weight | None, int]:
    """Fold x into the open fundamental alcove at the shifted level.

    Reflects at simple walls and at <x, theta> = shifted_level, accumulating
    the sign; wall hits return (None, 0).
    """
    sign = 1
    for _ in range(_FOLD_LIMIT):
        i = next((i for i, c in enumerate(x) if c < 0), None)
        if i is not None:
            x = reflect(rs, i, x)
            sign = -sign
            continue
        if any(c == 0 for c in x):
            return None, 0
        t = theta_pairing(rs, x)
        if t == shifted_level:
            return None, 0
        if t > shifted_level:
            x = wsub(x, wscale(t - shifted_level, rs.theta))
            sign = -sign
            continue
        return x, sign
    raise RuntimeError("affine folding did not terminate")


def kac_walton_coefficient(rs: RootSystem, k: int, lam: Weight, mu: Weight, nu: Weight) -> int:
    """Oracle: fold the tensor decomposition through the affine walls at k + h_vee."""
    check_level(k)
    lam, mu, nu = tuple(lam), tuple(mu), tuple(nu)
    _require_alcove(rs, k, lam, "lam")
    _require_alcove(rs, k, mu, "mu")
    _require_alcove(rs, k, nu, "nu")
    shifted = k + rs.dual_coxeter
    total = 0
    for term, count in tensor_decompose(rs, lam, mu).terms.items():
        folded, sign = affine_fold(rs, wadd(term, rs.rho), shifted)
        if sign and wsub(folded, rs.rho) == nu:
            total += sign * count
    assert total >= 0
    return total


# -- Frenkel-Zhu backend on the explicit tensor product ------------------------

def _slice_pairs(mod_l: RepModule, mod_r: RepModule, gamma: Weight):
    """Ordered (b1, b2) pairs with b1 + b2 = gamma, plus total dimension."""
    pairs = []
    total = 0
    for b1 in sorted(mod_l.basis_index):
        b2 = wsub(gamma, b1)
        d2 = mod_r.dim_at(b2)
        if d2:
            d1 = mod_l.dim_at(b1)
            pairs.append((b1, b2, d1, d2, total))
            total += d1 * d2
    return pairs, total


def _slice_op_block(mod_l: RepModule, mod_r: RepModule, op: str, gamma: Weight) -> RationalMatrix:
    """Block of x (x) 1 + 1 (x) x on the gamma slice of the tensor product."""
    blocks_l, shift = _operator_blocks(mod_l, op)
    blocks_r, _ = _operator_blocks(mod_r, op)
    src, src_dim = _slice_pairs(mod_l, mod_r, gamma)
    tgt, tgt_dim = _slice_pairs(mod_l, mod_r, wadd(gamma, shift))
    offsets = {(b1, b2): off for b1, b2, _, _, off in tgt}
    dims_t = {(b1, b2): (d1, d2) for b1, b2, d1, d2, _ in tgt}
    out = [[0] * src_dim for _ in range(tgt_dim)]
    for b1, b2, d1, d2, off_s in src:
        blk = blocks_l.get(b1)
        key = (wadd(b1, shift), b2)
        if blk is not None and key in offsets:
            off_t = offsets[key]
            rows_l = dims_t[key][0]
            for r in range(rows_l):
                brow = blk.row(r)
                for c in range(d1):
                    v = brow[c]
                    if v:
                        for t in range(d2):
                            out[off_t + r * d2 + t][off_s + c * d2 + t] += v
        blk = blocks_r.get(b2)
        key = (b1, wadd(b2, shift))
        if blk is not None and key in offsets:
            off_t = offsets[key]
            cols_r = dims_t[key][1]
            for a in range(d1):
                for r in range(cols_r):
                    brow = blk.row(r)
                    for c in range(d2):
                        v = brow[c]
                        if v:
                            out[off_t + a * cols_r + r][off_s + a * d2 + c] += v
    return RationalMatrix(out, src_dim)


def _slice_gram(mod_l: RepModule, mod_r: RepModule, gamma: Weight) -> RationalMatrix:
    pairs, total = _slice_pairs(mod_l, mod_r, gamma)
    out = [[0] * total for _ in range(total)]
    for b1, b2, d1, d2, off in pairs:
        kron = mod_l.gram[b1].kron(mod_r.gram[b2])
        for r in range(d1 * d2):
            row = kron.row(r)
            for c in range(d1 * d2):
                out[off + r][off + c] = row[c]
    return RationalMatrix(out, total)


def _first_factor_theta_power(mod_l: RepModule, mod_r: RepModule, p: int,
                              src_gamma: Weight, theta: Weight) -> RationalMatrix:
    """Block of e_theta^p (x) 1 from the src_gamma slice into the slice p*theta up."""
    src, src_dim = _slice_pairs(mod_l, mod_r, src_gamma)
    shift = wscale(p, theta)
    tgt, tgt_dim = _slice_pairs(mod_l, mod_r, wadd(src_gamma, shift))
    offsets = {(b1, b2): off for b1, b2, _, _, off in tgt}
    out = [[0] * src_dim for _ in range(tgt_dim)]
    for b1, b2, d1, d2, off_s in src:
        key = (wadd(b1, shift), b2)
        if key not in offsets:
            continue
        power = operator_power_block(mod_l, "etheta", p, b1)
        if power.rows == 0:
            continue
        off_t = offsets[key]
        for r in range(power.rows):
            prow = power.row(r)
            for c in range(d1):
                v = prow[c]
                if v:
                    for t in range(d2):
                        out[off_t + r * d2 + t][off_s + c * d2 + t] += v
    return RationalMatrix(out, src_dim)


def fz_dimension(rs: RootSystem, k: int, lam: Weight, mu: Weight, nu: Weight,
                 max_fz_dim: int = DEFAULT_FZ_CAP,
                 max_dim: int = DEFAULT_DIM_CAP) -> int:
    """Oracle on tiny instances: the symmetric coefficient N^(k)_{lam,mu,nu}.

    Counts invariant maps out of V^lam (x) V^mu that kill the projection of
    (e_theta^{k-<nu,theta>+1} V^lam) (x) V^mu onto the lowest-weight-vector
    space of weight -nu. The theta power must act on the first tensor factor
    only (the coproduct variant computes a different, wrong number). Equals
    fusion_coefficient(lam, mu, nu*).
    """
    check_level(k)
    lam, mu, nu = tuple(lam), tuple(mu), tuple(nu)
    _require_alcove(rs, k, lam, "lam")
    _require_alcove(rs, k, mu, "mu")
    _require_alcove(rs, k, nu, "nu")
    product_dim = weyl_dimension(rs, lam) * weyl_dimension(rs, mu)
    if product_dim > max_fz_dim:
        raise CapExceededError(
            f"dim V^{lam} * dim V^{mu} = {product_dim} > cap {max_fz_dim}"
        )
    mod_l = cached_module(rs, lam, max_dim)
    mod_r = cached_module(rs, mu, max_dim)
    target = wneg(nu)
    _, target_dim = _slice_pairs(mod_l, mod_r, target)
    if target_dim == 0:
        return 0
    stacked = RationalMatrix.vstack(
        [_slice_op_block(mod_l, mod_r, f"f{j}", target) for j in range(rs.rank)],
        cols=target_dim,
    )
    lwv_basis = stacked.kernel()  # U^-: lowest weight vectors of weight -nu
    count = lwv_basis.cols
    if count == 0:
        return 0
    p = k - theta_pairing(rs, nu) + 1
    src = wsub(target, wscale(p, rs.theta))
    _, src_dim = _slice_pairs(mod_l, mod_r, src)
    if src_dim == 0:
        return count
    power = _first_factor_theta_power(mod_l, mod_r, p, src, rs.theta)
    if power.rows == 0:
        return count
    gram = _slice_gram(mod_l, mod_r, target)
    overlap_rank = (lwv_basis.transpose() @ gram @ power).rank()
    return count - overlap_rank


def fusion_coefficient_via_fz(rs: RootSystem, k: int, lam: Weight, mu: Weight, nu: Weight,
                              max_fz_dim: int = DEFAULT_FZ_CAP,
                              max_dim: int = DEFAULT_DIM_CAP) -> int:
    """N^(k)nu_{lam,mu} through the Frenkel-Zhu backend (N_{lam,mu,nu*})."""
    return fz_dimension(rs, k, lam, mu, dual_weight(rs, tuple(nu)), max_fz_dim, max_dim)


@dataclass(frozen=True)
class FusionTable:
    """All structure constants N^(k)nu_{lam,mu} for one (type, level)."""

    cartan_type: str
    level: int
    alcove: tuple[Weight, ...]
    coeffs: dict[tuple[Weight, Weight, Weight], int]

    def coefficient(self, lam: Weight, mu: Weight, nu: Weight) -> int:
        return self.coeffs.get((tuple(lam), tuple(mu), tuple(nu)), 0)


def fusion_table(rs: RootSystem, k: int, max_dim: int = DEFAULT_DIM_CAP) -> FusionTable:
    """Assemble the full level-k table; every cell runs the Walton backend."""
    check_level(k)
    alcove = level_alcove(rs, k)
    coeffs: dict[tuple[Weight, Weight, Weight], int] = {}
    for lam in alcove:
        for mu in alcove:
            for nu in alcove:
                c = fusion_coefficient(rs, k, lam, mu, nu, max_dim)
                if c:
                    coeffs[(lam, mu, nu)] = c
    return FusionTable(
        cartan_type=str(rs.cartan_type), level=k, alcove=tuple(alcove), coeffs=coeffs
    )
