"""Acceptance-grade verification suites.

Each suite is an exhaustive sweep at desk scale; every comparison is exact
integer equality. A suite returns a report with the number of checks run and
a list of human-readable failure descriptions (empty on success). The CLI
exposes six named suites; the remaining sweeps run from the test suite.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field

from .fusion import (
    fusion_coefficient,
    fusion_coefficient_via_fz,
    in_alcove,
    kac_walton_coefficient,
    level_alcove,
    theta_pairing,
    walton_dimension,
    prv_dimension,
    fusion_table,
)
from .linalg import RationalMatrix
from .multiplicity import (
    dominant_weights_up_to_dim,
    freudenthal_diagram,
    weight_diagram,
    weyl_dimension,
)
from .repspace import cached_module, operator_power_block, power_kernel
from .rootdata import (
    build_root_system,
    dual_weight,
    is_dominant,
    root_pairing,
    wadd,
    wsub,
)
from .tensor import stability_threshold, tensor_multiplicity, weight_string


@dataclass
class SuiteReport:
    name: str
    checks: int = 0
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def check(self, ok: bool, describe) -> None:
        self.checks += 1
        if not ok:
            self.failures.append(describe() if callable(describe) else str(describe))

    def summary(self) -> str:
        verdict = "PASS" if self.passed else "FAIL"
        return f"{self.name}: {verdict} ({self.checks} checks, {len(self.failures)} failures)"


def verify_sl2_closed_form(k_max: int = 8) -> SuiteReport:
    """Walton dimensions on sl2 against the level-truncation predicate."""
    report = SuiteReport("sl2-closed-form")
    rs = build_root_system("A1")
    for k in range(1, k_max + 1):
        for n1 in range(k + 1):
            for n2 in range(k + 1):
                for i in range(n1 + 1):
                    out = n1 + n2 - 2 * i
                    if not 0 <= out <= k:
                        continue
                    got = walton_dimension(rs, k, (n1,), (n1 - 2 * i,), (n2,))
                    expect = 1 if (i <= n2 and n1 + n2 - 2 * i <= k - i) else 0
                    report.check(
                        got == expect,
                        lambda k=k, n1=n1, n2=n2, i=i, got=got, expect=expect:
                        f"k={k} n1={n1} n2={n2} i={i}: walton={got} closed-form={expect}",
                    )
    return report


def _prv_cases(restrict_type: str | None = None):
    cases = []
    if restrict_type in (None, "A1"):
        rs = build_root_system("A1")
        lams = [(m,) for m in range(12)]  # dim m+1 <= 12
        cases.append((rs, lams, lams))
    if restrict_type in (None, "A2"):
        rs = build_root_system("A2")
        lams = [(a, b) for a in range(3) for b in range(3)]
        cases.append((rs, lams, lams))
    return cases


def verify_prv(restrict_type: str | None = None) -> SuiteReport:
    """PRV subspace dimension == Racah-Speiser multiplicity on the sweep."""
    report = SuiteReport("prv")
    for rs, lams, mus in _prv_cases(restrict_type):
        for lam in lams:
            diagram = weight_diagram(rs, lam)
            for mu in mus:
                for beta in sorted(diagram.table):
                    top = wadd(beta, mu)
                    if not is_dominant(top):
                        continue
                    got = prv_dimension(rs, lam, beta, mu)
                    expect = tensor_multiplicity(rs, lam, mu, top)
                    report.check(
                        got == expect,
                        lambda rs=rs, lam=lam, beta=beta, mu=mu, got=got, expect=expect:
                        f"{rs} lam={lam} beta={beta} mu={mu}: prv={got} racah-speiser={expect}",
                    )
    return report


def verify_threshold() -> SuiteReport:
    """Fusion saturates to the tensor multiplicity at k >= <mu,theta> + r.

    Sharpness is asserted on the sl2 family: one level below the threshold the
    fusion coefficient must drop strictly, whenever that level is alcove-valid.
    """
    report = SuiteReport("threshold")
    for rs, lams, mus in _prv_cases():
        sl2 = rs.rank == 1
        for lam in lams:
            diagram = weight_diagram(rs, lam)
            for mu in mus:
                for beta in sorted(diagram.table):
                    top = wadd(beta, mu)
                    if not is_dominant(top):
                        continue
                    r_down = weight_string(diagram, beta, rs.theta).down
                    expect = tensor_multiplicity(rs, lam, mu, top)
                    k0 = max(
                        theta_pairing(rs, mu) + r_down,
                        theta_pairing(rs, lam),
                        theta_pairing(rs, top),
                        1,
                    )
                    for k in (k0, k0 + 1):
                        got = fusion_coefficient(rs, k, lam, mu, top)
                        report.check(
                            got == expect,
                            lambda rs=rs, k=k, lam=lam, beta=beta, mu=mu, got=got, expect=expect:
                            f"{rs} k={k} lam={lam} beta={beta} mu={mu}: fusion={got} tensor={expect}",
                        )
                    below = theta_pairing(rs, mu) + r_down - 1
                    if sl2 and expect and below >= 1 and all(
                        in_alcove(rs, below, w) for w in (lam, mu, top)
                    ):
                        got = fusion_coefficient(rs, below, lam, mu, top)
                        report.check(
                            got < expect,
                            lambda rs=rs, below=below, lam=lam, beta=beta, mu=mu, got=got:
                            f"{rs} k={below} lam={lam} beta={beta} mu={mu}: threshold not sharp ({got})",
                        )
    return report


_THREE_WAY_RANGES = (("A1", (1, 2, 3, 4)), ("A2", (1, 2)))


def verify_three_way(restrict_type: str | None = None,
                     restrict_level: int | None = None,
                     fz_cap: int = 400) -> SuiteReport:
    """walton == kac-walton on every triple; walton == fz under the FZ cap."""
    report = SuiteReport("three-way")
    for name, levels in _THREE_WAY_RANGES:
        if restrict_type and name != restrict_type:
            continue
        rs = build_root_system(name)
        for k in levels:
            if restrict_level and k != restrict_level:
                continue
            alcove = level_alcove(rs, k)
            for lam, mu, nu in itertools.product(alcove, repeat=3):
                w = fusion_coefficient(rs, k, lam, mu, nu)
                kw = kac_walton_coefficient(rs, k, lam, mu, nu)
                report.check(
                    w == kw,
                    lambda rs=rs, k=k, lam=lam, mu=mu, nu=nu, w=w, kw=kw:
                    f"{rs} k={k} {lam}x{mu}->{nu}: walton={w} kac-walton={kw}",
                )
                if weyl_dimension(rs, lam) * weyl_dimension(rs, mu) <= fz_cap:
                    fz = fusion_coefficient_via_fz(rs, k, lam, mu, nu, max_fz_dim=fz_cap)
                    report.check(
                        w == fz,
                        lambda rs=rs, k=k, lam=lam, mu=mu, nu=nu, w=w, fz=fz:
                        f"{rs} k={k} {lam}x{mu}->{nu}: walton={w} fz={fz}",
                    )
    return report


_AXIOM_RANGES = (("A1", (1, 2, 3, 4, 5, 6)), ("A2", (1, 2, 3)))


def verify_axioms(restrict_type: str | None = None,
                  restrict_level: int | None = None) -> SuiteReport:
    """Fusion-algebra axioms on whole tables: identity, commutativity,
    conjugation with C^2 = I, full S3 symmetry, associativity."""
    report = SuiteReport("axioms")
    for name, levels in _AXIOM_RANGES:
        if restrict_type and name != restrict_type:
            continue
        rs = build_root_system(name)
        for k in levels:
            if restrict_level and k != restrict_level:
                continue
            table = fusion_table(rs, k)
            alcove = table.alcove
            zero = (0,) * rs.rank
            n = {t: c for t, c in table.coeffs.items()}

            def coeff(a, b, c):
                return n.get((a, b, c), 0)

            for mu in alcove:
                for nu in alcove:
                    report.check(
                        coeff(zero, mu, nu) == (1 if mu == nu else 0),
                        lambda mu=mu, nu=nu: f"{name} k={k}: identity row fails at {mu},{nu}",
                    )
            for lam, mu in itertools.product(alcove, repeat=2):
                for nu in alcove:
                    report.check(
                        coeff(lam, mu, nu) == coeff(mu, lam, nu),
                        lambda lam=lam, mu=mu, nu=nu:
                        f"{name} k={k}: commutativity fails at {lam},{mu},{nu}",
                    )
                report.check(
                    coeff(lam, mu, zero) == (1 if mu == dual_weight(rs, lam) else 0),
                    lambda lam=lam, mu=mu:
                    f"{name} k={k}: conjugation fails at {lam},{mu}",
                )
            # C^2 = I for the nu = 0 slice
            for lam in alcove:
                row = [mu for mu in alcove if coeff(lam, mu, zero)]
                report.check(
                    len(row) == 1 and coeff(row[0], lam, zero) == 1,
                    lambda lam=lam: f"{name} k={k}: C^2 != I at {lam}",
                )
            # full S3 symmetry of N_{lam,mu,nu} = N^{nu*}_{lam,mu}
            for lam, mu, nu in itertools.combinations_with_replacement(alcove, 3):
                vals = {
                    coeff(a, b, dual_weight(rs, c))
                    for a, b, c in itertools.permutations((lam, mu, nu))
                }
                report.check(
                    len(vals) == 1,
                    lambda lam=lam, mu=mu, nu=nu, vals=vals:
                    f"{name} k={k}: S3 symmetry fails at {lam},{mu},{nu}: {vals}",
                )
            # associativity
            for lam, mu, nu in itertools.product(alcove, repeat=3):
                for tau in alcove:
                    lhs = sum(coeff(lam, mu, s) * coeff(s, nu, tau) for s in alcove)
                    rhs = sum(coeff(lam, s, tau) * coeff(mu, nu, s) for s in alcove)
                    report.check(
                        lhs == rhs,
                        lambda lam=lam, mu=mu, nu=nu, tau=tau, lhs=lhs, rhs=rhs:
                        f"{name} k={k}: associativity fails at {lam},{mu},{nu},{tau}: {lhs}!={rhs}",
                    )
    return report


def verify_lemmas(seed: int = 20240511) -> SuiteReport:
    """Kernel/image decomposition on sl2 strings, kernel-dimension duality on
    A2 modules, and the abstract projection split on random exact spaces."""
    report = SuiteReport("lemmas")
    _lemma_orthogonal_split(report)
    _lemma_kernel_duality(report)
    _lemma_projection(report, seed)
    return report


def _lemma_orthogonal_split(report: SuiteReport) -> None:
    rs = build_root_system("A1")
    for m in range(11):
        module = cached_module(rs, (m,))
        for p in range(1, m + 3):
            ker_total = 0
            im_total = 0
            for beta in module.basis_index:
                kb = power_kernel(module, "f0", p, beta)
                ker_total += kb.cols
                back = wsub(beta, (2 * p,))
                if back in module.basis_index:
                    image = operator_power_block(module, "e0", p, back)
                    im_total += image.rank()
                    if kb.cols and not image.is_zero():
                        overlap = kb.transpose() @ module.gram[beta] @ image
                        report.check(
                            overlap.is_zero(),
                            lambda m=m, p=p, beta=beta:
                            f"A1 V({m}) p={p}: ker(f^p) not orthogonal to im(e^p) at {beta}",
                        )
            report.check(
                ker_total + im_total == m + 1,
                lambda m=m, p=p, k=ker_total, i=im_total:
                f"A1 V({m}) p={p}: dim ker {k} + dim im {i} != {m + 1}",
            )


def _lemma_kernel_duality(report: SuiteReport) -> None:
    rs = build_root_system("A2")
    lams = [lam for lam in dominant_weights_up_to_dim(rs, 200)]
    directions = [("e0", "f0", rs.simple_roots[0]), ("e1", "f1", rs.simple_roots[1]),
                  ("etheta", "ftheta", rs.theta)]
    for lam in lams:
        module = cached_module(rs, lam)
        for beta in module.basis_index:
            for e_op, f_op, alpha in directions:
                pair = root_pairing(rs, beta, alpha)
                assert pair.denominator == 1
                pair = int(pair)
                diagram = module.diagram
                up = weight_string(diagram, beta, alpha).up
                for p in range(max(0, -pair), up + 2):
                    lhs = power_kernel(module, e_op, p, beta).cols
                    rhs = power_kernel(module, f_op, p + pair, beta).cols
                    report.check(
                        lhs == rhs,
                        lambda lam=lam, beta=beta, alpha=alpha, p=p, lhs=lhs, rhs=rhs:
                        f"A2 V^{lam} beta={beta} alpha={alpha} p={p}: ker(e^p)={lhs} ker(f^(p+pair))={rhs}",
                    )


def _lemma_projection(report: SuiteReport, seed: int) -> None:
    rng = random.Random(seed)
    for trial in range(50):
        n = rng.randint(2, 8)
        gram = _random_posdef(rng, n)
        u1 = _random_subspace(rng, n)
        u2 = (u1.transpose() @ gram).kernel()  # orthogonal complement
        w = _random_subspace(rng, n)
        # P_W(U1) inside W, coordinates in W's basis
        wg = w.transpose() @ gram @ w
        proj_coords = wg.inverse() @ (w.transpose() @ gram @ u1)
        part1 = _column_space(proj_coords)
        cap = _intersection_in_first(w, u2)
        dim_w = w.cols
        dim1 = part1.cols
        dim2 = cap.cols
        report.check(
            dim1 + dim2 == dim_w,
            lambda t=trial, a=dim1, b=dim2, d=dim_w:
            f"projection split trial {t}: {a} + {b} != {d}",
        )
        if dim1 and dim2:
            overlap = part1.transpose() @ wg @ cap
            report.check(
                overlap.is_zero(),
                lambda t=trial: f"projection split trial {t}: summands not orthogonal",
            )
        joint = RationalMatrix.from_columns(
            [part1.column(i) for i in range(dim1)] + [cap.column(i) for i in range(dim2)],
            dim_w,
        )
        report.check(
            joint.rank() == dim_w,
            lambda t=trial: f"projection split trial {t}: summands do not span W",
        )


def _random_posdef(rng: random.Random, n: int) -> RationalMatrix:
    while True:
        b = RationalMatrix(
            [[rng.randint(-3, 3) for _ in range(n)] for _ in range(n)]
        )
        if b.rank() == n:
            return b.transpose() @ b


def _random_subspace(rng: random.Random, n: int) -> RationalMatrix:
    d = rng.randint(1, n - 1)
    while True:
        cand = RationalMatrix([[rng.randint(-2, 2) for _ in range(d)] for _ in range(n)])
        if cand.rank() == d:
            return cand


def _column_space(mat: RationalMatrix) -> RationalMatrix:
    cols = []
    seen = RationalMatrix.zeros(0, mat.rows)
    for j in range(mat.cols):
        cand = RationalMatrix.vstack([seen, RationalMatrix([mat.column(j)], mat.rows)], cols=mat.rows)
        if cand.rank() > seen.rank():
            seen = cand
            cols.append(mat.column(j))
    return RationalMatrix.from_columns(cols, mat.rows)


def _intersection_in_first(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    """Basis (in a's coordinates) of colspace(a) cap colspace(b)."""
    if b.cols == 0:
        return RationalMatrix.zeros(a.cols, 0)
    joint = RationalMatrix(
        [list(a.row(i)) + [-x for x in b.row(i)] for i in range(a.rows)],
        a.cols + b.cols,
    )
    null = joint.kernel()
    coords = RationalMatrix([null.row(i) for i in range(a.cols)], null.cols)
    return _column_space(coords)


def verify_stability() -> SuiteReport:
    """Outer multiplicities freeze once <mu, alpha_j> reaches the string bound."""
    report = SuiteReport("stability")
    for name in ("A1", "A2"):
        rs = build_root_system(name)
        lams = {rs.theta, (2,) + (0,) * (rs.rank - 1)}
        for lam in sorted(lams):
            diagram = weight_diagram(rs, lam)
            for beta in sorted(diagram.table):
                for j in range(rs.rank):
                    q = stability_threshold(diagram, beta, j)
                    box = itertools.product(range(q + 3), repeat=rs.rank)
                    for mu in box:
                        if mu[j] < q or not is_dominant(wadd(beta, mu)):
                            continue
                        base = tensor_multiplicity(rs, lam, mu, wadd(beta, mu))
                        for m in (1, 2):
                            shift = tuple(m if t == j else 0 for t in range(rs.rank))
                            bigger = wadd(mu, shift)
                            moved = tensor_multiplicity(rs, lam, bigger, wadd(beta, bigger))
                            report.check(
                                moved == base,
                                lambda name=name, lam=lam, beta=beta, j=j, mu=mu, m=m,
                                base=base, moved=moved:
                                f"{name} lam={lam} beta={beta} j={j} mu={mu} m={m}: {moved} != {base}",
                            )
    return report


_MULT_TYPES = ("A1", "A2", "B2", "G2")


def verify_multiplicity_oracle(dim_cap: int = 500) -> SuiteReport:
    """Recursion diagram == Freudenthal diagram; total == Weyl dimension."""
    report = SuiteReport("multiplicity")
    for name in _MULT_TYPES:
        rs = build_root_system(name)
        for lam in dominant_weights_up_to_dim(rs, dim_cap):
            recursion = weight_diagram(rs, lam)
            oracle = freudenthal_diagram(rs, lam)
            report.check(
                dict(recursion.table) == dict(oracle.table),
                lambda name=name, lam=lam: f"{name} lam={lam}: recursion != Freudenthal",
            )
            report.check(
                recursion.dimension == weyl_dimension(rs, lam),
                lambda name=name, lam=lam: f"{name} lam={lam}: total != Weyl dimension",
            )
    return report


CLI_SUITES = {
    "sl2-closed-form": lambda cartan=None, level=None: verify_sl2_closed_form(),
    "prv": lambda cartan=None, level=None: verify_prv(restrict_type=cartan),
    "three-way": lambda cartan=None, level=None: verify_three_way(
        restrict_type=cartan, restrict_level=level
    ),
    "axioms": lambda cartan=None, level=None: verify_axioms(
        restrict_type=cartan, restrict_level=level
    ),
    "lemmas": lambda cartan=None, level=None: verify_lemmas(),
    "stability": lambda cartan=None, level=None: verify_stability(),
}
