import itertools

import pytest

from fusionkit import (
    CapExceededError,
    PreconditionError,
    build_root_system,
    dual_weight,
    fusion_coefficient,
    fusion_coefficient_via_fz,
    fusion_table,
    fz_dimension,
    kac_walton_coefficient,
    level_alcove,
    prv_dimension,
    tensor_multiplicity,
    walton_dimension,
    weyl_dimension,
)
from fusionkit.fusion import affine_fold, check_level, theta_pairing
from fusionkit.rootdata import wadd


def test_level_alcove(a1, a2):
    for k in range(1, 5):
        assert level_alcove(a1, k) == [(n,) for n in range(k + 1)]
    assert level_alcove(a2, 1) == [(0, 0), (0, 1), (1, 0)]
    assert (0, 0) in level_alcove(a2, 3)
    assert len(level_alcove(a2, 2)) == 6
    with pytest.raises(PreconditionError):
        level_alcove(a2, 0)
    with pytest.raises(PreconditionError):
        check_level("2")


def test_theta_pairing_is_comark_sum(a2, g2):
    assert theta_pairing(a2, (1, 1)) == 2
    assert theta_pairing(g2, (1, 1)) == 3  # comarks (2, 1)


def test_prv_examples(a1, a2):
    assert prv_dimension(a1, (2,), (2,), (1,)) == 1  # beta = lam
    assert prv_dimension(a1, (2,), (0,), (1,)) == 1
    assert prv_dimension(a2, a2.theta, (0, 0), a2.theta) == 2
    with pytest.raises(PreconditionError):
        prv_dimension(a2, a2.theta, (5, 5), a2.theta)


def test_prv_matches_racah_speiser_mini(a2):
    from fusionkit import weight_diagram
    from fusionkit.rootdata import is_dominant

    for lam in ((1, 0), (1, 1), (2, 1)):
        d = weight_diagram(a2, lam)
        for mu in ((1, 0), (1, 1)):
            for beta in d.table:
                if not is_dominant(wadd(beta, mu)):
                    continue
                assert prv_dimension(a2, lam, beta, mu) == tensor_multiplicity(
                    a2, lam, mu, wadd(beta, mu)
                )


def test_walton_sl2_closed_form(a1):
    for k in range(1, 5):
        for n1 in range(k + 1):
            for n2 in range(k + 1):
                for i in range(n1 + 1):
                    out = n1 + n2 - 2 * i
                    if not 0 <= out <= k:
                        continue
                    expect = 1 if (i <= n2 and n1 + n2 - 2 * i <= k - i) else 0
                    assert walton_dimension(a1, k, (n1,), (n1 - 2 * i,), (n2,)) == expect


def test_walton_examples_and_bounds(a2):
    assert walton_dimension(a2, 2, a2.theta, (0, 0), a2.theta) == 1
    for k, beta in ((2, (0, 0)), (3, (0, 0)), (4, (1, 1)), (5, (1, 1))):
        w = walton_dimension(a2, k, a2.theta, beta, a2.theta)
        assert w <= prv_dimension(a2, a2.theta, beta, a2.theta)


def test_walton_error_classification(a1, a2):
    with pytest.raises(PreconditionError, match="level violation"):
        walton_dimension(a1, 1, (2,), (0,), (1,))
    with pytest.raises(PreconditionError, match="not a weight"):
        walton_dimension(a2, 3, (1, 0), (2, 2), (1, 0))
    with pytest.raises(PreconditionError, match="level violation"):
        walton_dimension(a1, 2, (2,), (2,), (2,))  # beta + mu leaves the alcove


def test_fusion_identity_row(a2):
    for k in (1, 2):
        for mu in level_alcove(a2, k):
            for nu in level_alcove(a2, k):
                expect = 1 if mu == nu else 0
                assert fusion_coefficient(a2, k, (0, 0), mu, nu) == expect


def test_fusion_sl2_level_one(a1):
    assert fusion_coefficient(a1, 1, (1,), (1,), (0,)) == 1
    assert fusion_coefficient(a1, 1, (1,), (1,), (1,)) == 0
    with pytest.raises(PreconditionError):
        fusion_coefficient(a1, 1, (1,), (1,), (2,))


def test_fusion_a2_level_one(a2):
    got = {
        nu: fusion_coefficient(a2, 1, (1, 0), (1, 0), nu) for nu in level_alcove(a2, 1)
    }
    assert got == {(0, 0): 0, (0, 1): 1, (1, 0): 0}


def test_fusion_table_sl2_level_one(a1):
    table = fusion_table(a1, 1)
    assert table.alcove == ((0,), (1,))
    assert table.coeffs == {
        ((0,), (0,), (0,)): 1,
        ((0,), (1,), (1,)): 1,
        ((1,), (0,), (1,)): 1,
        ((1,), (1,), (0,)): 1,
    }


def test_fusion_table_a2_level_one(a2):
    table = fusion_table(a2, 1)
    z, one, two = (0, 0), (1, 0), (0, 1)
    assert table.coefficient(one, one, two) == 1
    assert table.coefficient(one, two, z) == 1
    assert table.coefficient(two, two, one) == 1
    assert sum(table.coeffs.values()) == 9  # the Z3 group algebra
    assert table.coefficient(one, one, one) == 0


def test_fusion_table_a2_level_two_adjoint_square(a2):
    table = fusion_table(a2, 2)
    row = {
        nu: c for (lam, mu, nu), c in table.coeffs.items() if lam == (1, 1) and mu == (1, 1)
    }
    # tensor square 1+8+8+10+10bar+27 truncates to 1+8 at level 2
    assert row == {(0, 0): 1, (1, 1): 1}


def test_affine_fold_walls_and_interior(a1):
    # shifted level k + h_vee = 4 at k = 2
    assert affine_fold(a1, (3,), 4) == ((3,), 1)
    assert affine_fold(a1, (4,), 4) == (None, 0)
    assert affine_fold(a1, (0,), 4) == (None, 0)
    folded, sign = affine_fold(a1, (5,), 4)
    assert (folded, sign) == ((3,), -1)


def test_kac_walton_examples(a1, a2):
    assert {
        nu: kac_walton_coefficient(a1, 2, (1,), (1,), nu) for nu in level_alcove(a1, 2)
    } == {(0,): 1, (1,): 0, (2,): 1}
    assert kac_walton_coefficient(a2, 2, a2.theta, a2.theta, a2.theta) == 1
    # nu untouched by any folded orbit
    assert kac_walton_coefficient(a1, 3, (1,), (1,), (3,)) == 0


def test_fz_examples(a1, a2):
    assert fz_dimension(a1, 1, (0,), (0,), (0,)) == 1
    assert fz_dimension(a1, 1, (1,), (1,), (0,)) == 1
    assert fz_dimension(a2, 1, (1, 0), (1, 0), (1, 0)) == 1
    assert fz_dimension(a2, 1, (1, 0), (1, 0), (0, 1)) == 0


def test_fz_cap_and_level_errors(a2):
    with pytest.raises(CapExceededError):
        fz_dimension(a2, 4, (1, 1), (1, 1), (1, 1), max_fz_dim=10)
    with pytest.raises(PreconditionError):
        fz_dimension(a2, 1, (1, 1), (1, 0), (1, 0))


def test_three_way_agreement_mini(a1, a2):
    for k in (1, 2):
        for rs in (a1, a2):
            alcove = level_alcove(rs, k)
            for lam, mu, nu in itertools.product(alcove, repeat=3):
                w = fusion_coefficient(rs, k, lam, mu, nu)
                assert w == kac_walton_coefficient(rs, k, lam, mu, nu)
                if weyl_dimension(rs, lam) * weyl_dimension(rs, mu) <= 400:
                    assert w == fusion_coefficient_via_fz(rs, k, lam, mu, nu)


def test_alcove_truncation_bound(a2):
    for k in (1, 2):
        table = fusion_table(a2, k)
        for (lam, mu, nu), c in table.coeffs.items():
            assert c <= tensor_multiplicity(a2, lam, mu, nu)


def test_high_level_limit_matches_tensor(a2):
    # far above the threshold the truncation is invisible
    lam = mu = a2.theta
    for nu in ((1, 1), (2, 2), (3, 0)):
        expect = tensor_multiplicity(a2, lam, mu, nu)
        assert fusion_coefficient(a2, 12, lam, mu, nu) == expect


def test_symmetry_of_triple_coefficient(a2):
    for k in (1, 2):
        alcove = level_alcove(a2, k)
        for lam, mu, nu in itertools.combinations_with_replacement(alcove, 3):
            reference = fusion_coefficient(a2, k, lam, mu, dual_weight(a2, nu))
            for x, y, z in itertools.permutations((lam, mu, nu)):
                assert fusion_coefficient(a2, k, x, y, dual_weight(a2, z)) == reference


def test_backends_agree_beyond_rank_two():
    for name, k in (("B2", 1), ("B2", 2), ("G2", 1), ("C3", 1), ("A3", 1)):
        rs = build_root_system(name)
        alcove = level_alcove(rs, k)
        for lam, mu, nu in itertools.product(alcove, repeat=3):
            w = fusion_coefficient(rs, k, lam, mu, nu)
            assert w == kac_walton_coefficient(rs, k, lam, mu, nu)
            if weyl_dimension(rs, lam) * weyl_dimension(rs, mu) <= 400:
                assert w == fusion_coefficient_via_fz(rs, k, lam, mu, nu)


def test_so5_level_one_is_the_ising_ring(b2):
    table = fusion_table(b2, 1)
    one, spinor, vector = (0, 0), (0, 1), (1, 0)
    assert table.alcove == (one, spinor, vector)
    assert table.coefficient(spinor, spinor, one) == 1
    assert table.coefficient(spinor, spinor, vector) == 1
    assert table.coefficient(spinor, spinor, spinor) == 0
    assert table.coefficient(vector, vector, one) == 1
    assert table.coefficient(vector, vector, vector) == 0
    assert table.coefficient(vector, spinor, spinor) == 1


def test_g2_level_one_is_the_fibonacci_ring(g2):
    table = fusion_table(g2, 1)
    one, tau = (0, 0), (0, 1)
    assert table.alcove == (one, tau)
    assert table.coefficient(tau, tau, one) == 1
    assert table.coefficient(tau, tau, tau) == 1
