import random
from fractions import Fraction

import pytest

from fusionkit import (
    CapExceededError,
    ParseError,
    PreconditionError,
    build_root_system,
    dual_weight,
    form,
    make_dominant,
    pairing,
    parse_cartan_type,
    reflect,
    weyl_elements,
)
from fusionkit.rootdata import (
    CartanType,
    apply_matrix,
    dominant_in_orbit,
    wadd,
    wneg,
    wsub,
)

TYPES = ["A1", "A2", "A3", "B2", "B3", "C3", "D4", "G2", "F4"]


def _mul(a, b):
    n = len(a)
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)) for i in range(n)
    )


def test_parse_basics():
    assert str(parse_cartan_type("A2")) == "A2"
    assert parse_cartan_type("g2").series == "G"
    for bad in ("Z9", "A0", "D2", "E5", "F3", "", "A", "2A"):
        with pytest.raises(ParseError):
            parse_cartan_type(bad)


def test_weyl_cap_rejects_large_types():
    with pytest.raises(CapExceededError):
        parse_cartan_type("E7")  # |W| = 2,903,040 over the default cap
    assert parse_cartan_type("E6").weyl_order == 51_840
    with pytest.raises(CapExceededError):
        build_root_system(CartanType("A", 4), max_weyl_order=100)


def test_a1_data():
    rs = build_root_system("A1")
    assert rs.cartan_matrix == ((2,),)
    assert rs.theta == (2,)  # theta = alpha_1
    assert rs.weyl_order == 2


def test_a2_data(a2):
    assert a2.theta == (1, 1)
    assert a2.dual_coxeter == 3
    assert pairing(a2, a2.theta, 0) == 1
    assert form(a2, a2.rho, a2.rho) == 2


def test_g2_data(g2):
    assert g2.dual_coxeter == 4
    assert form(g2, g2.rho, g2.theta) == 3  # <rho, theta>


@pytest.mark.parametrize("name", TYPES)
def test_simple_roots_are_cartan_columns(name):
    rs = build_root_system(name)
    for i, alpha in enumerate(rs.simple_roots):
        assert alpha == tuple(rs.cartan_matrix[j][i] for j in range(rs.rank))


@pytest.mark.parametrize("name", TYPES)
def test_cartan_matrix_shape(name):
    rs = build_root_system(name)
    m = rs.cartan_matrix
    for i in range(rs.rank):
        assert m[i][i] == 2
        for j in range(rs.rank):
            if i != j:
                assert m[i][j] <= 0
                assert (m[i][j] == 0) == (m[j][i] == 0)


@pytest.mark.parametrize("name", TYPES)
def test_form_pairs_roots_as_cartan_entries(name):
    # (alpha_i, alpha_j^vee) reads the transposed entry in the column convention
    rs = build_root_system(name)
    for i, ai in enumerate(rs.simple_roots):
        for j in range(rs.rank):
            aj = rs.simple_roots[j]
            value = 2 * form(rs, ai, aj) / form(rs, aj, aj)
            assert value == rs.cartan_matrix[j][i]


@pytest.mark.parametrize("name", TYPES)
def test_theta_normalization_and_comarks(name):
    rs = build_root_system(name)
    assert form(rs, rs.theta, rs.theta) == 2
    for i in range(rs.rank):
        ai = rs.simple_roots[i]
        assert rs.comarks[i] == rs.marks[i] * Fraction(form(rs, ai, ai), 2)
    assert rs.dual_coxeter == 1 + form(rs, rs.rho, rs.theta)


@pytest.mark.parametrize("name", TYPES)
def test_theta_is_maximal_root(name):
    rs = build_root_system(name)
    from fusionkit.rootdata import in_root_lattice_below

    for beta in rs.positive_roots:
        assert in_root_lattice_below(rs, beta, rs.theta)


@pytest.mark.parametrize("name", TYPES)
def test_w0_word_negates_and_permutes_simples(name):
    rs = build_root_system(name)
    for i, alpha in enumerate(rs.simple_roots):
        image = alpha
        for j in reversed(rs.w0_word):
            image = reflect(rs, j, image)
        assert image == wneg(rs.simple_roots[rs.dual_permutation[i]])


def test_pairing_examples(a2):
    for i in range(2):
        for j in range(2):
            unit = tuple(1 if t == i else 0 for t in range(2))
            assert pairing(a2, unit, j) == (1 if i == j else 0)
    assert all(pairing(a2, a2.rho, j) == 1 for j in range(2))
    with pytest.raises(PreconditionError):
        pairing(a2, a2.rho, 5)


def test_form_is_symmetric_bilinear(a2):
    rng = random.Random(7)
    for _ in range(20):
        x = tuple(rng.randint(-3, 3) for _ in range(2))
        y = tuple(rng.randint(-3, 3) for _ in range(2))
        z = tuple(rng.randint(-3, 3) for _ in range(2))
        assert form(a2, x, y) == form(a2, y, x)
        assert form(a2, wadd(x, z), y) == form(a2, x, y) + form(a2, z, y)
    assert form(a2, (0, 0), (2, 5)) == 0


def test_reflect_properties(a1, a2):
    assert reflect(a1, 0, (5,)) == (-5,)
    assert reflect(a2, 0, a2.rho) == wsub(a2.rho, a2.simple_roots[0])
    assert reflect(a2, 1, (3, 0)) == (3, 0)  # fixed when the coordinate vanishes
    rng = random.Random(11)
    for _ in range(20):
        x = tuple(rng.randint(-4, 4) for _ in range(2))
        i = rng.randrange(2)
        assert reflect(a2, i, reflect(a2, i, x)) == x
        y = tuple(rng.randint(-4, 4) for _ in range(2))
        assert form(a2, reflect(a2, i, x), reflect(a2, i, y)) == form(a2, x, y)


@pytest.mark.parametrize("name,order", [("A1", 2), ("A2", 6), ("B2", 8), ("G2", 12)])
def test_weyl_group_order(name, order):
    assert len(weyl_elements(build_root_system(name))) == order


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_weyl_group_structure(name):
    rs = build_root_system(name)
    group = weyl_elements(rs)
    signs = {mat: sign for mat, sign in group}
    idmat = group[0][0]
    assert all(idmat[i][i] == 1 for i in range(rs.rank))
    # closure and the sign homomorphism
    for m1, s1 in group:
        for m2, s2 in group:
            prod = _mul(m1, m2)
            assert signs[prod] == s1 * s2
    assert sum(1 for m, _ in group if m == idmat) == 1
    # every element is a form isometry and permutes the roots
    roots = set(rs.positive_roots) | {wneg(r) for r in rs.positive_roots}
    rng = random.Random(3)
    for mat, _ in group:
        assert {apply_matrix(mat, r) for r in roots} == roots
        for _ in range(3):
            x = tuple(rng.randint(-3, 3) for _ in range(rs.rank))
            y = tuple(rng.randint(-3, 3) for _ in range(rs.rank))
            assert form(rs, apply_matrix(mat, x), apply_matrix(mat, y)) == form(rs, x, y)


def test_dual_weight_examples(a1, a2):
    assert dual_weight(a2, (1, 0)) == (0, 1)
    assert dual_weight(a1, (7,)) == (7,)
    for name in TYPES:
        rs = build_root_system(name)
        assert dual_weight(rs, rs.theta) == rs.theta


@pytest.mark.parametrize("name", TYPES)
def test_dual_weight_is_involution(name):
    rs = build_root_system(name)
    rng = random.Random(hash(name) & 0xFFFF)
    for _ in range(100):
        w = tuple(rng.randint(-5, 5) for _ in range(rs.rank))
        assert dual_weight(rs, dual_weight(rs, w)) == w
    for _ in range(20):
        w = tuple(rng.randint(0, 5) for _ in range(rs.rank))
        assert all(c >= 0 for c in dual_weight(rs, w))


def test_make_dominant_examples(a1):
    assert make_dominant(a1, (3,)) == ((3,), 1)
    assert make_dominant(a1, (-1,))[1] == 0  # mu + rho on the wall
    assert make_dominant(a1, (-2,)) == ((0,), -1)


@pytest.mark.parametrize("name", ["A2", "B2", "G2"])
def test_make_dominant_is_orbit_invariant(name):
    rs = build_root_system(name)
    rng = random.Random(5)
    for _ in range(25):
        mu = tuple(rng.randint(-4, 4) for _ in range(rs.rank))
        rep, sign = make_dominant(rs, mu)
        for mat, wsign in weyl_elements(rs):
            moved = wsub(apply_matrix(mat, wadd(mu, rs.rho)), rs.rho)
            rep2, sign2 = make_dominant(rs, moved)
            if sign == 0:
                assert sign2 == 0
            else:
                assert rep2 == rep and sign2 == sign * wsign


def test_dominant_in_orbit(a2):
    rng = random.Random(9)
    for _ in range(30):
        mu = tuple(rng.randint(-4, 4) for _ in range(2))
        rep = dominant_in_orbit(a2, mu)
        assert all(c >= 0 for c in rep)
        assert any(apply_matrix(m, mu) == rep for m, _ in weyl_elements(a2))
