"""Supermatrix tests: the sign convention, inversion, splitting, tangent
probes.  The seven one-parameter identity families are the arbiter of the
twisted product and double as its regression net."""

import random

import pytest

from superpoints import (
    GF2,
    GF3,
    QQ,
    DualExtension,
    GrassmannAlgebra,
    NotInvertible,
    Scalar,
    StructuralError,
    SuperMatrix,
    SuperNumbers,
    diagonal_torus,
    gl_2op,
    gl_block_diag,
    gl_bracket,
    gl_full,
    gl_split,
    is_invertible,
    is_odd_unipotent,
    lie_points,
    semidirect_split,
    smat_inv,
)
from superpoints.smat import constant_matrix
from superpoints.sampling import rand_element, rand_odd
from superpoints.verify import suite_tang_group


def unit(shape, algebra, i, j):
    return SuperMatrix.unit(shape, algebra, i, j)


# ---------------------------------------------------------------------------
# the twisted product


def test_identity_is_neutral():
    rng = random.Random(0)
    A = GrassmannAlgebra(QQ, 3)
    I = SuperMatrix.identity((2, 1), A)
    m = SuperMatrix((2, 1), A, [[rand_element(A, rng) for _ in range(3)] for _ in range(3)])
    assert I * m == m and m * I == m


def test_two_odd_factors_twist():
    """(1 + x1 Y')(1 + x2 Y'') = 1 + x1 Y' + x2 Y'' + x2 x1 E11 in gl(1|1)."""
    A = GrassmannAlgebra(QQ, 2)
    sh = (1, 1)
    I = SuperMatrix.identity(sh, A)
    x1, x2 = A.generator(1), A.generator(2)
    lhs = (I + unit(sh, A, 0, 1).scale(x1)) * (I + unit(sh, A, 1, 0).scale(x2))
    rhs = I + unit(sh, A, 0, 1).scale(x1) + unit(sh, A, 1, 0).scale(x2) \
        + unit(sh, A, 0, 0).scale(x2 * x1)
    assert lhs == rhs


def test_swap_relation_instance():
    """(1+x1Y')(1+x2Y'') = (1+x2x1[Y',Y''])(1+x2Y'')(1+x1Y') as 2x2 matrices."""
    A = GrassmannAlgebra(QQ, 2)
    sh = (1, 1)
    I = SuperMatrix.identity(sh, A)
    x1, x2 = A.generator(1), A.generator(2)
    yp, ypp = unit(sh, A, 0, 1), unit(sh, A, 1, 0)
    lhs = (I + yp.scale(x1)) * (I + ypp.scale(x2))
    rhs = (I + gl_bracket(yp, ypp).scale(x2 * x1)) * (I + ypp.scale(x2)) * (I + yp.scale(x1))
    assert lhs == rhs


def test_block_diagonal_points_multiply_naively():
    """For A_0-pattern inputs the twisted product is the row-column product."""
    rng = random.Random(1)
    A = GrassmannAlgebra(GF3, 3)
    G = gl_block_diag(2, 1)
    for _ in range(10):
        g, h = G.sample(A, rng), G.sample(A, rng)
        naive = [[sum(((g.rows[i][t] * h.rows[t][j]) for t in range(3)), A.zero())
                  for j in range(3)] for i in range(3)]
        assert g * h == SuperMatrix((2, 1), A, naive)


def test_twisted_associativity_pins_convention():
    rng = random.Random(5)
    for field in (QQ, GF2, GF3):
        A = GrassmannAlgebra(field, 4)
        for _ in range(15):
            ms = [SuperMatrix((1, 2), A,
                              [[rand_element(A, rng) for _ in range(3)] for _ in range(3)])
                  for _ in range(3)]
            assert (ms[0] * ms[1]) * ms[2] == ms[0] * (ms[1] * ms[2])


def test_shape_mismatch_raises():
    A = GrassmannAlgebra(QQ, 2)
    with pytest.raises(StructuralError):
        SuperMatrix.identity((1, 1), A) * SuperMatrix.identity((2, 1), A)


# ---------------------------------------------------------------------------
# homogeneity patterns


def test_homogeneous_split_unique():
    rng = random.Random(2)
    A = GrassmannAlgebra(QQ, 3)
    m = SuperMatrix((2, 2), A, [[rand_element(A, rng) for _ in range(4)] for _ in range(4)])
    assert m.even_component() + m.odd_component() == m
    assert m.even_component().is_even_homogeneous()
    assert m.odd_component().is_odd_homogeneous()


# ---------------------------------------------------------------------------
# invertibility and the global splitting


def test_invertibility_examples():
    A = GrassmannAlgebra(QQ, 2)
    sh = (1, 1)
    d = SuperMatrix((1, 1), A, [[A.from_int(2), A.zero()], [A.zero(), A.from_int(-3)]])
    assert is_invertible(d)
    m = SuperMatrix.identity(sh, A) + unit(sh, A, 0, 1).scale(A.generator(1))
    assert smat_inv(m) == SuperMatrix.identity(sh, A) - unit(sh, A, 0, 1).scale(A.generator(1))
    singular = SuperMatrix((1, 1), A, [[A.generator(1) * A.generator(2), A.zero()],
                                       [A.zero(), A.one()]])
    assert not is_invertible(singular)
    with pytest.raises(NotInvertible):
        smat_inv(singular)


@pytest.mark.parametrize("field", [QQ, GF2, GF3])
@pytest.mark.parametrize("shape", [(2, 2), (2, 1)])
def test_random_inverse_and_split(field, shape):
    rng = random.Random(9)
    A = GrassmannAlgebra(field, 3)
    G = gl_full(*shape)
    I = SuperMatrix.identity(shape, A)
    for _ in range(30):
        m = G.sample(A, rng)
        assert m * smat_inv(m) == I
        assert smat_inv(m) * m == I
        ev, od = gl_split(m)
        assert ev * od == m
        assert ev.diagonal_blocks_only()
        assert is_odd_unipotent(od)


def test_gl_split_block_diagonal_is_trivial():
    rng = random.Random(3)
    A = GrassmannAlgebra(QQ, 3)
    g = gl_block_diag(2, 1).sample(A, rng)
    ev, od = gl_split(g)
    assert ev == g and od == SuperMatrix.identity((2, 1), A)


def test_gl_split_unit_diagonal():
    A = GrassmannAlgebra(QQ, 2)
    sh = (1, 1)
    m = SuperMatrix((1, 1), A, [[A.one(), A.generator(1)], [A.generator(2), A.one()]])
    ev, od = gl_split(m)
    assert ev == SuperMatrix.identity(sh, A)
    assert od == m


# ---------------------------------------------------------------------------
# bracket and 2-operation


def test_bracket_and_square_examples():
    A = GrassmannAlgebra(QQ, 1)
    sh = (1, 1)
    e12, e21 = unit(sh, A, 0, 1), unit(sh, A, 1, 0)
    assert gl_bracket(e12, e21) == unit(sh, A, 0, 0) + unit(sh, A, 1, 1)
    assert gl_2op(e12).is_zero()
    assert gl_2op(e12 + e21) == SuperMatrix.identity(sh, A)
    with pytest.raises(StructuralError):
        gl_2op(unit(sh, A, 0, 0))


def test_ad_differential_is_bracket():
    """Ad(1+eps X)(Y) = Y + eps [X,Y] over dual numbers."""
    rng = random.Random(4)
    A = GrassmannAlgebra(QQ, 2)
    D = DualExtension(A)
    sh = (2, 1)
    f = QQ
    from superpoints.sampling import rand_k_vector
    from superpoints.verify import _gl_unit_bases, _kmat

    evens, odds = _gl_unit_bases(2, 1, f)
    for _ in range(20):
        X = _kmat(sh, D, evens, rand_k_vector(f, rng, len(evens)))
        Y = _kmat(sh, D, odds, rand_k_vector(f, rng, len(odds)))
        probe = SuperMatrix.identity(sh, D) + X.scale(D.eps())
        conj = probe * Y * smat_inv(probe)
        assert conj == Y + gl_bracket(X, Y).scale(D.eps())


# ---------------------------------------------------------------------------
# the seven identity families (regression net for the convention)


def test_tang_group_families_quick():
    rep = suite_tang_group(seed=3, count=36)
    assert rep.ok, rep.summary()


# ---------------------------------------------------------------------------
# descriptors, tangent probes, semidirect splittings


def test_descriptor_closure_on_samples():
    rng = random.Random(8)
    A = GrassmannAlgebra(QQ, 3)
    for G in (gl_block_diag(1, 1), gl_full(2, 1), diagonal_torus(1, 1)):
        assert G.member(SuperMatrix.identity(G.shape, A))
        for _ in range(10):
            g, h = G.sample(A, rng), G.sample(A, rng)
            assert G.member(g * h)
            assert G.member(smat_inv(g))


def test_lie_points_gl_full_accepts_all_units():
    A = GrassmannAlgebra(QQ, 2)
    res = lie_points(gl_full(1, 1), A)
    assert all(res.values())


def test_lie_points_block_diag_rejects_odd_directions():
    A = GrassmannAlgebra(QQ, 2)
    res = lie_points(gl_block_diag(1, 1), A)
    # candidates are matrix units row-major: E11, E12, E21, E22
    assert res[0] and res[3] and not res[1] and not res[2]


def test_lie_points_torus():
    A = GrassmannAlgebra(GF3, 2)
    res = lie_points(diagonal_torus(1, 1), A)
    assert res[0] and res[3] and not res[1] and not res[2]


def test_semidirect_split_grassmann():
    """G = GL(1|1), A = Lambda_2: pi kills all generators."""
    A = GrassmannAlgebra(QQ, 2)
    G = gl_full(1, 1)
    sh = (1, 1)
    g = SuperMatrix.identity(sh, A) + unit(sh, A, 0, 0).scale(A.monomial([1, 2]))
    g_bar, g_ker = semidirect_split(G, g)
    assert g_bar == SuperMatrix.identity(sh, A)
    assert g_ker == g


def test_semidirect_split_super_numbers():
    """Over k[eta] the even factor is constant and the kernel lies in
    G_1^(1)(k + k.eta)."""
    rng = random.Random(11)
    SN = SuperNumbers(QQ)
    G = gl_full(1, 1)
    for _ in range(25):
        g = G.sample(SN, rng)
        g_bar, g_ker = semidirect_split(G, g)
        assert g_bar * g_ker == g
        assert all(e.soul().is_zero() for row in g_bar.rows for e in row)
        assert g_ker.body_lift() == SuperMatrix.identity((1, 1), SN)
        assert g_ker.entries_in_a1n(1)


def test_semidirect_split_random_lambda3():
    rng = random.Random(12)
    A = GrassmannAlgebra(GF3, 3)
    G = gl_full(2, 1)
    for _ in range(25):
        g = G.sample(A, rng)
        g_bar, g_ker = semidirect_split(G, g)
        assert g_bar * g_ker == g
        assert g_ker.body_lift() == SuperMatrix.identity((2, 1), A)


def test_a1n_matrix_exposure():
    """Products of purely odd one-parameter factors have entries in A_1^(1),
    and their even factors land in A_1^(2) (exposed, not certified)."""
    A = GrassmannAlgebra(QQ, 3)
    sh = (1, 1)
    I = SuperMatrix.identity(sh, A)
    m = (I + unit(sh, A, 0, 1).scale(A.generator(1))) * \
        (I + unit(sh, A, 1, 0).scale(A.generator(2)))
    assert m.entries_in_a1n(1)
    ev, _ = gl_split(m)
    assert ev.entries_in_a1n(2)
