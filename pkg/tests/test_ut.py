import random

import pytest

from utgradings.fields import Field
from utgradings.linalg import Subspace, vec_add
from utgradings import ut

F2 = Field.prime(2)
F3 = Field.prime(3)
F5 = Field.prime(5)
Q = Field.rational()


def rand_vec(rng, field, n):
    return tuple(field.coerce(rng.randrange(-3, 4)) for _ in range(ut.dimension(n)))


def test_cells_and_dimension():
    assert ut.cells(3) == ((1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3))
    assert ut.dimension(4) == 10
    assert ut.cell_index(3, 2, 3) == 4


def test_bracket_on_units():
    # [e12, e23] = e13
    v = ut.bracket(F5, 3, ut.basis_vector(F5, 3, 1, 2), ut.basis_vector(F5, 3, 2, 3))
    assert v == ut.basis_vector(F5, 3, 1, 3)
    # [e12, e22] = e12
    v = ut.bracket(F5, 3, ut.basis_vector(F5, 3, 1, 2), ut.basis_vector(F5, 3, 2, 2))
    assert v == ut.basis_vector(F5, 3, 1, 2)


def test_bracket_antisymmetry_jacobi():
    rng = random.Random(3)
    for _ in range(100):
        field = rng.choice((F3, Q))
        n = rng.randrange(2, 5)
        x, y, z = (rand_vec(rng, field, n) for _ in range(3))
        xy = ut.bracket(field, n, x, y)
        yx = ut.bracket(field, n, y, x)
        assert all(field.add(a, b) == field.zero for a, b in zip(xy, yx))
        j = vec_add(
            field,
            ut.bracket(field, n, x, ut.bracket(field, n, y, z)),
            vec_add(
                field,
                ut.bracket(field, n, y, ut.bracket(field, n, z, x)),
                ut.bracket(field, n, z, ut.bracket(field, n, x, y)),
            ),
        )
        assert all(a == field.zero for a in j)


def test_bracket_matches_matrix_commutator():
    rng = random.Random(4)
    for _ in range(50):
        field = rng.choice((F5, Q))
        n = rng.randrange(2, 5)
        u, v = rand_vec(rng, field, n), rand_vec(rng, field, n)
        a = ut.vector_to_matrix(field, n, u)
        b = ut.vector_to_matrix(field, n, v)
        ab = ut.mat_mul(field, a, b)
        ba = ut.mat_mul(field, b, a)
        comm = [[field.sub(x, y) for x, y in zip(r1, r2)] for r1, r2 in zip(ab, ba)]
        assert ut.matrix_to_vector(field, n, comm) == ut.bracket(field, n, u, v)


def test_derived_power_and_center():
    assert ut.derived_power(F5, 4, 1).dim == 6
    assert ut.derived_power(F5, 4, 3).dim == 1
    assert ut.derived_power(F5, 4, 4).dim == 0
    c = ut.center(F5, 4)
    assert c.dim == 1 and c.contains(ut.identity_vector(F5, 4))


def test_centralizer_of_whole_algebra_is_center():
    for field in (F3, Q):
        full = Subspace.full(field, ut.dimension(3))
        z = ut.centralizer(field, 3, full.rows, full)
        assert z == ut.center(field, 3)


def test_matrix_vector_round_trip():
    v = rand_vec(random.Random(5), F5, 4)
    assert ut.matrix_to_vector(F5, 4, ut.vector_to_matrix(F5, 4, v)) == v
    with pytest.raises(ValueError):
        ut.matrix_to_vector(F5, 2, [[1, 0], [1, 1]])  # not upper triangular


def test_automorphism_counts():
    assert ut.count_automorphisms(F2, 2) == 4
    assert ut.count_automorphisms(F2, 3) == 64
    assert ut.count_automorphisms(F3, 3) == 3888
    autos = ut.enumerate_automorphisms(F2, 3)
    mats = {a.matrix() for a in autos}
    assert len(mats) == 64  # all distinct as linear maps


def test_automorphisms_preserve_bracket():
    rng = random.Random(6)
    cases = 0
    while cases < 1000:
        field = rng.choice((F2, F3, F5, Q))
        n = rng.randrange(2, 5)
        a = ut.random_automorphism(field, n, rng)
        x, y = rand_vec(rng, field, n), rand_vec(rng, field, n)
        lhs = a.apply(ut.bracket(field, n, x, y))
        rhs = ut.bracket(field, n, a.apply(x), a.apply(y))
        assert lhs == rhs
        cases += 1


def test_automorphism_compose_inverse():
    rng = random.Random(7)
    for _ in range(60):
        field = rng.choice((F3, Q))
        n = rng.randrange(2, 5)
        a = ut.random_automorphism(field, n, rng)
        b = ut.random_automorphism(field, n, rng)
        v = rand_vec(rng, field, n)
        assert a.compose(b).apply(v) == a.apply(b.apply(v))
        assert a.inverse().apply(a.apply(v)) == v


def test_flip_only_above_n2():
    with pytest.raises(ValueError):
        ut.Automorphism.flip(F5, 2)
    w = ut.Automorphism.flip(F5, 3)
    # omega(e12) = -e23
    img = w.apply(ut.basis_vector(F5, 3, 1, 2))
    assert img == tuple((-x) % 5 for x in ut.basis_vector(F5, 3, 2, 3))


def test_central_twist_admissibility():
    with pytest.raises(ValueError):
        # 1 + sum a_i = 0 is singular
        ut.Automorphism.central_twist(F5, 2, (2, 2))
    a = ut.Automorphism.central_twist(F5, 2, (1, 2))
    e11 = ut.basis_vector(F5, 2, 1, 1)
    assert a.apply(e11) == vec_add(F5, e11, ut.identity_vector(F5, 2))
