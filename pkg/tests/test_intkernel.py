import random

import pytest

from prolim import _intkernel as pure
from prolim._backend import BACKEND, kernel as K


def snf(a):
    return K.smith_with_transforms([list(r) for r in a])


def test_snf_one_by_one():
    u, d, v, ui, vi = snf([[2]])
    assert (u, d, v) == ([[1]], [[2]], [[1]])


def test_snf_zero():
    _u, d, _v, _ui, _vi = snf([[0]])
    assert d == [[0]]


def test_snf_hand_example():
    # hand row/column reduction gives invariant factors 2 and 4
    m = [[2, 4], [6, 8]]
    u, d, v, ui, vi = snf(m)
    assert [d[0][0], d[1][1]] == [2, 4]
    assert K.mat_mul(K.mat_mul(u, m), v) == d
    assert abs(K.det_via_smith(u)) == 1
    assert abs(K.det_via_smith(v)) == 1


@pytest.mark.parametrize("seed", range(40))
def test_snf_random_transform_identity(seed):
    rng = random.Random(seed)
    m = rng.randrange(1, 5)
    n = rng.randrange(1, 5)
    a = [[rng.randrange(-5, 6) for _ in range(n)] for _ in range(m)]
    u, d, v, ui, vi = snf(a)
    assert K.mat_mul(K.mat_mul(u, a), v) == d
    assert K.mat_mul(u, ui) == K.identity_matrix(m)
    assert K.mat_mul(v, vi) == K.identity_matrix(n)
    nz = [x for x in K.smith_diagonal(d) if x]
    assert all(x > 0 for x in nz)
    for x, y in zip(nz, nz[1:]):
        assert y % x == 0
    for i in range(m):
        for j in range(n):
            if i != j:
                assert d[i][j] == 0


def test_solve_and_kernel():
    a = [[2, 0], [0, 3]]
    assert K.solve(a, [4, 9]) == [2, 3]
    assert K.solve(a, [1, 0]) is None
    ker = K.kernel_columns([[1, 1]])
    assert len(ker) == 1 and ker[0][0] == -ker[0][1]


def test_column_lattice_basis_spans():
    rng = random.Random(5)
    for _ in range(30):
        m = rng.randrange(1, 4)
        n = rng.randrange(1, 4)
        a = [[rng.randrange(-4, 5) for _ in range(n)] for _ in range(m)]
        basis = K.column_lattice_basis(a)
        bm = [[col[i] for col in basis] for i in range(m)]
        # every original column solves over the basis and conversely
        cols = [[a[i][j] for i in range(m)] for j in range(n)]
        if basis:
            assert K.solve_matrix(bm, cols) is not None
        else:
            assert all(not any(c) for c in cols)
        am = [[c[i] for c in cols] for i in range(m)]
        if cols:
            assert K.solve_matrix(am, basis) is not None


def test_hermite_basis_is_canonical():
    rng = random.Random(11)
    for _ in range(50):
        dim = rng.randrange(1, 4)
        cols = [
            [rng.randrange(-5, 6) for _ in range(dim)]
            for _ in range(rng.randrange(1, 4))
        ]
        b1 = K.hermite_column_basis(cols, dim)
        shuffled = cols[:]
        rng.shuffle(shuffled)
        scaled = [[2 * x for x in shuffled[0]]] + shuffled if shuffled else shuffled
        b2 = K.hermite_column_basis(scaled, dim)
        assert b1 == b2


def test_reduce_mod_lattice_symmetric_range():
    basis = K.hermite_column_basis([[4, 0], [0, 6]], 2)
    assert K.reduce_mod_lattice([2, 3], basis) == [2, 3]
    assert K.reduce_mod_lattice([-2, -3], basis) == [2, 3]  # positive ties
    assert K.reduce_mod_lattice([7, 13], basis) == [-1, 1]


def _brute_charpoly3(a):
    # det(tI - a) expanded by permutations, n <= 3
    n = len(a)
    import itertools

    coeffs = [0] * (n + 1)
    for perm in itertools.permutations(range(n)):
        sign = 1
        seen = [False] * n
        for i in range(n):
            if seen[i]:
                continue
            j = i
            ln = 0
            while not seen[j]:
                seen[j] = True
                j = perm[j]
                ln += 1
            if ln % 2 == 0:
                sign = -sign
        # product over i of (t*delta - a)[i][perm[i]]
        poly = [sign]
        for i in range(n):
            term = [-a[i][perm[i]], 1 if perm[i] == i else 0]
            new = [0] * (len(poly) + 1)
            for p, cp in enumerate(poly):
                new[p] += cp * term[0]
                new[p + 1] += cp * term[1]
            poly = new
        for p, cp in enumerate(poly):
            coeffs[p] += cp
    return coeffs


def test_charpoly_against_permanent_expansion():
    rng = random.Random(3)
    for _ in range(25):
        n = rng.randrange(1, 4)
        a = [[rng.randrange(-4, 5) for _ in range(n)] for _ in range(n)]
        assert K.charpoly(a) == _brute_charpoly3(a)


def test_compiled_backend_matches_pure():
    try:
        from prolim import _intkernel_c as comp
    except ImportError:
        pytest.skip("compiled kernel not built")
    rng = random.Random(99)
    for _ in range(60):
        m = rng.randrange(1, 5)
        n = rng.randrange(1, 5)
        a = [[rng.randrange(-7, 8) for _ in range(n)] for _ in range(m)]
        assert pure.smith_with_transforms([r[:] for r in a]) == comp.smith_with_transforms(
            [r[:] for r in a]
        )
    assert BACKEND in ("pure", "compiled")
