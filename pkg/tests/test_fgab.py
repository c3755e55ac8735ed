import random
from math import prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prolim import fgab as F
from prolim.errors import InputError


def test_canonical_form_merges_coprime_factors():
    assert F.Zmod(2, 3) == F.Zmod(6)
    assert F.Zmod(2, 4) != F.Zmod(8)
    assert F.FgAbGroup.from_diagonal([0, 30, 4]).torsion == (2, 60)


def test_canonical_form_is_idempotent():
    rng = random.Random(1)
    for _ in range(50):
        g = F.random_group(rng)
        again = F.FgAbGroup.from_diagonal([0] * g.free_rank + list(g.torsion))
        assert again == g


def test_invalid_chain_rejected():
    with pytest.raises(InputError):
        F.FgAbGroup(0, (2, 3))  # not a divisibility chain
    with pytest.raises(InputError):
        F.FgAbGroup(0, (1,))


def test_element_arithmetic():
    g = F.FgAbGroup(1, (4,))
    assert g.add((2, 3), (5, 2)) == (7, 1)
    assert g.neg((1, 1)) == (-1, 3)
    assert g.zero() == (0, 0)


def test_hom_well_definedness():
    # an order-2 generator cannot map to an odd element of Z/4
    with pytest.raises(InputError):
        F.GroupHom(F.Zmod(2), F.Zmod(4), [[1]])
    h = F.GroupHom(F.Zmod(2), F.Zmod(4), [[2]])
    assert h.apply((1,)) == (2,)
    # nor can it hit a free coordinate
    with pytest.raises(InputError):
        F.GroupHom(F.Zmod(2), F.Z(), [[1]])


def test_kernel_examples():
    # x2 on Z is injective
    ker, incl = F.kernel(F.GroupHom(F.Z(), F.Z(), [[2]]))
    assert ker.normal_form.is_trivial()
    # reduction Z/4 -> Z/2: kernel {0, 2}, by enumeration
    h = F.GroupHom(F.Zmod(4), F.Zmod(2), [[1]])
    ker, incl = F.kernel(h)
    assert ker.normal_form == F.Zmod(2)
    assert sorted(ker.elements()) == [(0,), (2,)]
    assert sorted(x for x in F.Zmod(4).elements() if h.apply(x) == (0,)) == [(0,), (2,)]
    # sum Z^2 -> Z: kernel is the antidiagonal line
    h2 = F.GroupHom(F.Z(2), F.Z(), [[1, 1]])
    ker2, incl2 = F.kernel(h2)
    assert ker2.normal_form == F.Z()
    brute = [
        (a, b)
        for a in range(-5, 6)
        for b in range(-5, 6)
        if a + b == 0
    ]
    assert all(ker2.contains(x) for x in brute)
    # inclusion composed with h is zero
    comp = h2.compose(incl2)
    assert comp.is_zero()


def test_image_examples():
    im = F.image(F.GroupHom(F.Z(), F.Z(), [[2]]))
    assert im.normal_form == F.Z()
    assert im.index_in_ambient() == 2
    im2 = F.image(F.GroupHom(F.Z(), F.Zmod(6), [[2]]))
    assert im2.normal_form == F.Zmod(3)
    assert sorted(im2.elements()) == [(0,), (2,), (4,)]
    assert F.image(F.GroupHom.zero(F.Z(), F.Zmod(4))).normal_form.is_trivial()


def test_image_membership_matches_solvability():
    rng = random.Random(7)
    for _ in range(40):
        src = F.random_group(rng, max_rank=1, factors=(2, 3, 4), max_torsion=2)
        tgt = F.random_group(rng, max_rank=1, factors=(2, 4, 6), max_torsion=2)
        h = F.random_hom(rng, src, tgt)
        im = F.image(h)
        for _ in range(6):
            x = tuple(rng.randrange(-3, 4) for _ in range(tgt.dim))
            x = tgt.reduce(x)
            assert im.contains(x) == (F.solve_hom(h, x) is not None)


def test_quotient_examples():
    q, proj = F.quotient(F.Z(), F.Subgroup(F.Z(), [(2,)]))
    assert q == F.Zmod(2)
    q2, proj2 = F.quotient(F.Z(2), F.Subgroup(F.Z(2), [(2, 0), (0, 3)]))
    assert q2 == F.Zmod(6)
    # element-level verification of the projection
    seen = {proj2.apply((a, b)) for a in range(6) for b in range(6)}
    assert len(seen) == 6
    g = F.Zmod(4)
    q3, _ = F.quotient(g, F.Subgroup.full(g))
    assert q3.is_trivial()


def test_quotient_projection_kernel_is_the_subgroup():
    rng = random.Random(3)
    for _ in range(30):
        g = F.random_group(rng, max_rank=1, factors=(2, 3, 4), max_torsion=2)
        gens = [
            g.reduce(tuple(rng.randrange(-2, 3) for _ in range(g.dim)))
            for _ in range(rng.randrange(3))
        ]
        sub = F.Subgroup(g, gens)
        q, proj = F.quotient(g, sub)
        assert F.is_surjective(proj)
        ker, _ = F.kernel(proj)
        assert F.subgroup_equal(ker, sub)


def test_subgroup_equal_examples():
    z = F.Z()
    assert F.subgroup_equal(F.Subgroup(z, [(2,)]), F.Subgroup(z, [(2,), (4,)]))
    assert not F.subgroup_equal(F.Subgroup(z, [(2,)]), F.Subgroup(z, [(4,)]))
    z2 = F.Z(2)
    assert F.subgroup_equal(
        F.Subgroup(z2, [(1, 1)]), F.Subgroup(z2, [(1, 1), (2, 2)])
    )
    with pytest.raises(InputError):
        F.subgroup_equal(F.Subgroup(z, [(1,)]), F.Subgroup(z2, [(1, 0)]))


def test_order_identity_kernel_times_image():
    rng = random.Random(11)
    checked = 0
    while checked < 60:
        src = F.random_group(rng, max_rank=0, factors=(2, 3, 4, 8), max_torsion=3)
        if not src.order() or src.order() > 64:
            continue
        tgt = F.random_group(rng, max_rank=0, factors=(2, 4, 6), max_torsion=2)
        h = F.random_hom(rng, src, tgt)
        ker, _ = F.kernel(h)
        assert ker.normal_form.order() * F.image(h).normal_form.order() == src.order()
        # brute-force cross-check on small groups
        if src.order() <= 16:
            kcount = sum(1 for x in src.elements() if h.apply(x) == tgt.zero())
            assert kcount == ker.normal_form.order()
        checked += 1


def test_quotient_by_image_matches_stacked_cokernel():
    # independent route: Smith form of (matrix | target relations)
    rng = random.Random(23)
    for _ in range(40):
        src = F.random_group(rng, max_rank=1, factors=(2, 3, 4), max_torsion=2)
        tgt = F.random_group(rng, max_rank=1, factors=(2, 4), max_torsion=2)
        h = F.random_hom(rng, src, tgt)
        q, _ = F.quotient(tgt, F.image(h))
        cols = [
            [h.matrix[i][j] for i in range(tgt.dim)] for j in range(src.dim)
        ] + tgt.relation_columns()
        pres = F.cokernel_presentation(tgt.dim, cols)
        assert q == pres.group


@settings(max_examples=60, deadline=None)
@given(
    st.lists(
        st.lists(st.integers(min_value=-5, max_value=5), min_size=1, max_size=4),
        min_size=1,
        max_size=4,
    ).filter(lambda rows: len({len(r) for r in rows}) == 1)
)
def test_snf_property_random_matrices(rows):
    u, d, v = F.smith_normal_form(rows)
    from prolim._backend import kernel as K

    assert K.mat_mul(K.mat_mul(u, rows), v) == d
    assert abs(K.det_via_smith(u)) == 1
    assert abs(K.det_via_smith(v)) == 1


def test_direct_sum_round_trip():
    g, incs, projs = F.direct_sum(F.Zmod(4), F.Z(), F.Zmod(6))
    assert g == F.FgAbGroup(1, (2, 12))
    for i, part in enumerate((F.Zmod(4), F.Z(), F.Zmod(6))):
        assert projs[i].compose(incs[i]).matrix == F.GroupHom.identity(part).matrix
        for j in range(len(incs)):
            if j != i:
                assert projs[i].compose(incs[j]).is_zero()


def test_solve_hom_minimal_deterministic():
    h = F.GroupHom(F.Z(2), F.Z(), [[1, 1]])
    x = F.solve_hom_minimal(h, (3,))
    assert x is not None and x[0] + x[1] == 3
    assert x == F.solve_hom_minimal(h, (3,))
    # tower lift picks the representative in [0, d)
    h2 = F.GroupHom(F.Zmod(8), F.Zmod(4), [[1]])
    assert F.solve_hom_minimal(h2, (1,)) == (1,)


def test_eventual_image_lattice_cases():
    assert F.eventual_image_lattice([[2]]) == []
    assert len(F.eventual_image_lattice([[0, 1], [1, 0]])) == 2
    w = F.eventual_image_lattice([[1, 0], [0, 2]])
    assert len(w) == 1 and w[0][1] == 0
    # shear onto an invariant line: intersection of images is a + b = 0
    w2 = F.eventual_image_lattice([[2, 1], [0, 1]])
    assert len(w2) == 1 and sum(w2[0]) == 0


def test_subgroup_index_and_intersection():
    z2 = F.Z(2)
    a = F.Subgroup(z2, [(2, 0), (0, 2)])
    assert a.index_in_ambient() == 4
    b = F.Subgroup(z2, [(1, 0), (0, 2)])
    assert a.index_in(b) == 2
    c = a.intersection(b)
    assert F.subgroup_equal(c, a)
    line = F.Subgroup(z2, [(1, 1)])
    meet = line.intersection(F.Subgroup(z2, [(1, -1)]))
    assert meet.normal_form.is_trivial() or meet.normal_form == F.Z()
    # (1,1) and (1,-1) span index-2; their intersection is 2Z(1,... ) rank 1? no:
    # the lines meet only at multiples of (0,0) unless parallel
    assert meet.normal_form.is_trivial()
