import pytest

from prolim import fgab as F
from prolim import topgrp as T
from prolim.errors import InputError


def mixed_space():
    a = T.FiniteTopAbGroup.discrete(F.Zmod(2))
    b = T.FiniteTopAbGroup.indiscrete(F.Zmod(3))
    return T.FiniteTopAbGroup.product(a, b)


def test_validator_accepts_coset_topology():
    g = F.Zmod(4)
    top = T.FiniteTopAbGroup.from_subgroup(g, [(0,), (2,)])
    # re-validate the constructed family explicitly
    T.FiniteTopAbGroup(g, top.opens)


def test_validator_rejects_non_topologies():
    g = F.Zmod(4)
    full = (1 << 4) - 1
    with pytest.raises(InputError):
        T.FiniteTopAbGroup(g, [0b0001, full])  # missing empty set
    with pytest.raises(InputError):
        T.FiniteTopAbGroup(g, [0, 0b0011, 0b0110, full])  # not union-closed
    # unions of {0,1} and its translates: not translation invariant
    with pytest.raises(InputError):
        T.FiniteTopAbGroup(g, [0, 0b0011, full])


def test_closure_of_zero_examples():
    disc = T.FiniteTopAbGroup.discrete(F.Zmod(4))
    sub, elems = T.closure_of_zero(disc)
    assert elems == [(0,)]
    ind = T.FiniteTopAbGroup.indiscrete(F.Zmod(4))
    _sub, elems = T.closure_of_zero(ind)
    assert len(elems) == 4
    prod = mixed_space()
    _sub, elems = T.closure_of_zero(prod)
    assert len(elems) == 3  # {0} x Z/3


def test_quotient_topology_discrete():
    ind = T.FiniteTopAbGroup.indiscrete(F.Zmod(2))
    q, _proj, _pm = T.quotient_topology(ind)
    assert q.group.is_trivial()
    disc = T.FiniteTopAbGroup.discrete(F.Zmod(4))
    q2, _p, _m = T.quotient_topology(disc)
    assert q2.group == F.Zmod(4)
    prod = mixed_space()
    q3, _p3, _m3 = T.quotient_topology(prod)
    assert q3.group == F.Zmod(2)


def test_splitting_check_trivial_cases():
    ind = T.FiniteTopAbGroup.indiscrete(F.Zmod(2))
    for s in T.sections_of(ind):
        assert T.splitting_check(ind, s).ok
    disc = T.FiniteTopAbGroup.discrete(F.Zmod(4))
    secs = list(T.sections_of(disc))
    assert len(secs) == 1  # the identity section
    assert T.splitting_check(disc, secs[0]).ok


def test_splitting_check_mixed_all_sections():
    prod = mixed_space()
    ctx = T.SplittingContext(prod)
    results = [T.splitting_check(prod, s, ctx) for s in ctx.sections()]
    assert len(results) == 9
    assert all(r.ok for r in results)


def test_splitting_check_rejects_non_section():
    prod = mixed_space()
    ctx = T.SplittingContext(prod)
    sec = next(ctx.sections())
    table = dict(sec.table)
    qs = sorted(table)
    # swap two representatives so projections no longer match
    table[qs[0]], table[qs[1]] = table[qs[1]], table[qs[0]]
    with pytest.raises(InputError):
        T.splitting_check(prod, T.SectionMap(table), ctx)


def test_translated_basis_examples():
    disc = T.FiniteTopAbGroup.discrete(F.Zmod(3))
    zero_only = [1 << disc.index[(0,)]]
    assert T.translated_basis_check(disc, zero_only)
    ind = T.FiniteTopAbGroup.indiscrete(F.Zmod(3))
    assert T.translated_basis_check(ind, [ind.full_mask])
    prod = mixed_space()
    _s, elems = T.closure_of_zero(prod)
    basis = [prod.mask_of(elems)]
    assert T.translated_basis_check(prod, basis)
    with pytest.raises(InputError):
        T.translated_basis_check(disc, [disc.mask_of([(1,)])])


def test_opens_are_unions_of_cosets_for_every_coset_topology():
    for g in T.abelian_groups_upto(8):
        for sub in T.all_subgroups(g):
            top = T.FiniteTopAbGroup.from_subgroup(g, sub)
            _cl, elems = T.closure_of_zero(top)
            assert sorted(elems) == sorted(sub)
            sub_set = set(sub)
            for u in top.opens:
                members = {tuple(e) for e in top.elems_of(u)}
                for e in list(members):
                    coset = {g.add(e, x) for x in sub_set}
                    assert coset <= members


def test_subgroup_enumeration_counts():
    # Z/2 x Z/2 has 5 subgroups; Z/8 has 4; (Z/2)^3 has 16
    assert len(T.all_subgroups(F.Zmod(2, 2))) == 5
    assert len(T.all_subgroups(F.Zmod(8))) == 4
    assert len(T.all_subgroups(F.FgAbGroup(0, (2, 2, 2)))) == 16


def test_invariant_factor_chains():
    assert T.invariant_factor_chains(16) == [
        [2, 2, 2, 2],
        [2, 2, 4],
        [2, 8],
        [4, 4],
        [16],
    ]
    assert sum(1 for _ in T.abelian_groups_upto(16)) == 25
