"""Finite topological abelian groups and the product-splitting verifier.

Topologies are explicit open-set families over the element set of a finite
group, stored as integer bitmasks.  The checks are exhaustive over
elements, sections and (via the minimal-open basis, which generates every
open under unions) over opens: a finite topology is determined by its
minimal neighborhoods, so basis checks are exact, not sampled.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from prolim import fgab
from prolim.errors import InputError, PreconditionError
from prolim.fgab import FgAbGroup, Subgroup


class FiniteTopAbGroup:
    """A finite abelian group with a validated group topology."""

    __slots__ = (
        "group",
        "elements",
        "index",
        "opens",
        "full_mask",
        "add",
        "neg",
        "_min_nbhd",
    )

    def __init__(self, group, opens_masks, validate=True, min_nbhds_hint=None):
        if not group.is_finite():
            raise InputError("topologies are stored for finite groups only")
        elements = list(group.elements())
        index = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        full = (1 << n) - 1
        opens = frozenset(opens_masks)
        object.__setattr__(self, "group", group)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "opens", opens)
        object.__setattr__(self, "full_mask", full)
        add = [
            [index[group.add(a, b)] for b in elements] for a in elements
        ]
        neg = [index[group.neg(a)] for a in elements]
        object.__setattr__(self, "add", add)
        object.__setattr__(self, "neg", neg)
        object.__setattr__(self, "_min_nbhd", min_nbhds_hint)
        if validate:
            self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("FiniteTopAbGroup is immutable")

    # -- masks ---------------------------------------------------------

    def mask_of(self, elems):
        m = 0
        for e in elems:
            m |= 1 << self.index[tuple(e)]
        return m

    def elems_of(self, mask):
        return [self.elements[i] for i in range(len(self.elements)) if mask >> i & 1]

    def translate_mask(self, g, mask):
        gi = self.index[tuple(g)]
        row = self.add[gi]
        out = 0
        i = 0
        m = mask
        while m:
            if m & 1:
                out |= 1 << row[i]
            m >>= 1
            i += 1
        return out

    # -- axioms ---------------------------------------------------------

    def _validate(self):
        n = len(self.elements)
        opens = self.opens
        if 0 not in opens or self.full_mask not in opens:
            raise InputError("opens must contain the empty set and the whole set")
        singletons = all((1 << i) in opens for i in range(n))
        if singletons:
            if len(opens) != 1 << n:
                raise InputError("all singletons open forces the discrete topology")
        else:
            if len(opens) > 4096:
                raise InputError("open family too large to validate explicitly")
            for a in opens:
                for b in opens:
                    if (a | b) not in opens or (a & b) not in opens:
                        raise InputError("opens not closed under union/intersection")
        for g in self.elements:
            for u in opens:
                if self.translate_mask(g, u) not in opens:
                    raise InputError("translation does not preserve opens")
        # continuity of (x, y) -> x - y via minimal product neighborhoods
        mn = self.min_nbhds()
        for u in opens:
            for ai in range(n):
                for bi in range(n):
                    diff = self.add[ai][self.neg[bi]]
                    if not (u >> diff & 1):
                        continue
                    ok = True
                    for xi in self.elems_idx(mn[ai]):
                        for yi in self.elems_idx(mn[bi]):
                            if not (u >> self.add[xi][self.neg[yi]] & 1):
                                ok = False
                                break
                        if not ok:
                            break
                    if not ok:
                        raise InputError("subtraction is not continuous")

    def elems_idx(self, mask):
        out = []
        i = 0
        while mask:
            if mask & 1:
                out.append(i)
            mask >>= 1
            i += 1
        return out

    def min_nbhds(self):
        """mask of the minimal open neighborhood of each element."""
        cached = self._min_nbhd
        if cached is not None:
            return cached
        n = len(self.elements)
        mn = []
        for i in range(n):
            m = self.full_mask
            for u in self.opens:
                if u >> i & 1:
                    m &= u
            mn.append(m)
        object.__setattr__(self, "_min_nbhd", mn)
        return mn

    def basis_masks(self):
        """The minimal-open basis (every open is a union of these)."""
        return sorted(set(self.min_nbhds()))

    def is_open(self, mask):
        if mask in self.opens:
            return True
        # unions of minimal neighborhoods of members
        mn = self.min_nbhds()
        for i in self.elems_idx(mask):
            if mn[i] & ~mask:
                return False
        return True

    # -- constructors ----------------------------------------------------

    @classmethod
    def discrete(cls, group):
        n = group.order()
        return cls(
            group,
            _all_masks(n),
            validate=False,
            min_nbhds_hint=[1 << i for i in range(n)],
        )

    @classmethod
    def indiscrete(cls, group):
        n = group.order()
        return cls(group, [0, (1 << n) - 1], validate=False)

    @classmethod
    def from_subgroup(cls, group, sub_elements):
        """The coset topology: opens are exactly the unions of N-cosets."""
        elements = list(group.elements())
        index = {e: i for i, e in enumerate(elements)}
        sub = {tuple(e) for e in sub_elements}
        if group.zero() not in sub:
            raise InputError("subgroup must contain zero")
        seen = set()
        coset_masks = []
        for e in elements:
            if e in seen:
                continue
            coset = {group.add(e, s) for s in sub}
            seen |= coset
            m = 0
            for c in coset:
                m |= 1 << index[c]
            coset_masks.append(m)
        opens = []
        for combo in range(1 << len(coset_masks)):
            m = 0
            for j in range(len(coset_masks)):
                if combo >> j & 1:
                    m |= coset_masks[j]
            opens.append(m)
        elem_coset = [0] * len(elements)
        for cm in coset_masks:
            for i in range(len(elements)):
                if cm >> i & 1:
                    elem_coset[i] = cm
        return cls(group, opens, validate=False, min_nbhds_hint=elem_coset)

    @classmethod
    def product(cls, a, b):
        """Product group with the product topology."""
        g, _incs, projs = fgab.direct_sum(a.group, b.group)
        elements = list(g.elements())
        index = {e: i for i, e in enumerate(elements)}
        pa, pb = projs

        def rect(ua, ub):
            m = 0
            ua_set = set(map(tuple, a.elems_of(ua)))
            ub_set = set(map(tuple, b.elems_of(ub)))
            for e in elements:
                if pa.apply(e) in ua_set and pb.apply(e) in ub_set:
                    m |= 1 << index[e]
            return m

        rects = {rect(ua, ub) for ua in a.opens for ub in b.opens}
        opens = set(rects)
        # close under unions (finite, small families)
        frontier = set(opens)
        while frontier:
            new = set()
            for u in frontier:
                for v in rects:
                    w = u | v
                    if w not in opens:
                        new.add(w)
            opens |= new
            frontier = new
        return cls(g, opens, validate=False)


def _all_masks(n):
    return range(1 << n)


def closure_of_zero(g):
    """Smallest closed set containing zero; always a subgroup."""
    full = g.full_mask
    zero_bit = 1 << g.index[g.group.zero()]
    cl = full
    for u in g.opens:
        c = full & ~u
        if c & zero_bit:
            cl &= c
    elems = g.elems_of(cl)
    elem_set = {tuple(e) for e in elems}
    for a in elems:
        for b in elems:
            if g.group.sub(a, b) not in elem_set:
                raise AssertionError("closure of zero is not a subgroup")
    return Subgroup(g.group, elems), elems


def _closure_quotient(g):
    """(quotient group, projection, coset preimage masks); checks that the
    quotient topology is discrete (every coset of cl{0} is open)."""
    cl_sub, _cl_elems = closure_of_zero(g)
    q_group, proj = fgab.quotient(g.group, cl_sub)
    q_elements = list(q_group.elements())
    preimage_masks = {qe: 0 for qe in q_elements}
    for e in g.elements:
        preimage_masks[proj.apply(e)] |= 1 << g.index[e]
    for qe in q_elements:
        if not g.is_open(preimage_masks[qe]):
            raise AssertionError("quotient by the closure of zero is not discrete")
    return q_group, proj, preimage_masks


def quotient_topology(g):
    """The coset group of cl{0} with the quotient topology (discrete here)."""
    q_group, proj, preimage_masks = _closure_quotient(g)
    return FiniteTopAbGroup.discrete(q_group), proj, preimage_masks


@dataclass(frozen=True)
class SectionMap:
    """A set-theoretic section of the quotient map: one representative per
    coset, keyed by the coset's coordinates in the quotient group."""

    table: dict

    def __call__(self, q):
        return self.table[tuple(q)]


class SplittingContext:
    """Per-topology data shared by all section checks."""

    __slots__ = (
        "g",
        "proj",
        "q_elems",
        "q_index",
        "elem_q",
        "cl_set",
        "cl_index",
        "cl_min",
        "pair_index",
        "pairs",
        "pair_min",
        "pair_col",
        "basis",
        "basic_at_zero",
    )

    def __init__(self, g):
        self.g = g
        _qg, proj, _pm = _closure_quotient(g)
        self.proj = proj
        _cl_sub, cl_elems = closure_of_zero(g)
        self.cl_set = [tuple(e) for e in cl_elems]
        self.cl_index = {h: i for i, h in enumerate(self.cl_set)}
        self.elem_q = {e: proj.apply(e) for e in g.elements}
        self.q_elems = sorted(set(self.elem_q.values()))
        self.q_index = {q: i for i, q in enumerate(self.q_elems)}
        # subspace topology on cl{0} and its minimal neighborhoods
        nc = len(self.cl_set)
        cl_opens = set()
        for u in g.opens:
            m = 0
            for h in self.cl_set:
                if u >> g.index[h] & 1:
                    m |= 1 << self.cl_index[h]
            cl_opens.add(m)
        self.cl_min = []
        for h in self.cl_set:
            m = (1 << nc) - 1
            for u in cl_opens:
                if u >> self.cl_index[h] & 1:
                    m &= u
            self.cl_min.append(m)
        # pairs (q, h) indexed q-major
        self.pairs = [(q, h) for q in self.q_elems for h in self.cl_set]
        self.pair_index = {p: i for i, p in enumerate(self.pairs)}
        self.pair_min = []
        for q, h in self.pairs:
            m = 0
            hm = self.cl_min[self.cl_index[h]]
            base = self.q_index[q] * nc
            j = 0
            while hm:
                if hm & 1:
                    m |= 1 << (base + j)
                hm >>= 1
                j += 1
            self.pair_min.append(m)
        self.pair_col = [
            ((1 << nc) - 1) << (qi * nc) for qi in range(len(self.q_elems))
        ]
        self.basis = g.basis_masks()
        zero_i = g.index[g.group.zero()]
        self.basic_at_zero = sorted(
            {u for u in self.basis if u >> zero_i & 1} | {g.full_mask}
        )

    def sections(self):
        cosets = {}
        for e in self.g.elements:
            cosets.setdefault(self.elem_q[e], []).append(e)
        keys = sorted(cosets)
        for combo in itertools.product(*(cosets[k] for k in keys)):
            yield SectionMap(dict(zip(keys, combo)))


def sections_of(g):
    """All sections of G -> G/cl{0} (every choice of representatives)."""
    yield from SplittingContext(g).sections()


@dataclass(frozen=True)
class SplittingReport:
    bijective: bool
    forward_continuous: bool
    inverse_continuous: bool
    sandwich_ok: bool
    opens_checked: int

    @property
    def ok(self):
        return (
            self.bijective
            and self.forward_continuous
            and self.inverse_continuous
            and self.sandwich_ok
        )

    def to_json(self):
        return {
            "bijective": self.bijective,
            "forward_continuous": self.forward_continuous,
            "inverse_continuous": self.inverse_continuous,
            "sandwich_ok": self.sandwich_ok,
            "opens_checked": self.opens_checked,
        }


def splitting_check(g, section, ctx=None):
    """Verify (x, h) -> s(x) + h is a homeomorphism
    G/cl{0} x cl{0} -> G, and the preimage identity
    f^{-1}(g + V) = pi(g + V) x cl{0} for basic opens V at zero.

    All element- and section-level checks are exhaustive; open-set checks
    run over the minimal-open basis, which generates every open by unions.
    """
    if ctx is None:
        ctx = SplittingContext(g)
    for qe in ctx.q_elems:
        if ctx.elem_q[section(qe)] != qe:
            raise InputError("not a section of the quotient map")

    # f as a map pair-index -> element-index, and its preimage per element
    f_elem = []
    elem_pair = [-1] * len(g.elements)
    for i, (q, h) in enumerate(ctx.pairs):
        e = g.group.add(section(q), h)
        ei = g.index[e]
        f_elem.append(ei)
        elem_pair[ei] = i
    bijective = len(set(f_elem)) == len(g.elements) == len(ctx.pairs)

    def pre_mask(elem_mask):
        m = 0
        i = 0
        while elem_mask:
            if elem_mask & 1:
                m |= 1 << elem_pair[i]
            elem_mask >>= 1
            i += 1
        return m

    def product_open(pm):
        rest = pm
        i = 0
        while rest:
            if rest & 1 and ctx.pair_min[i] & ~pm:
                return False
            rest >>= 1
            i += 1
        return True

    opens_checked = 0
    forward = True
    for u in ctx.basis:
        opens_checked += 1
        if not product_open(pre_mask(u)):
            forward = False
            break

    inverse = True
    nc = len(ctx.cl_set)
    for qi in range(len(ctx.q_elems)):
        for cm in sorted(set(ctx.cl_min)):
            img = 0
            j = 0
            m = cm
            while m:
                if m & 1:
                    img |= 1 << f_elem[qi * nc + j]
                m >>= 1
                j += 1
            opens_checked += 1
            if not g.is_open(img):
                inverse = False
                break
        if not inverse:
            break

    sandwich = True
    for gv in g.elements:
        for u in ctx.basic_at_zero:
            shifted = g.translate_mask(gv, u)
            lhs = pre_mask(shifted)
            rhs = 0
            m = shifted
            i = 0
            while m:
                if m & 1:
                    rhs |= ctx.pair_col[ctx.q_index[ctx.elem_q[g.elements[i]]]]
                m >>= 1
                i += 1
            opens_checked += 1
            if lhs != rhs:
                sandwich = False
                break
        if not sandwich:
            break

    return SplittingReport(bijective, forward, inverse, sandwich, opens_checked)


def translated_basis_check(g, basis_masks):
    """True iff {g + V} is a neighborhood basis at g for every g, given a
    neighborhood basis {V} at zero."""
    zero_i = g.index[g.group.zero()]
    for v in basis_masks:
        if not (v >> zero_i & 1):
            raise InputError("basis member does not contain zero")
        if not g.is_open(v):
            raise InputError("basis member is not open")
    mn = g.min_nbhds()
    # basis at zero: some member inside every open around zero
    for u in g.opens:
        if u >> zero_i & 1 and not any(v & ~u == 0 for v in basis_masks):
            raise InputError("not a neighborhood basis at zero")
    for gi, gv in enumerate(g.elements):
        for u in g.opens:
            if not (u >> gi & 1):
                continue
            if not any(g.translate_mask(gv, v) & ~u == 0 for v in basis_masks):
                return False
    return True


# -- enumeration helpers (for the exhaustive acceptance sweep) -------------


def invariant_factor_chains(order):
    """All invariant-factor chains with the given product."""
    if order == 1:
        return [[]]
    out = []
    for d in range(2, order + 1):
        if order % d:
            continue
        for rest in invariant_factor_chains(order // d):
            if not rest or rest[0] % d == 0:
                out.append([d] + rest)
    return out


def abelian_groups_upto(max_order):
    for order in range(1, max_order + 1):
        for chain in invariant_factor_chains(order):
            yield FgAbGroup(0, chain)


def all_subgroups(group):
    """Every subgroup of a finite group, as element sets."""
    elements = list(group.elements())
    zero = group.zero()

    def closure(gens):
        s = {zero}
        frontier = list(gens)
        while frontier:
            x = frontier.pop()
            if x in s:
                continue
            s.add(x)
            for y in list(s):
                for z in (group.add(x, y), group.sub(y, x)):
                    if z not in s:
                        frontier.append(z)
        return frozenset(s)

    subs = {frozenset({zero})}
    frontier = [frozenset({zero})]
    while frontier:
        s = frontier.pop()
        for e in elements:
            if e not in s:
                bigger = closure(s | {e})
                if bigger not in subs:
                    subs.add(bigger)
                    frontier.append(bigger)
    return sorted(subs, key=lambda s: (len(s), sorted(s)))
