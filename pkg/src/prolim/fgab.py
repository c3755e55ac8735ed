"""Finitely generated abelian groups via exact integer linear algebra.

A group is kept in invariant-factor normal form: free generators first,
then torsion generators with orders d1 | d2 | ... (each >= 2).  Elements
are plain tuples of ints with torsion coordinates reduced into [0, di).
Homomorphisms are integer matrices (column j = image of source generator
j in target coordinates).  Subgroups are generator lists with a lazily
computed normal form; under the hood every subgroup is the lattice
spanned by its generators together with the ambient relation lattice.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import reduce
from math import gcd

from prolim._backend import kernel as _k
from prolim.errors import EnumerationCapExceeded, InputError


def smith_normal_form(matrix):
    """(U, D, V) with U*matrix*V = D diagonal, d1 | d2 | ..., U, V unimodular."""
    rows = [list(r) for r in matrix]
    u, d, v, _ui, _vi = _k.smith_with_transforms(rows)
    return u, d, v


def _normalize_invariants(diag):
    """Split a Smith diagonal into (free_count_from, torsion list >= 2)."""
    torsion = [abs(x) for x in diag if abs(x) >= 2]
    torsion.sort()
    return torsion


class FgAbGroup:
    """Z^free_rank + Z/d1 + ... + Z/dk with d1 | d2 | ... | dk, all di >= 2."""

    __slots__ = ("free_rank", "torsion")

    def __init__(self, free_rank=0, torsion=()):
        torsion = tuple(int(d) for d in torsion)
        if free_rank < 0:
            raise InputError("free_rank must be nonnegative")
        for d in torsion:
            if d < 2:
                raise InputError("invariant factors must be >= 2")
        for a, b in zip(torsion, torsion[1:]):
            if b % a:
                raise InputError(f"invariant factors must form a divisibility chain, got {torsion}")
        object.__setattr__(self, "free_rank", int(free_rank))
        object.__setattr__(self, "torsion", torsion)

    def __setattr__(self, name, value):
        raise AttributeError("FgAbGroup is immutable")

    @classmethod
    def from_diagonal(cls, diag):
        """Normalize an arbitrary list of cyclic orders (0 = Z) to canonical form.

        >>> FgAbGroup.from_diagonal([2, 3])
        FgAbGroup(0, (6,))
        """
        free = sum(1 for x in diag if x == 0)
        tors = [abs(x) for x in diag if abs(x) >= 2]
        if not tors:
            return cls(free, ())
        # Smith of diag(tors) merges coprime parts into the invariant chain
        n = len(tors)
        mat = [[tors[i] if i == j else 0 for j in range(n)] for i in range(n)]
        _u, d, _v, _ui, _vi = _k.smith_with_transforms(mat)
        return cls(free, _normalize_invariants(_k.smith_diagonal(d)))

    @property
    def dim(self):
        return self.free_rank + len(self.torsion)

    def is_finite(self):
        return self.free_rank == 0

    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def order(self):
        """|G| for finite groups, None otherwise."""
        if not self.is_finite():
            return None
        p = 1
        for d in self.torsion:
            p *= d
        return p

    def zero(self):
        return (0,) * self.dim

    def reduce(self, vec):
        """Canonical coordinates: torsion entries into [0, di)."""
        vec = tuple(vec)
        if len(vec) != self.dim:
            raise InputError(f"coordinate length {len(vec)} != dim {self.dim}")
        r = self.free_rank
        return vec[:r] + tuple(x % d for x, d in zip(vec[r:], self.torsion))

    def add(self, x, y):
        return self.reduce(tuple(a + b for a, b in zip(x, y)))

    def neg(self, x):
        return self.reduce(tuple(-a for a in x))

    def sub(self, x, y):
        return self.reduce(tuple(a - b for a, b in zip(x, y)))

    def scale(self, n, x):
        return self.reduce(tuple(n * a for a in x))

    def relation_columns(self):
        """Columns spanning the relation lattice (di * torsion unit vectors)."""
        n = self.dim
        r = self.free_rank
        cols = []
        for i, d in enumerate(self.torsion):
            col = [0] * n
            col[r + i] = d
            cols.append(col)
        return cols

    def elements(self):
        """Iterate all elements; only valid for finite groups."""
        if not self.is_finite():
            raise EnumerationCapExceeded("cannot enumerate an infinite group")
        for combo in itertools.product(*(range(d) for d in self.torsion)):
            yield combo

    def elements_capped(self, cap):
        """Deterministic enumeration of at most `cap` elements.

        Free coordinates are swept in rings of increasing max-norm with the
        order 0, 1, -1, 2, -2, ...; the torsion block is exhausted first.
        """
        if self.is_finite():
            count = 0
            for x in self.elements():
                if count >= cap:
                    raise EnumerationCapExceeded(f"enumeration cap {cap} exceeded")
                count += 1
                yield x
            return
        r = self.free_rank

        def ordered_ints():
            yield 0
            k = 1
            while True:
                yield k
                yield -k
                k += 1

        count = 0
        seen_radius = 0
        while True:
            radius = seen_radius
            # all free vectors with max-norm == radius, lexicographic in the
            # 0,1,-1,2,-2,... coordinate order
            ring = []
            vals = [0] + [s * k for k in range(1, radius + 1) for s in (1, -1)]
            for free in itertools.product(vals, repeat=r):
                if max((abs(a) for a in free), default=0) == radius:
                    ring.append(free)
            for free in ring:
                for tors in itertools.product(*(range(d) for d in self.torsion)):
                    if count >= cap:
                        return
                    count += 1
                    yield free + tors
            seen_radius += 1

    def to_json(self):
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}

    @classmethod
    def from_json(cls, obj):
        try:
            return cls(obj["free_rank"], obj["torsion"])
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad group object {obj!r}: {exc}") from exc

    def __eq__(self, other):
        return (
            isinstance(other, FgAbGroup)
            and self.free_rank == other.free_rank
            and self.torsion == other.torsion
        )

    def __hash__(self):
        return hash((self.free_rank, self.torsion))

    def __repr__(self):
        return f"FgAbGroup({self.free_rank}, {self.torsion})"

    def __str__(self):
        parts = ["Z"] * self.free_rank + [f"Z/{d}" for d in self.torsion]
        return " + ".join(parts) if parts else "0"


ZERO_GROUP = FgAbGroup(0, ())


def Z(rank=1):
    return FgAbGroup(rank, ())


def Zmod(*ds):
    return FgAbGroup.from_diagonal(list(ds))


class GroupHom:
    """Homomorphism between FgAbGroups as an integer matrix.

    Column j is the image of source generator j in target coordinates.
    Construction validates well-definedness: an order-d source generator
    must map to an element killed by d.
    """

    __slots__ = ("source", "target", "matrix")

    def __init__(self, source, target, matrix, check=True):
        matrix = tuple(tuple(int(x) for x in row) for row in matrix)
        if len(matrix) != target.dim or any(len(r) != source.dim for r in matrix):
            raise InputError(
                f"matrix shape {len(matrix)}x{len(matrix[0]) if matrix else 0} "
                f"does not match target dim {target.dim} x source dim {source.dim}"
            )
        # store with torsion rows reduced
        matrix = tuple(
            zip(*(target.reduce(col) for col in zip(*matrix)))
        ) if matrix and matrix[0] else matrix
        object.__setattr__(self, "source", source)
        object.__setattr__(self, "target", target)
        object.__setattr__(self, "matrix", matrix)
        if check:
            self._check_well_defined()

    def __setattr__(self, name, value):
        raise AttributeError("GroupHom is immutable")

    def _check_well_defined(self):
        src = self.source
        tgt = self.target
        r = src.free_rank
        for j, d in enumerate(src.torsion):
            col = [row[r + j] for row in self.matrix]
            scaled = [d * x for x in col]
            if any(tgt.reduce(tuple(scaled))):
                raise InputError(
                    f"column {r + j} of order-{d} generator does not vanish under {d}"
                )

    def apply(self, x):
        if len(x) != self.source.dim:
            raise InputError("element does not belong to the source group")
        return self.target.reduce(tuple(_k.mat_vec([list(r) for r in self.matrix], list(x))))

    def __call__(self, x):
        return self.apply(x)

    def compose(self, other):
        """self o other (apply `other` first)."""
        if other.target != self.source:
            raise InputError("composition mismatch")
        if self.source.dim == 0:
            return GroupHom.zero(other.source, self.target)
        prod = _k.mat_mul([list(r) for r in self.matrix], [list(r) for r in other.matrix])
        return GroupHom(other.source, self.target, prod, check=False)

    @classmethod
    def identity(cls, g):
        return cls(g, g, _k.identity_matrix(g.dim), check=False)

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, _k.zero_matrix(target.dim, source.dim), check=False)

    def is_zero(self):
        return all(not x for row in self.matrix for x in row)

    def to_json(self):
        return {
            "source": self.source.to_json(),
            "target": self.target.to_json(),
            "matrix": [list(r) for r in self.matrix],
        }

    @classmethod
    def from_json(cls, obj):
        try:
            return cls(
                FgAbGroup.from_json(obj["source"]),
                FgAbGroup.from_json(obj["target"]),
                obj["matrix"],
            )
        except (KeyError, TypeError) as exc:
            raise InputError(f"bad hom object: {exc}") from exc

    def __eq__(self, other):
        return (
            isinstance(other, GroupHom)
            and self.source == other.source
            and self.target == other.target
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((self.source, self.target, self.matrix))

    def __repr__(self):
        return f"GroupHom({self.source} -> {self.target}, {self.matrix})"


@dataclass(frozen=True)
class Presentation:
    """Cokernel presentation Z^n / columns, canonicalized.

    group: the invariant-factor normal form of the quotient
    project: dim(group) x n matrix expressing the quotient map
    lift: n x dim(group) matrix with project @ lift = identity (mod torsion)
    """

    group: FgAbGroup
    project: tuple
    lift: tuple


def cokernel_presentation(n, rel_cols):
    """Present Z^n modulo the lattice spanned by rel_cols (list of columns)."""
    if n == 0:
        return Presentation(ZERO_GROUP, (), ())
    if not rel_cols:
        g = FgAbGroup(n, ())
        eye = _k.identity_matrix(n)
        return Presentation(g, tuple(map(tuple, eye)), tuple(map(tuple, eye)))
    mat = [[col[i] for col in rel_cols] for i in range(n)]
    u, d, _v, uinv, _vi = _k.smith_with_transforms(mat)
    diag = _k.smith_diagonal(d)
    rank = sum(1 for x in diag if x)
    free_rows = list(range(rank, n))
    torsion_rows = [i for i in range(rank) if abs(diag[i]) >= 2]
    torsion = [abs(diag[i]) for i in torsion_rows]
    group = FgAbGroup(len(free_rows), torsion)
    order = free_rows + torsion_rows
    project = [u[i][:] for i in order]
    lift = [[uinv[r][i] for i in order] for r in range(n)]
    # reduce torsion rows of the projection into canonical range
    proj_reduced = []
    for newi, row in enumerate(project):
        if newi >= len(free_rows):
            dmod = torsion[newi - len(free_rows)]
            row = [x % dmod for x in row]
        proj_reduced.append(tuple(row))
    return Presentation(group, tuple(proj_reduced), tuple(tuple(r) for r in lift))


class Subgroup:
    """Subgroup of an FgAbGroup, carried as a generator list.

    The underlying object is the lattice in Z^dim spanned by the generators
    together with the ambient relations; normal form, membership, indices
    and the inclusion hom are all derived from it lazily.
    """

    __slots__ = ("ambient", "generators", "_basis", "_pres", "_incl")

    def __init__(self, ambient, generators):
        object.__setattr__(self, "ambient", ambient)
        gens = tuple(ambient.reduce(g) for g in generators)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "_basis", None)
        object.__setattr__(self, "_pres", None)
        object.__setattr__(self, "_incl", None)

    def __setattr__(self, name, value):
        raise AttributeError("Subgroup is immutable")

    @classmethod
    def full(cls, ambient):
        eye = _k.identity_matrix(ambient.dim)
        return cls(ambient, [tuple(col) for col in zip(*eye)] if ambient.dim else [])

    @classmethod
    def trivial(cls, ambient):
        return cls(ambient, [])

    def lattice_basis(self):
        """Hermite basis (list of columns) of span(generators) + relations."""
        b = self._basis
        if b is None:
            cols = [list(g) for g in self.generators] + self.ambient.relation_columns()
            b = _k.hermite_column_basis(cols, self.ambient.dim)
            object.__setattr__(self, "_basis", b)
        return b

    def _presentation(self):
        pres = self._pres
        if pres is not None:
            return pres
        basis = self.lattice_basis()
        amb = self.ambient
        if not basis:
            pres = Presentation(ZERO_GROUP, (), ())
            object.__setattr__(self, "_pres", pres)
            return pres
        bmat = [[col[i] for col in basis] for i in range(amb.dim)]
        rel = amb.relation_columns()
        coeffs = _k.solve_matrix(bmat, rel) if rel else []
        assert coeffs is not None, "ambient relations must lie in the subgroup lattice"
        pres = cokernel_presentation(len(basis), coeffs)
        object.__setattr__(self, "_pres", pres)
        return pres

    @property
    def normal_form(self):
        return self._presentation().group

    def inclusion(self):
        """Hom from normal_form into the ambient group."""
        cached = self._incl
        if cached is not None:
            return cached
        pres = self._presentation()
        basis = self.lattice_basis()
        amb = self.ambient
        cols = []
        for i in range(pres.group.dim):
            coeff = [pres.lift[r][i] for r in range(len(basis))]
            vec = [0] * amb.dim
            for c, col in zip(coeff, basis):
                if c:
                    for r in range(amb.dim):
                        vec[r] += c * col[r]
            cols.append(amb.reduce(vec))
        mat = [[col[r] for col in cols] for r in range(amb.dim)]
        incl = GroupHom(pres.group, amb, mat, check=False)
        object.__setattr__(self, "_incl", incl)
        return incl

    def coordinates_of(self, x):
        """Express ambient element x in normal-form coordinates (None if absent)."""
        basis = self.lattice_basis()
        if not basis:
            return () if all(v == 0 for v in self.ambient.reduce(x)) else None
        bmat = [[col[i] for col in basis] for i in range(self.ambient.dim)]
        sol = _k.solve(bmat, list(self.ambient.reduce(x)))
        if sol is None:
            return None
        pres = self._presentation()
        return pres.group.reduce(tuple(_k.mat_vec([list(r) for r in pres.project], sol)))

    def contains(self, x):
        return self.coordinates_of(x) is not None

    def __contains__(self, x):
        return self.contains(x)

    def contains_subgroup(self, other):
        return all(self.contains(g) for g in other.generators)

    def equals(self, other):
        if self.ambient != other.ambient:
            raise InputError("subgroups of different ambient groups")
        return self.lattice_basis() == other.lattice_basis()

    def is_full(self):
        return self.equals(Subgroup.full(self.ambient))

    def is_trivial(self):
        return self.normal_form.is_trivial()

    def order(self):
        return self.normal_form.order()

    def index_in_ambient(self):
        return self.index_in(Subgroup.full(self.ambient))

    def index_in(self, other):
        """[other : self] for self <= other; None when the index is infinite."""
        if not other.contains_subgroup(self):
            raise InputError("index_in requires containment")
        b_small = self.lattice_basis()
        b_big = other.lattice_basis()
        if len(b_small) != len(b_big):
            return None
        if not b_big:
            return 1
        bmat = [[col[i] for col in b_big] for i in range(self.ambient.dim)]
        x = _k.solve_matrix(bmat, b_small)
        assert x is not None
        sq = [[x[j][i] for j in range(len(x))] for i in range(len(b_small))]
        val = _k.det_via_smith(sq)
        return val if val else None

    def intersection(self, other):
        """Lattice intersection of two subgroups of the same ambient."""
        if self.ambient != other.ambient:
            raise InputError("subgroups of different ambient groups")
        a = self.lattice_basis()
        b = other.lattice_basis()
        if not a or not b:
            return Subgroup.trivial(self.ambient)
        n = self.ambient.dim
        stacked = [[col[i] for col in a] + [-col[i] for col in b] for i in range(n)]
        ker = _k.kernel_columns(stacked)
        gens = []
        for kcol in ker:
            vec = [0] * n
            for c, col in zip(kcol[: len(a)], a):
                if c:
                    for r in range(n):
                        vec[r] += c * col[r]
            gens.append(self.ambient.reduce(vec))
        return Subgroup(self.ambient, gens)

    def sum_with(self, other):
        if self.ambient != other.ambient:
            raise InputError("subgroups of different ambient groups")
        return Subgroup(self.ambient, list(self.generators) + list(other.generators))

    def torsion_part(self):
        """Intersection with the ambient torsion block."""
        amb = self.ambient
        tors_gens = []
        for i in range(len(amb.torsion)):
            v = [0] * amb.dim
            v[amb.free_rank + i] = 1
            tors_gens.append(tuple(v))
        return self.intersection(Subgroup(amb, tors_gens))

    def elements(self):
        """All elements (ambient coordinates); finite subgroups only."""
        pres = self._presentation()
        incl = self.inclusion()
        if not pres.group.is_finite():
            raise EnumerationCapExceeded("cannot enumerate an infinite subgroup")
        seen = set()
        for x in pres.group.elements():
            y = incl.apply(x)
            if y not in seen:
                seen.add(y)
                yield y

    def __repr__(self):
        return f"Subgroup({self.ambient}, gens={list(self.generators)})"


def subgroup_equal(a, b):
    """Mutual-containment equality of two subgroups of the same ambient."""
    if a.ambient != b.ambient:
        raise InputError("subgroup_equal: mismatched ambient groups")
    return a.equals(b)


def image(h):
    """Subgroup of the target generated by the columns of h."""
    cols = [tuple(row[j] for row in h.matrix) for j in range(h.source.dim)]
    return Subgroup(h.target, [h.target.reduce(c) for c in cols])


def kernel(h):
    """(Subgroup of the source, inclusion hom) with h o inclusion = 0."""
    src, tgt = h.source, h.target
    n, m = src.dim, tgt.dim
    rel = tgt.relation_columns()
    if m == 0:
        sub = Subgroup.full(src)
        return sub, sub.inclusion()
    cols = [[h.matrix[i][j] for i in range(m)] for j in range(n)] + rel
    stacked = [[col[i] for col in cols] for i in range(m)]
    ker = _k.kernel_columns(stacked)
    gens = [src.reduce(tuple(col[:n])) for col in ker]
    sub = Subgroup(src, gens)
    return sub, sub.inclusion()


def preimage(h, sub_of_target):
    """Subgroup {x : h(x) in sub_of_target} of the source."""
    src, tgt = h.source, h.target
    n, m = src.dim, tgt.dim
    if m == 0:
        return Subgroup.full(src)
    carrier = sub_of_target.lattice_basis()
    cols = [[h.matrix[i][j] for i in range(m)] for j in range(n)] + [list(c) for c in carrier]
    stacked = [[col[i] for col in cols] for i in range(m)]
    ker = _k.kernel_columns(stacked)
    gens = [src.reduce(tuple(col[:n])) for col in ker]
    return Subgroup(src, gens)


def quotient(ambient, sub):
    """(cokernel in normal form, surjective projection with kernel = sub)."""
    if sub.ambient != ambient:
        raise InputError("quotient: subgroup of a different ambient group")
    pres = cokernel_presentation(ambient.dim, [list(c) for c in sub.lattice_basis()])
    if ambient.dim == 0:
        return pres.group, GroupHom(ambient, pres.group, [], check=False)
    proj = GroupHom(ambient, pres.group, [list(r) for r in pres.project], check=False)
    return pres.group, proj


def is_injective(h):
    sub, _incl = kernel(h)
    return sub.normal_form.is_trivial()


def is_surjective(h):
    return image(h).is_full()


def is_isomorphism(h):
    return is_injective(h) and is_surjective(h)


def hom_into_subgroup(h, target_sub):
    """Re-express h as a hom into normal_form(target_sub).

    Requires image(h) <= target_sub.  The source group is untouched.
    """
    cols = []
    for j in range(h.source.dim):
        gen = [0] * h.source.dim
        gen[j] = 1
        coord = target_sub.coordinates_of(h.apply(tuple(gen)))
        if coord is None:
            raise InputError("hom does not map into the target subgroup")
        cols.append(coord)
    mat = [[col[r] for col in cols] for r in range(target_sub.normal_form.dim)]
    return GroupHom(h.source, target_sub.normal_form, mat, check=False)


def hom_restrict(h, source_sub, target_sub):
    """Restrict h to a hom normal_form(source_sub) -> normal_form(target_sub).

    Requires h(source_sub) <= target_sub.
    """
    incl_s = source_sub.inclusion()
    cols = []
    for j in range(source_sub.normal_form.dim):
        gen = tuple(incl_s.matrix[i][j] for i in range(h.source.dim))
        img = h.apply(h.source.reduce(gen))
        coord = target_sub.coordinates_of(img)
        if coord is None:
            raise InputError("hom does not map the source subgroup into the target subgroup")
        cols.append(coord)
    mat = [[col[r] for col in cols] for r in range(target_sub.normal_form.dim)]
    return GroupHom(source_sub.normal_form, target_sub.normal_form, mat, check=False)


def solve_hom(h, y):
    """One x with h(x) = y, or None; torsion handled exactly."""
    src, tgt = h.source, h.target
    n, m = src.dim, tgt.dim
    if m == 0:
        return src.zero()
    rel = tgt.relation_columns()
    cols = [[h.matrix[i][j] for i in range(m)] for j in range(n)] + rel
    stacked = [[col[i] for col in cols] for i in range(m)]
    sol = _k.solve(stacked, list(tgt.reduce(y)))
    if sol is None:
        return None
    return src.reduce(tuple(sol[:n]))


def solve_hom_minimal(h, y):
    """The canonical minimal solution of h(x) = y (None if unsolvable).

    Particular solution reduced by the kernel lattice: free coordinates get
    the symmetric representative (positive on ties), torsion coordinates
    land in [0, d) as always.
    """
    x0 = solve_hom(h, y)
    if x0 is None:
        return None
    sub, _ = kernel(h)
    basis = sub.lattice_basis()
    red = _k.reduce_mod_lattice(list(x0), basis)
    return h.source.reduce(tuple(red))


def direct_sum(*groups):
    """(P, inclusions, projections) with P = canonical form of the sum."""
    total = sum(g.dim for g in groups)
    rels = []
    off = 0
    for g in groups:
        for col in g.relation_columns():
            vec = [0] * total
            vec[off : off + g.dim] = col
            rels.append(vec)
        off += g.dim
    pres = cokernel_presentation(total, rels)
    incls = []
    projs = []
    off = 0
    for g in groups:
        if pres.group.dim:
            inc_mat = [
                [pres.project[r][off + j] for j in range(g.dim)]
                for r in range(pres.group.dim)
            ]
        else:
            inc_mat = []
        incls.append(GroupHom(g, pres.group, inc_mat, check=False))
        proj_mat = [
            [pres.lift[off + i][c] for c in range(pres.group.dim)] for i in range(g.dim)
        ]
        projs.append(GroupHom(pres.group, g, proj_mat, check=False))
        off += g.dim
    return pres.group, incls, projs


def random_group(rng, max_rank=2, factors=(2, 3, 4, 6, 8, 9), max_torsion=2):
    """Random small group in canonical form (test helper)."""
    rank = rng.randrange(max_rank + 1)
    k = rng.randrange(max_torsion + 1)
    diag = [rng.choice(factors) for _ in range(k)]
    return FgAbGroup.from_diagonal([0] * rank + diag)


def random_hom(rng, source, target, bound=3):
    """Random well-defined hom source -> target (test helper)."""
    cols = []
    for j in range(source.dim):
        if j < source.free_rank:
            col = [rng.randrange(-bound, bound + 1) for _ in range(target.dim)]
        else:
            d = source.torsion[j - source.free_rank]
            col = []
            for i in range(target.dim):
                if i < target.free_rank:
                    col.append(0)  # order-d generator cannot hit a free coordinate
                else:
                    dd = target.torsion[i - target.free_rank]
                    step = dd // gcd(dd, d)
                    col.append(step * rng.randrange(0, max(1, dd // step)))
        cols.append(col)
    mat = [[cols[j][i] for j in range(source.dim)] for i in range(target.dim)]
    return GroupHom(source, target, mat)


def random_surjection(rng, source, target, tries=60, bound=2):
    """Random surjective hom, or None if not found (test helper)."""
    for _ in range(tries):
        h = random_hom(rng, source, target, bound=bound)
        if is_surjective(h):
            return h
    return None


def _unit_factor_poly(coeffs):
    """Product of irreducible factors of an integer polynomial whose constant
    term is a unit, with multiplicity (ascending coefficients).

    This is the characteristic polynomial of the restriction to the largest
    invariant subspace on which the matrix acts unimodularly.
    """
    if len(coeffs) == 2:  # monic linear: t - a
        return list(coeffs) if abs(coeffs[0]) == 1 else [1]
    from sympy import Poly, symbols

    t = symbols("t")
    poly = Poly(list(reversed(coeffs)), t)
    out = Poly(1, t)
    for fac, mult in poly.factor_list()[1]:
        const = fac.all_coeffs()[-1]
        if abs(int(const)) == 1:
            out = out * fac**mult
    res = [int(c) for c in reversed(out.all_coeffs())]
    return res


def eventual_image_lattice(n_mat):
    """Basis of the largest sublattice W of Z^r with N(W) = W, for square
    integer N with nonzero determinant.

    W is the intersection of the images N^j(Z^r) over all j; equivalently
    the integer kernel of u(N) where u is the unit part of charpoly(N).
    """
    r = len(n_mat)
    if r == 0:
        return []
    cp = _k.charpoly(n_mat)
    u = _unit_factor_poly(cp)
    if u == [1]:
        um = _k.identity_matrix(r)
    else:
        um = _k.poly_at_matrix(u, n_mat)
    return _k.kernel_columns(um)


def doctest_namespace():
    return {"FgAbGroup": FgAbGroup}
