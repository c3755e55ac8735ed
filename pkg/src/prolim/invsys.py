"""Finitely presented inverse systems of f.g. abelian groups.

A system is a finite prefix of groups and bonding maps followed by an
optional infinite tail.  Two tail kinds are supported:

* cycle: the groups and maps beyond the prefix literally repeat with
  period p.  Such tails can shrink (non-surjective maps) but, once
  surjectivized, always stabilize: a surjective endomorphism of a f.g.
  abelian group is an automorphism.
* tower: beyond the prefix each level appends one layer from a repeating
  cycle of layer groups, and the bonding maps drop the newest layer.
  Towers are the finite presentations of the genuinely non-stabilizing
  systems (Cantor-like, Baire-like limits).

A system with no tail is a truncated chain; operations that need the
infinite part reject it.

Bonding maps go downward: map_at(s, n) is f_n : G_{n+1} -> G_n.
"""

from __future__ import annotations

from dataclasses import dataclass

from prolim._backend import kernel as _k
from prolim import fgab
from prolim.errors import InputError, PreconditionError
from prolim.fgab import (
    FgAbGroup,
    GroupHom,
    Subgroup,
    direct_sum,
    eventual_image_lattice,
    hom_into_subgroup,
    hom_restrict,
    image,
    kernel,
    preimage,
    subgroup_equal,
)


@dataclass(frozen=True)
class CycleTail:
    """Literal periodic tail: groups[j] sits at levels k+1+j mod p."""

    groups: tuple
    maps: tuple  # maps[j]: groups[(j+1) % p] -> groups[j]

    @property
    def period(self):
        return len(self.groups)


@dataclass(frozen=True)
class TowerTail:
    """Layered tail: level k+1 is `base`, each next level appends a layer."""

    base: FgAbGroup
    layers: tuple  # cycled: level k+1+t appends layers[(t-1) % p] for t >= 1

    @property
    def period(self):
        return len(self.layers)


class _TowerLevel:
    __slots__ = ("group", "atom_incls", "atom_projs", "drop")

    def __init__(self, group, atom_incls, atom_projs, drop):
        self.group = group
        self.atom_incls = atom_incls
        self.atom_projs = atom_projs
        self.drop = drop  # hom to the previous level (None at the base)


class InverseSystem:
    """prefix levels 1..k, then the tail (or nothing, for a finite chain).

    maps holds f_1..f_{k-1} between prefix levels plus, when a tail is
    present and k >= 1, the junction f_k from the first tail group into
    the last prefix group.
    """

    __slots__ = ("prefix", "maps", "tail", "_tower_cache")

    def __init__(self, prefix, maps, tail=None):
        prefix = tuple(prefix)
        maps = tuple(maps)
        object.__setattr__(self, "prefix", prefix)
        object.__setattr__(self, "maps", maps)
        object.__setattr__(self, "tail", tail)
        object.__setattr__(self, "_tower_cache", {})
        self._validate()

    def __setattr__(self, name, value):
        raise AttributeError("InverseSystem is immutable")

    def _validate(self):
        k = len(self.prefix)
        tail = self.tail
        expected = k - 1 if tail is None else max(k - 1, 0) + (1 if k else 0)
        expected = max(expected, 0)
        if len(self.maps) != expected:
            raise InputError(
                f"expected {expected} prefix/junction maps, got {len(self.maps)}"
            )
        for i, h in enumerate(self.maps):
            tgt = self.prefix[i]
            if i < k - 1:
                src = self.prefix[i + 1]
            else:
                src = self._first_tail_group()
            if h.source != src or h.target != tgt:
                raise InputError(
                    f"map {i + 1}: expected {src} -> {tgt}, got {h.source} -> {h.target}"
                )
        if isinstance(tail, CycleTail):
            p = tail.period
            if p == 0:
                raise InputError("cycle tail needs at least one group")
            if len(tail.maps) != p:
                raise InputError(f"cycle tail: expected {p} maps, got {len(tail.maps)}")
            for j, h in enumerate(tail.maps):
                src = tail.groups[(j + 1) % p]
                tgt = tail.groups[j]
                if h.source != src or h.target != tgt:
                    raise InputError(
                        f"cycle map {j + 1}: expected {src} -> {tgt}, "
                        f"got {h.source} -> {h.target}"
                    )
        elif isinstance(tail, TowerTail):
            if tail.period == 0:
                raise InputError("tower tail needs at least one layer")
        elif tail is not None:
            raise InputError(f"unknown tail kind {tail!r}")

    def _first_tail_group(self):
        tail = self.tail
        if isinstance(tail, CycleTail):
            return tail.groups[0]
        if isinstance(tail, TowerTail):
            return tail.base
        raise PreconditionError("finite chain has no tail")

    # -- level bookkeeping -------------------------------------------------

    @property
    def prefix_len(self):
        return len(self.prefix)

    @property
    def period(self):
        tail = self.tail
        if tail is None:
            return 0
        return tail.period

    def is_chain(self):
        return self.tail is None

    @property
    def chain_length(self):
        if not self.is_chain():
            raise PreconditionError("not a finite chain")
        return len(self.prefix)

    def _tower_level(self, t):
        """Materialized tower level t (0 = base), with atom data and drop map."""
        cache = self._tower_cache
        if t in cache:
            return cache[t]
        tail = self.tail
        if t == 0:
            lvl = _TowerLevel(
                tail.base,
                [GroupHom.identity(tail.base)],
                [GroupHom.identity(tail.base)],
                None,
            )
        else:
            prev = self._tower_level(t - 1)
            layer = tail.layers[(t - 1) % tail.period]
            total, (i_prev, i_layer), (p_prev, p_layer) = _direct_sum2(
                prev.group, layer
            )
            incls = [i_prev.compose(h) for h in prev.atom_incls] + [i_layer]
            projs = [h.compose(p_prev) for h in prev.atom_projs] + [p_layer]
            lvl = _TowerLevel(total, incls, projs, p_prev)
        cache[t] = lvl
        return lvl

    def group_at(self, n):
        if n < 1:
            raise PreconditionError("levels are 1-based")
        k = len(self.prefix)
        if n <= k:
            return self.prefix[n - 1]
        tail = self.tail
        if tail is None:
            raise PreconditionError(f"level {n} is out of range for a chain of length {k}")
        if isinstance(tail, CycleTail):
            return tail.groups[(n - k - 1) % tail.period]
        return self._tower_level(n - k - 1).group

    def map_at(self, n):
        """The bonding map f_n : G_{n+1} -> G_n."""
        if n < 1:
            raise PreconditionError("levels are 1-based")
        k = len(self.prefix)
        tail = self.tail
        if tail is None:
            if n > k - 1:
                raise PreconditionError(
                    f"map {n} is out of range for a chain of length {k}"
                )
            return self.maps[n - 1]
        if n <= k:
            return self.maps[n - 1]
        if isinstance(tail, CycleTail):
            return tail.maps[(n - k - 1) % tail.period]
        return self._tower_level(n - k).drop

    def map_between(self, n, m):
        """Composite f_{n,m} : G_m -> G_n (identity when n = m)."""
        if n > m:
            raise PreconditionError(f"map_between needs n <= m, got {n} > {m}")
        h = GroupHom.identity(self.group_at(n))
        for j in range(n, m):
            h = h.compose(self.map_at(j))
        return h

    # -- serialization -----------------------------------------------------

    def to_json(self):
        tail = self.tail
        if tail is None:
            tj = None
        elif isinstance(tail, CycleTail):
            tj = {
                "kind": "cycle",
                "groups": [g.to_json() for g in tail.groups],
                "maps": [[list(r) for r in h.matrix] for h in tail.maps],
            }
        else:
            tj = {
                "kind": "tower",
                "base": tail.base.to_json(),
                "layers": [g.to_json() for g in tail.layers],
            }
        return {
            "prefix": [g.to_json() for g in self.prefix],
            "maps": [[list(r) for r in h.matrix] for h in self.maps],
            "tail": tj,
        }

    @classmethod
    def from_json(cls, obj):
        if not isinstance(obj, dict):
            raise InputError("system must be a JSON object")
        try:
            prefix = [FgAbGroup.from_json(g) for g in obj.get("prefix", [])]
        except InputError as exc:
            raise InputError(f"prefix: {exc}") from exc
        tobj = obj.get("tail")
        tail = None
        if tobj is not None:
            kind = tobj.get("kind")
            if kind == "cycle":
                groups = tuple(FgAbGroup.from_json(g) for g in tobj.get("groups", []))
                p = len(groups)
                if p == 0:
                    raise InputError("tail.groups must be nonempty")
                raw = tobj.get("maps", [])
                if len(raw) != p:
                    raise InputError(f"tail.maps: expected {p} matrices, got {len(raw)}")
                maps = []
                for j, mat in enumerate(raw):
                    try:
                        maps.append(GroupHom(groups[(j + 1) % p], groups[j], mat))
                    except InputError as exc:
                        raise InputError(f"tail.maps[{j}]: {exc}") from exc
                tail = CycleTail(groups, tuple(maps))
            elif kind == "tower":
                tail = TowerTail(
                    FgAbGroup.from_json(tobj["base"]),
                    tuple(FgAbGroup.from_json(g) for g in tobj.get("layers", [])),
                )
            else:
                raise InputError(f"tail.kind must be 'cycle' or 'tower', got {kind!r}")
        raw_maps = obj.get("maps", [])
        maps = []
        k = len(prefix)
        first_tail = None
        if tail is not None:
            first_tail = tail.groups[0] if isinstance(tail, CycleTail) else tail.base
        for i, mat in enumerate(raw_maps):
            tgt = prefix[i] if i < k else None
            if tgt is None:
                raise InputError(f"maps[{i}]: more maps than prefix levels")
            src = prefix[i + 1] if i < k - 1 else first_tail
            if src is None:
                raise InputError(f"maps[{i}]: chain of length {k} takes {k - 1} maps")
            try:
                maps.append(GroupHom(src, tgt, mat))
            except InputError as exc:
                raise InputError(f"maps[{i}]: {exc}") from exc
        return cls(prefix, maps, tail)

    def __repr__(self):
        return (
            f"InverseSystem(prefix={list(self.prefix)}, tail={self.tail!r})"
        )


def _direct_sum2(a, b):
    total, incls, projs = direct_sum(a, b)
    return total, (incls[0], incls[1]), (projs[0], projs[1])


def constant_system(group, endo_matrix=None):
    """The system with one repeating group; default bonding map is identity."""
    h = (
        GroupHom.identity(group)
        if endo_matrix is None
        else GroupHom(group, group, endo_matrix)
    )
    return InverseSystem((), (), CycleTail((group,), (h,)))


def tower_system(base, layers, prefix=(), maps=()):
    return InverseSystem(tuple(prefix), tuple(maps), TowerTail(base, tuple(layers)))


def chain_system(groups, maps):
    return InverseSystem(tuple(groups), tuple(maps), None)


def _require_tail(s):
    if s.is_chain():
        raise PreconditionError(
            "operation needs the infinite part of the system; "
            "this is a truncated finite chain"
        )


def system_equal(a, b, upto):
    """Levelwise equality of groups and bonding-map matrices up to a level."""
    for n in range(1, upto + 1):
        if a.group_at(n) != b.group_at(n):
            return False
        if n < upto and a.map_at(n).matrix != b.map_at(n).matrix:
            return False
    return True


# -- stable images -------------------------------------------------------


def _push(h, sub):
    """Image of a subgroup under a hom (as a subgroup of the target)."""
    return Subgroup(h.target, [h.apply(g) for g in sub.generators] or [])


def _torsion_block(g):
    gens = []
    for i in range(len(g.torsion)):
        v = [0] * g.dim
        v[g.free_rank + i] = 1
        gens.append(tuple(v))
    return Subgroup(g, gens)


def eventual_image(endo):
    """The largest subgroup W of G with endo(W) = W, for an endomorphism.

    Equals the intersection of the images of all powers of endo.  The image
    chain is iterated while it makes strict progress in rank or in its
    torsion part; if it stops progressing without becoming constant the
    free-part index is a constant >= 2 and the chain never stabilizes, in
    which case the limit is assembled exactly from the settled torsion part
    and the unimodular core of the induced lattice endomorphism.
    """
    if endo.source != endo.target:
        raise InputError("eventual_image needs an endomorphism")
    g = endo.source
    chain = [Subgroup.full(g)]
    while True:
        nxt = _push(endo, chain[-1])
        if nxt.equals(chain[-1]):
            return chain[-1]
        cur = chain[-1]
        same_rank = (
            nxt.normal_form.free_rank == cur.normal_form.free_rank
        )
        same_tors = nxt.torsion_part().equals(cur.torsion_part())
        chain.append(nxt)
        if same_rank and same_tors:
            break
    # Non-stabilizing tail: settle the torsion part exactly.
    tblock = _torsion_block(g)
    p_chain = tblock
    steps_p = 0
    while True:
        p_next = preimage(endo, p_chain)
        if p_next.equals(p_chain):
            break
        p_chain = p_next
        steps_p += 1
    f_cur = p_chain
    for _ in range(steps_p):
        f_cur = _push(endo, f_cur)
    f_cur = f_cur.intersection(tblock)
    steps_f = 0
    while True:
        f_next = _push(endo, f_cur).intersection(tblock)
        if f_next.equals(f_cur):
            break
        f_cur = f_next
        steps_f += 1
    t_settle = steps_p + steps_f
    t_inf = f_cur  # = image-chain torsion part from index t_settle on
    while len(chain) - 1 < t_settle:
        chain.append(_push(endo, chain[-1]))
    anchor = chain[-1]

    # Free part: the induced endomorphism on the settled image lattice.
    rho = g.free_rank
    lam = _k.hermite_column_basis(
        [list(col[:rho]) for col in anchor.lattice_basis()], rho
    )
    w_free = []
    if lam:
        bmat = [[col[i] for col in lam] for i in range(rho)]
        e_free = [[endo.matrix[i][j] for j in range(rho)] for i in range(rho)]
        imgs = [_k.mat_vec(e_free, list(col)) for col in lam]
        n_mat_cols = _k.solve_matrix(bmat, imgs)
        assert n_mat_cols is not None, "image lattice is not endo-invariant"
        n_mat = [[n_mat_cols[j][i] for j in range(len(lam))] for i in range(len(lam))]
        core = eventual_image_lattice(n_mat)
        for col in core:
            vec = [0] * rho
            for c, b in zip(col, lam):
                if c:
                    for r in range(rho):
                        vec[r] += c * b[r]
            w_free.append(vec)

    gens = list(t_inf.generators)
    if w_free:
        # lift each free basis vector into the anchor (torsion correction)
        carrier = anchor.lattice_basis()
        tors_cols = [list(gcol) for gcol in _torsion_block(g).generators]
        cols = [list(c) for c in carrier] + tors_cols
        amat = [[col[i] for col in cols] for i in range(g.dim)]
        for w in w_free:
            target = list(w) + [0] * len(g.torsion)
            sol = _k.solve(amat, target)
            assert sol is not None, "free core must lift into the settled image"
            corr = sol[len(carrier):]
            lifted = list(target)
            for c, tcol in zip(corr, tors_cols):
                if c:
                    for r in range(g.dim):
                        lifted[r] -= c * tcol[r]
            gens.append(g.reduce(lifted))
    return Subgroup(g, gens)


# -- Mittag-Leffler ------------------------------------------------------


@dataclass(frozen=True)
class MLLevel:
    """Per-level certificate entry.

    stable_from: horizon m with Im(f_{n,m}) = Im(f_{n,m'}) for all m' >= m
    (verified one further period); index: for failures, the constant index
    of Im(f_{n,m+p}) inside Im(f_{n,m}) at two consecutive periods.
    """

    level: int
    stable: bool
    stable_from: int | None = None
    index: int | None = None


@dataclass(frozen=True)
class MLCertificate:
    verdict: bool
    per_level: tuple

    def failure_levels(self):
        return [e for e in self.per_level if not e.stable]

    def to_json(self):
        return {
            "verdict": self.verdict,
            "per_level": [
                {
                    "level": e.level,
                    "stable": e.stable,
                    "stable_from": e.stable_from,
                    "index": e.index,
                }
                for e in self.per_level
            ],
        }


def _tail_image_chain_analysis(s, level):
    """Settle analysis of Im(f_{level,m}) along the period grid.

    Returns (stable: bool, steps: int, index or None, anchor Subgroup).
    """
    p = s.period
    endo = s.map_between(level, level + p)
    g = endo.source
    cur = Subgroup.full(g)
    steps = 0
    while True:
        nxt = _push(endo, cur)
        if nxt.equals(cur):
            return True, steps, None, cur
        same_rank = nxt.normal_form.free_rank == cur.normal_form.free_rank
        same_tors = nxt.torsion_part().equals(cur.torsion_part())
        cur = nxt
        steps += 1
        if same_rank and same_tors:
            break
    # failure: push until the torsion part of the chain is settled, then
    # read off the constant index at two consecutive periods
    w = eventual_image(endo)
    t_inf = w.torsion_part()
    tblock = _torsion_block(g)
    while not cur.intersection(tblock).equals(t_inf):
        cur = _push(endo, cur)
        steps += 1
    nxt = _push(endo, cur)
    c1 = nxt.index_in(cur)
    c2 = _push(endo, nxt).index_in(nxt)
    assert c1 == c2 and c1 is not None and c1 >= 2
    return False, steps, c1, cur


def is_mittag_leffler(s):
    """Eventual-constancy certificate for every image chain Im(f_{n,m}).

    The verdict is decided at the tail levels (prefix chains are images of
    tail chains, and images of eventually constant chains are eventually
    constant); the certificate still records a verified horizon per level.
    """
    _require_tail(s)
    k = s.prefix_len
    p = s.period
    if isinstance(s.tail, TowerTail):
        entries = []
        for n in range(1, k + p + 1):
            m = max(n, k + 1)
            a = image(s.map_between(n, m))
            b = image(s.map_between(n, m + p))
            assert subgroup_equal(a, b)
            entries.append(MLLevel(n, True, stable_from=m))
        return MLCertificate(True, tuple(entries))

    entries = {}
    worst = 0
    verdict = True
    for j in range(p):
        level = k + 1 + j
        stable, steps, idx, _anchor = _tail_image_chain_analysis(s, level)
        if stable:
            entries[level] = MLLevel(level, True, stable_from=level + steps * p)
            worst = max(worst, steps)
        else:
            verdict = False
            entries[level] = MLLevel(
                level, False, stable_from=level + steps * p, index=idx
            )
    if verdict:
        for n in range(1, k + 1):
            m = k + 1 + worst * p
            a = image(s.map_between(n, m))
            b = image(s.map_between(n, m + p))
            assert subgroup_equal(a, b)
            entries[n] = MLLevel(n, True, stable_from=m)
    # With a failing tail the prefix chains are not analyzed: the verdict is
    # already decided and the certificate carries the tail failure witnesses.
    per_level = tuple(entries[n] for n in sorted(entries))
    return MLCertificate(verdict, per_level)


# -- surjectivization ----------------------------------------------------


def stable_images(s):
    """Exact stable image subgroup at each represented level (1..k+p).

    Tail levels get the eventual image of their period endomorphism; prefix
    levels get the pushforward of the first tail level's eventual image.
    The pushforward (rather than the raw intersection of images) is what
    makes the restricted system surjective while preserving the limit.
    """
    _require_tail(s)
    k = s.prefix_len
    p = s.period
    out = {}
    if isinstance(s.tail, TowerTail):
        for j in range(p):
            level = k + 1 + j
            out[level] = Subgroup.full(s.group_at(level))
        w1 = Subgroup.full(s.group_at(k + 1))
    else:
        for j in range(p):
            level = k + 1 + j
            out[level] = eventual_image(s.map_between(level, level + p))
        w1 = out[k + 1]
    for n in range(k, 0, -1):
        out[n] = _push(s.map_between(n, k + 1), w1)
    return out


def surjectivize_with_inclusions(s):
    """(surjectivized system, dict level -> Subgroup of the original group)."""
    _require_tail(s)
    k = s.prefix_len
    p = s.period
    subs = stable_images(s)
    if isinstance(s.tail, TowerTail):
        new_prefix = [subs[n].normal_form for n in range(1, k + 1)]
        new_maps = []
        for n in range(1, k + 1):
            if n < k:
                new_maps.append(hom_restrict(s.map_at(n), subs[n + 1], subs[n]))
            else:
                # junction keeps the tower base's own generators
                new_maps.append(hom_into_subgroup(s.map_at(n), subs[n]))
        out = InverseSystem(new_prefix, new_maps, s.tail)
        return out, subs
    new_prefix = [subs[n].normal_form for n in range(1, k + 1)]
    new_maps = []
    for n in range(1, k + 1):
        lvl_next = subs[n + 1]
        new_maps.append(hom_restrict(s.map_at(n), lvl_next, subs[n]))
    cyc_groups = tuple(subs[k + 1 + j].normal_form for j in range(p))
    cyc_maps = []
    for j in range(p):
        level = k + 1 + j
        src_sub = subs[k + 1 + ((j + 1) % p)]
        cyc_maps.append(hom_restrict(s.map_at(level), src_sub, subs[level]))
    out = InverseSystem(new_prefix, new_maps, CycleTail(cyc_groups, tuple(cyc_maps)))
    return out, subs


def surjectivize(s):
    """Restriction to stable images; all bonding maps become surjective."""
    out, _subs = surjectivize_with_inclusions(s)
    for n in range(1, out.prefix_len + out.period + 1):
        if not fgab.is_surjective(out.map_at(n)):
            raise AssertionError(f"surjectivization left a non-surjective map at {n}")
    return out


# -- cofinal restriction -------------------------------------------------


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def restrict_cofinal(s, stride, offset=0):
    """System indexed by the levels offset + stride*i, with composite maps."""
    if stride < 1:
        raise InputError("stride must be >= 1")
    if offset < 0:
        raise InputError("offset must be >= 0")
    if stride == 1 and offset == 0:
        return s

    def old(i):
        return offset + stride * i

    if s.is_chain():
        length = s.chain_length
        levels = [old(i) for i in range(1, length + 1) if old(i) <= length]
        if not levels:
            raise PreconditionError("restriction selects no levels of the chain")
        groups = [s.group_at(l) for l in levels]
        maps = [s.map_between(levels[i], levels[i + 1]) for i in range(len(levels) - 1)]
        return chain_system(groups, maps)

    k = s.prefix_len
    p = s.period
    t0 = 1
    while old(t0) < k + 1:
        t0 += 1
    new_p = p // _gcd(p, stride)
    new_prefix = [s.group_at(old(i)) for i in range(1, t0)]
    new_maps = [s.map_between(old(i), old(i + 1)) for i in range(1, t0)]
    if isinstance(s.tail, CycleTail):
        cyc_groups = tuple(s.group_at(old(t0 + j)) for j in range(new_p))
        cyc_maps = tuple(
            s.map_between(old(t0 + j), old(t0 + j + 1)) for j in range(new_p)
        )
        return InverseSystem(new_prefix, new_maps, CycleTail(cyc_groups, cyc_maps))
    # tower: regroup stride-many consecutive layers into one block layer
    base_level = old(t0)
    base = s.group_at(base_level)
    layers = s.tail.layers
    blocks = []
    for j in range(new_p):
        lo = base_level + j * stride  # old levels (lo, lo+stride]
        atoms = [
            layers[(t - k - 2) % p] for t in range(lo + 1, lo + stride + 1)
        ]
        blk, _incs, _prjs = direct_sum(*atoms) if atoms else (fgab.ZERO_GROUP, [], [])
        blocks.append(blk)
    return InverseSystem(new_prefix, new_maps, TowerTail(base, tuple(blocks)))


# -- kernels and stabilization -------------------------------------------


def _check_surjective_window(s, upto):
    for n in range(1, upto):
        if not fgab.is_surjective(s.map_at(n)):
            raise PreconditionError(
                f"bonding map at level {n} is not surjective; surjectivize first"
            )


def kernel_sequence(s, upto=None):
    """[(level, X_n, finite?)] with X_1 = G_1 and X_n = ker f_{n-1} for n >= 2.

    Reported through one full tail period (levels 1..k+p+1 by default);
    deeper kernels repeat with period p.
    """
    _require_tail(s)
    k = s.prefix_len
    p = s.period
    if upto is None:
        upto = k + p + 1
    _check_surjective_window(s, upto)
    out = []
    g1 = s.group_at(1)
    out.append((1, g1, g1.is_finite()))
    for n in range(2, upto + 1):
        sub, _incl = kernel(s.map_at(n - 1))
        x = sub.normal_form
        out.append((n, x, x.is_finite()))
    return out


def stabilizes(s):
    """(True, least index from which all bonding maps are isomorphisms) or
    (False, None)."""
    seq = kernel_sequence(s)
    k = s.prefix_len
    tail_start = k + 2  # kernels of tail maps sit at levels k+2..k+p+1
    for level, x, _fin in seq[1:]:
        if level >= tail_start and not x.is_trivial():
            return False, None
    last = 1
    for level, x, _fin in seq[1:]:
        if not x.is_trivial():
            last = max(last, level)
    return True, last


def coherent_count(s, level):
    """Number of coherent tuples of a finite-group system at a level.

    A coherent tuple (x_1..x_N) is determined by its top coordinate, so
    the count is |G_level| (None when infinite).
    """
    return s.group_at(level).order()


def group_at(s, n):
    return s.group_at(n)


def map_between(s, n, m):
    return s.map_between(n, m)
