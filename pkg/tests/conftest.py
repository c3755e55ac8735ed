import os
import random
import sys

import pytest

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from prolim import fgab as F
from prolim import invsys as I

REPO_ROOT = os.path.normpath(os.path.join(os.path.dirname(__file__), ".."))
FIXTURES = os.path.join(REPO_ROOT, "fixtures")


@pytest.fixture
def rng():
    return random.Random(20240811)


# -- random system generators ---------------------------------------------
# Group sizes are kept small on purpose: image chains of finite groups are
# then guaranteed to settle within dimension * exponent <= 4 periods, which
# is the horizon several desk-scale checks are pinned to.

FINITE_FACTORS = (2, 3, 4, 6)


def random_finite_group(rng, max_torsion=2):
    k = rng.randrange(max_torsion + 1)
    return F.FgAbGroup.from_diagonal([rng.choice(FINITE_FACTORS) for _ in range(k)])


def random_small_group(rng, max_rank=1, max_torsion=2):
    rank = rng.randrange(max_rank + 1)
    k = rng.randrange(max_torsion + 1)
    diag = [0] * rank + [rng.choice(FINITE_FACTORS) for _ in range(k)]
    return F.FgAbGroup.from_diagonal(diag)


def random_cycle_system(rng, group_gen, max_prefix=2, max_period=2, bound=2):
    k = rng.randrange(max_prefix + 1)
    p = rng.randrange(1, max_period + 1)
    prefix = [group_gen(rng) for _ in range(k)]
    cycle = [group_gen(rng) for _ in range(p)]
    cyc_maps = [
        F.random_hom(rng, cycle[(j + 1) % p], cycle[j], bound=bound) for j in range(p)
    ]
    maps = []
    for i in range(k):
        src = prefix[i + 1] if i < k - 1 else cycle[0]
        maps.append(F.random_hom(rng, src, prefix[i], bound=bound))
    return I.InverseSystem(prefix, maps, I.CycleTail(tuple(cycle), tuple(cyc_maps)))


def random_finite_cycle_system(rng, **kw):
    return random_cycle_system(rng, random_finite_group, **kw)


def random_mixed_cycle_system(rng, **kw):
    return random_cycle_system(rng, random_small_group, **kw)


def random_tower_system(rng, max_prefix=1, max_period=2, infinite_layers=False):
    p = rng.randrange(1, max_period + 1)
    gen = random_small_group if infinite_layers else random_finite_group
    base = gen(rng)
    layers = [gen(rng) for _ in range(p)]
    k = rng.randrange(max_prefix + 1)
    prefix = [random_finite_group(rng) for _ in range(k)]
    maps = []
    for i in range(k):
        src = prefix[i + 1] if i < k - 1 else base
        maps.append(F.random_hom(rng, src, prefix[i]))
    return I.tower_system(base, layers, prefix=prefix, maps=maps)


def random_system(rng):
    roll = rng.random()
    if roll < 0.5:
        return random_mixed_cycle_system(rng)
    if roll < 0.8:
        return random_tower_system(rng)
    return random_tower_system(rng, infinite_layers=True)
