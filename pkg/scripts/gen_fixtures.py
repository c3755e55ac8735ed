"""Regenerate the fixture documents and their golden CLI outputs.

Run from the repository root after an editable install:

    python scripts/gen_fixtures.py
"""

import json
import os
import subprocess
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from prolim import fgab as F
from prolim import invsys as I

ROOT = os.path.normpath(os.path.join(os.path.dirname(__file__), ".."))
FIXTURES = os.path.join(ROOT, "fixtures")
GOLDEN = os.path.join(FIXTURES, "golden")


def red(a, b):
    """Reduction hom Z/a -> Z/b (b | a)."""
    return F.GroupHom(F.Zmod(a), F.Zmod(b), [[1]])


def witness_systems():
    z = F.Z()
    z2, z3, z4, z6 = F.Zmod(2), F.Zmod(3), F.Zmod(4), F.Zmod(6)
    out = {}
    # five-class witnesses (and a few extra variants)
    out["const-z2"] = I.constant_system(z2)                      # Finite(2)
    out["const-z"] = I.constant_system(z)                        # N
    out["tower-z2"] = I.tower_system(z2, [z2])                   # Cantor
    out["tower-z-base"] = I.tower_system(z, [z2])                # N x Cantor
    out["tower-baire"] = I.tower_system(F.ZERO_GROUP, [z])       # Baire
    out["z-times-2"] = I.constant_system(z, [[2]])               # Finite(1), not ML
    out["cycle-z6-times-2"] = I.constant_system(z6, [[2]])       # Finite(3)
    out["prefix-then-const"] = I.InverseSystem(
        (z2, z4),
        (red(4, 2), F.GroupHom.identity(z4)),
        I.CycleTail((z4,), (F.GroupHom.identity(z4),)),
    )                                                            # Finite(4)
    out["tower-mixed-layers"] = I.tower_system(z2, [z2, z3])     # Cantor, period 2
    out["tower-z4-layers"] = I.tower_system(z, [z4])             # N x Cantor
    out["tower-z-layers-z"] = I.tower_system(z, [z])             # Baire
    out["tower-with-prefix"] = I.tower_system(
        z2, [z2], prefix=(z2,), maps=(F.GroupHom.identity(z2),)
    )                                                            # Cantor
    out["const-z2z"] = I.constant_system(
        F.FgAbGroup(1, (2,)),
        [[1, 0], [0, 1]],
    )                                                            # N (Z + Z/2)
    return out


def kk_pairs():
    """One (B-system, SB-system) fixture name pair per composite row."""
    lim_witness = {
        "F": "const-z2",
        "N": "const-z",
        "Cantor": "tower-z2",
        "NxCantor": "tower-z-base",
        "Baire": "tower-baire",
    }
    rows = {}
    for sym, b_name in lim_witness.items():
        rows[sym] = (b_name, "const-z")          # SB Mittag-Leffler: no U factor
        rows[sym + "xU"] = (b_name, "z-times-2")  # SB fails: uncountable factor
    return rows


def main():
    os.makedirs(FIXTURES, exist_ok=True)
    os.makedirs(GOLDEN, exist_ok=True)
    systems = witness_systems()
    for name, s in systems.items():
        doc = {"name": name, "system": s.to_json()}
        with open(os.path.join(FIXTURES, f"{name}.json"), "w") as fh:
            json.dump(doc, fh, indent=1, sort_keys=True)
            fh.write("\n")
    for row, (b_name, sb_name) in kk_pairs().items():
        doc = {
            "name": f"kk-{row}",
            "system": systems[b_name].to_json(),
            "second_system": systems[sb_name].to_json(),
        }
        with open(os.path.join(FIXTURES, f"kk-{row}.json"), "w") as fh:
            json.dump(doc, fh, indent=1, sort_keys=True)
            fh.write("\n")

    env = dict(os.environ)
    for name in systems:
        path = os.path.join(FIXTURES, f"{name}.json")
        for command in ("classify", "ml"):
            res = subprocess.run(
                [sys.executable, "-m", "prolim.cli", command, path],
                capture_output=True,
                env=env,
            )
            if res.returncode != 0:
                raise SystemExit(f"{command} {name}: {res.stderr.decode()}")
            with open(os.path.join(GOLDEN, f"{command}-{name}.json"), "wb") as fh:
                fh.write(res.stdout)
    for row in kk_pairs():
        path = os.path.join(FIXTURES, f"kk-{row}.json")
        res = subprocess.run(
            [sys.executable, "-m", "prolim.cli", "kk-classify", path],
            capture_output=True,
            env=env,
        )
        if res.returncode != 0:
            raise SystemExit(f"kk-classify {row}: {res.stderr.decode()}")
        with open(os.path.join(GOLDEN, f"kk-classify-kk-{row}.json"), "wb") as fh:
            fh.write(res.stdout)
    print(f"wrote {len(systems)} systems, {len(kk_pairs())} kk pairs, and goldens")


if __name__ == "__main__":
    main()
