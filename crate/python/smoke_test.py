#!/usr/bin/env python3
"""Smoke test for the nlslab Python extension.

Builds the cdylib if needed, imports it, and checks a handful of exact
identities end to end. Run from anywhere:

    python3 python/smoke_test.py
"""

import math
import shutil
import subprocess
import sys
import sysconfig
import tempfile
from pathlib import Path

REPO = Path(__file__).resolve().parent.parent


def load_module():
    lib = REPO / "target" / "debug" / "libnlslab.so"
    if not lib.exists():
        subprocess.run(
            ["cargo", "build", "-p", "nlslab-py"], cwd=REPO, check=True
        )
    staging = Path(tempfile.mkdtemp(prefix="nlslab_py_"))
    suffix = sysconfig.get_config_var("EXT_SUFFIX") or ".so"
    shutil.copy(lib, staging / f"nlslab{suffix}")
    sys.path.insert(0, str(staging))
    import nlslab

    return nlslab


def close(a, b, rel=1e-12):
    return abs(a - b) <= rel * max(abs(a), abs(b), 1.0)


def main():
    nl = load_module()
    checks = 0

    def ok(label, condition):
        nonlocal checks
        assert condition, f"FAILED: {label}"
        checks += 1
        print(f"[PASS] {label}")

    grid = nl.Grid(256, 8)
    ok("grid geometry", grid.n == 256 and grid.m == 8 and close(grid.dxi, 0.125))

    flat = nl.Field.flat_band(grid, 0.0, 1.0)
    ok("unit flat band has unit mass", close(flat.l2_norm(), 1.0))
    ok("unit flat band has unit modulation norm", close(flat.modulation_norm(4.0), 1.0))

    u = nl.Field.from_family(grid, "gaussian", 4.0, seed=11, random_phase=True)
    ok("plancherel", close(u.lebesgue_norm(2.0), u.l2_norm()))
    ok("free evolution is unitary", close(u.free_evolve(0.37).l2_norm(), u.l2_norm()))
    ok(
        "galilean boost preserves mass",
        close(u.galilean_boost(2.0).l2_norm(), u.l2_norm()),
    )
    ok(
        "modulation norms decrease in p",
        u.modulation_norm(8.0) <= u.modulation_norm(4.0) * (1 + 1e-12),
    )

    base = nl.luxemburg(3.0, [0.3, 1.2, 0.7])
    scaled = nl.luxemburg(3.0, [3.0, 12.0, 7.0])
    ok("luxemburg norm is homogeneous", close(scaled, 10.0 * base, rel=1e-8))

    t = 1e-6
    (psi,) = nl.young_conjugate(2.0, [t])
    ratio = psi * math.log(1.0 / t) ** 4 / t
    ok("conjugate small-argument band", 5e-3 <= ratio <= 2e-1)

    # The data's cubic products must stay below the dealias cutoff for
    # conservation at roundoff; width-4 data needs the 1024-mode grid.
    fine = nl.Grid(1024, 8)
    uf = nl.Field.from_family(fine, "gaussian", 4.0, seed=11, random_phase=True)
    traj = nl.evolve(uf, t_final=0.5, steps=200, stride=20)
    masses = [m for m, _ in traj.mass_energy()]
    drift = max(abs(m - masses[0]) for m in masses)
    ok("split-step conserves mass", drift <= 1e-10 * masses[0])
    ok("trajectory has the requested frames", len(traj) == 11)
    v2 = traj.vp_norm(2.0)
    v3 = traj.vp_norm(3.0)
    ok("p-variation decreases in p", 0.0 <= v3 <= v2 * (1 + 1e-12))

    small = uf.scale(0.1 / uf.modulation_norm(4.0))
    diag, fixed = nl.picard(small, t_final=1.0, steps=200, iters=4, p=4.0)
    ok(
        "picard contracts on small data",
        not diag["diverged"] and all(r < 1.0 for r in diag["ratios"][1:]),
    )
    ok("picard returns the fixed-point trajectory", len(fixed) == 201)

    report = nl.verify_embeddings(n=128, m=8, trials=5, seed=3)
    ok("embedding verifier passes at small size", report["passed"])
    ok("report carries sweep rows", len(report["sweep"]) >= 1)

    result = nl.acceptance_criterion(1)
    ok(f"acceptance criterion 1: {result['detail'][:60]}...", result["passed"])

    print(f"\nall {checks} smoke checks passed")


if __name__ == "__main__":
    main()
