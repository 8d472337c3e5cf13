import os
import subprocess
import sys

import pytest

from multimatroid import _pykernels, kernels
from multimatroid.generators import random_multimatroid, random_ribbon_graph

_ckernels = pytest.importorskip("multimatroid._ckernels")


def test_max_intersection_backends_agree(rng):
    for _ in range(30):
        Z = random_multimatroid(rng)
        qs = list(Z.carrier.subtransversals())
        assert _ckernels.max_intersections(Z.basis_masks, qs) == _pykernels.max_intersections(Z.basis_masks, qs)
        q = rng.choice(qs)
        assert _ckernels.max_intersection(Z.basis_masks, q) == _pykernels.max_intersection(Z.basis_masks, q)


def test_boundary_backends_agree(rng):
    for _ in range(30):
        G = random_ribbon_graph(rng, max_edges=5)
        vstart, rot, edge_of, mate, twist, _ = G._layout()
        n = len(G.edges)
        assert (_ckernels.state_boundary_counts(vstart, rot, edge_of, mate, twist, n)
                == _pykernels.state_boundary_counts(vstart, rot, edge_of, mate, twist, n))
        y, z = rng.getrandbits(n) if n else 0, 0
        assert (_ckernels.boundary_count(vstart, rot, edge_of, mate, twist, y, z)
                == _pykernels.boundary_count(vstart, rot, edge_of, mate, twist, y, z))


def test_wide_masks_fall_back_to_python():
    wide = [1 << 70 | 0b11, 0b101]
    assert kernels.max_intersection(wide, 1 << 70 | 1) == 2


def test_environment_forces_pure_python():
    env = dict(os.environ, MULTIMATROID_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import multimatroid; print(multimatroid.BACKEND)"],
                         capture_output=True, text=True, env=env, check=True).stdout
    assert out.strip() == "python"
    assert kernels.compiled_available()
