import random
from itertools import product

import pytest
from hypothesis import strategies as st

from polydelta.geometry import NotFullDimensional, from_points
from polydelta.lattice import identity, matmul


def random_unimodular(rng: random.Random, n: int, steps: int = 6, mult: int = 2):
    u = identity(n)
    for _ in range(steps):
        if n == 1:
            e = ((rng.choice([-1, 1]),),)
        else:
            i, j = rng.sample(range(n), 2)
            rows = [list(r) for r in identity(n)]
            rows[i][j] = rng.randint(-mult, mult)
            if rng.random() < 0.3:
                rows[i][i] = -1
            e = tuple(map(tuple, rows))
        u = matmul(u, e)
    return u


def brute_force_count(p, k=1, interior=False):
    """Independent oracle: scan the bounding box of kP against qhull facet
    equations.  Coordinates are small, so a 1e-9 slack is safe."""
    import numpy as np
    from scipy.spatial import ConvexHull

    n = p.dim
    verts = np.array(p.vertices, dtype=float) * k
    if n == 1:
        lo, hi = verts.min(), verts.max()
        pts = range(int(lo), int(hi) + 1)
        return sum(1 for x in pts if (lo < x < hi if interior else True))
    hull = ConvexHull(verts)
    eq = hull.equations
    lo = verts.min(axis=0).astype(int)
    hi = verts.max(axis=0).astype(int)
    count = 0
    for x in product(*[range(a, b + 1) for a, b in zip(lo, hi)]):
        vals = eq[:, :-1] @ np.array(x, dtype=float) + eq[:, -1]
        if interior:
            count += bool((vals < -1e-9).all())
        else:
            count += bool((vals <= 1e-9).all())
    return count


@st.composite
def small_polytopes(draw, dims=(1, 2, 3), box=3):
    n = draw(st.sampled_from(dims))
    m = draw(st.integers(n + 1, n + 4))
    pts = draw(
        st.lists(st.tuples(*[st.integers(0, box)] * n), min_size=m, max_size=m, unique=True)
    )
    try:
        return from_points(pts, n)
    except NotFullDimensional:
        from hypothesis import assume

        assume(False)


@pytest.fixture
def rng():
    return random.Random(12345)
