import numpy as np
import pytest

from glct import ProductContext, SignalNd, cartesian_product, make_path, make_ring


@pytest.fixture(scope="session")
def ctx_ring4_path3():
    return ProductContext(cartesian_product([make_ring(4), make_path(3)]))


@pytest.fixture(scope="session")
def ctx_3d():
    return ProductContext(cartesian_product([make_path(2), make_path(3), make_ring(4)]))


@pytest.fixture
def rand_signal():
    def make(ctx, seed=0, complex_valued=True):
        rng = np.random.default_rng(seed)
        n = ctx.graph.n
        values = rng.normal(size=n)
        if complex_valued:
            values = values + 1j * rng.normal(size=n)
        return SignalNd(ctx.shape, values)

    return make
