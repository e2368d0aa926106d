"""Factored multi-dimensional transforms against dense Kronecker oracles."""
import numpy as np
import pytest

from glct import (
    LctParams,
    ProductContext,
    SignalNd,
    TransformSpec,
    ValidationError,
    ZeroBVariant,
    apply_spec,
    cartesian_product,
    dense_operator,
    gcm_nd,
    gfrft_nd,
    gft_nd,
    gft_matrix,
    glct_cddhfs_nd,
    glct_cmccm_nd,
    gscale_nd,
    igft_nd,
    inverse,
    make_path,
    make_ring,
    mult_count,
    kronecker_sum,
)

GENERAL_ABCD = (0.6, 0.8, -0.5, 1.0)
ZERO_B_ABCD = (2.0, 0.0, 0.7, 0.5)

ORACLE_SPECS = [
    TransformSpec("gft"),
    TransformSpec("igft"),
    TransformSpec("gfrft", {"alpha": 0.4}),
    TransformSpec("gcm", {"xi": 0.8}),
    TransformSpec("gscale", {"sigma": 1.7}),
    TransformSpec("glct_cddhfs", {"abcd": GENERAL_ABCD}),
    TransformSpec("glct_cmccm", {"abcd": GENERAL_ABCD}),
    TransformSpec("glct_cmccm", {"abcd": ZERO_B_ABCD}, zero_b_variant="eq30"),
    TransformSpec("glct_cmccm", {"abcd": ZERO_B_ABCD}, zero_b_variant="eq31"),
]


def factored_matrix(spec, ctx):
    """Apply the factored transform to every basis vector."""
    n = ctx.graph.n
    cols = []
    for k in range(n):
        e = np.zeros(n, dtype=complex)
        e[k] = 1.0
        cols.append(apply_spec(SignalNd(ctx.shape, e), spec, ctx).values)
    return np.column_stack(cols)


class TestSignalNd:
    def test_tensor_round_trip(self):
        rng = np.random.default_rng(0)
        t = rng.normal(size=(3, 4, 2))
        sig = SignalNd.from_tensor(t)
        np.testing.assert_array_equal(sig.tensor().real, t)
        assert sig.values[1] == t[1, 0, 0]  # first axis fastest

    def test_length_mismatch_raises(self):
        with pytest.raises(ValidationError):
            SignalNd((2, 3), np.ones(5))

    def test_values_are_read_only(self):
        sig = SignalNd((2,), np.ones(2))
        with pytest.raises(ValueError):
            sig.values[0] = 3.0


class TestGftNd:
    def test_dc_coefficient(self):
        ctx = ProductContext(cartesian_product([make_ring(4), make_path(2)]))
        xhat = gft_nd(SignalNd(ctx.shape, np.ones(8)), ctx)
        expected = np.zeros(8, dtype=complex)
        expected[0] = 2.0 * np.sqrt(2.0)
        np.testing.assert_allclose(xhat.values, expected, atol=1e-10)

    def test_matrix_chain_equals_vec_form(self, ctx_ring4_path3, rand_signal):
        x = rand_signal(ctx_ring4_path3, 1)
        f1 = gft_matrix(ctx_ring4_path3.factors[0].basis)
        f2 = gft_matrix(ctx_ring4_path3.factors[1].basis)
        chain = f1 @ x.tensor() @ f2.T
        np.testing.assert_allclose(gft_nd(x, ctx_ring4_path3).tensor(), chain, atol=1e-10)

    def test_round_trip(self, ctx_ring4_path3, rand_signal):
        x = rand_signal(ctx_ring4_path3, 2)
        back = igft_nd(gft_nd(x, ctx_ring4_path3), ctx_ring4_path3)
        np.testing.assert_allclose(back.values, x.values, atol=1e-10)

    def test_parseval(self, ctx_ring4_path3, rand_signal):
        x = rand_signal(ctx_ring4_path3, 3)
        assert gft_nd(x, ctx_ring4_path3).norm() == pytest.approx(x.norm(), abs=1e-10)

    def test_shape_mismatch_raises(self, ctx_ring4_path3):
        with pytest.raises(ValidationError):
            gft_nd(SignalNd((4, 4), np.ones(16)), ctx_ring4_path3)


class TestAgainstDenseOracle:
    @pytest.mark.parametrize("spec", ORACLE_SPECS, ids=lambda s: f"{s.op}-{s.zero_b_variant}")
    def test_2d(self, spec, ctx_ring4_path3):
        dense = dense_operator(spec, ctx_ring4_path3.graph)
        np.testing.assert_allclose(
            factored_matrix(spec, ctx_ring4_path3), dense, atol=1e-9
        )

    @pytest.mark.parametrize("spec", ORACLE_SPECS, ids=lambda s: f"{s.op}-{s.zero_b_variant}")
    def test_3d(self, spec, ctx_3d):
        dense = dense_operator(spec, ctx_3d.graph)
        np.testing.assert_allclose(factored_matrix(spec, ctx_3d), dense, atol=1e-9)

    def test_dense_gft_times_dense_igft_is_identity(self, ctx_ring4_path3):
        g = ctx_ring4_path3.graph
        prod = dense_operator(TransformSpec("gft"), g) @ dense_operator(TransformSpec("igft"), g)
        assert np.abs(prod - np.eye(g.n)).max() < 1e-10

    def test_adjacency_gso(self, ctx_ring4_path3):
        from glct import GsoKind

        graph = ctx_ring4_path3.graph
        ctx = ProductContext(graph, GsoKind.ADJACENCY)
        for spec in (
            TransformSpec("gfrft", {"alpha": 0.4}, gso="adjacency"),
            TransformSpec("glct_cmccm", {"abcd": GENERAL_ABCD}, gso="adjacency"),
            TransformSpec("glct_cddhfs", {"abcd": GENERAL_ABCD}, gso="adjacency"),
        ):
            np.testing.assert_allclose(
                factored_matrix(spec, ctx), dense_operator(spec, graph), atol=1e-9
            )

    def test_adjacency_cmccm_exact_inversion(self, ctx_ring4_path3, rand_signal):
        from glct import GsoKind

        ctx = ProductContext(ctx_ring4_path3.graph, GsoKind.ADJACENCY)
        x = rand_signal(ctx, 21)
        p = LctParams(*GENERAL_ABCD)
        back = glct_cmccm_nd(glct_cmccm_nd(x, p, ctx), inverse(p), ctx)
        assert np.abs(back.values - x.values).max() < 1e-9

    def test_size_cap(self):
        big = cartesian_product([make_ring(70), make_ring(70)])
        with pytest.raises(ValidationError):
            dense_operator(TransformSpec("gft"), big)


class TestOps:
    def test_gfrft_order_zero_and_one(self, ctx_ring4_path3, rand_signal):
        x = rand_signal(ctx_ring4_path3, 4)
        np.testing.assert_allclose(gfrft_nd(x, 0.0, ctx_ring4_path3).values, x.values, atol=1e-10)
        np.testing.assert_allclose(
            gfrft_nd(x, 1.0, ctx_ring4_path3).values,
            gft_nd(x, ctx_ring4_path3).values,
            atol=1e-9,
        )

    def test_gcm_identity_and_modulus(self, ctx_ring4_path3, rand_signal):
        x = rand_signal(ctx_ring4_path3, 5)
        np.testing.assert_allclose(gcm_nd(x, 0.0, ctx_ring4_path3).values, x.values, atol=1e-12)
        np.testing.assert_allclose(
            np.abs(gcm_nd(x, 1.9, ctx_ring4_path3).values), np.abs(x.values), atol=1e-12
        )

    def test_gcm_powers_add(self, ctx_ring4_path3, rand_signal):
        # separability keeps the combined diagonal exactly power-additive
        x = rand_signal(ctx_ring4_path3, 6)
        lhs = gcm_nd(gcm_nd(x, 0.45, ctx_ring4_path3), 1.3, ctx_ring4_path3)
        rhs = gcm_nd(x, 1.75, ctx_ring4_path3)
        np.testing.assert_allclose(lhs.values, rhs.values, atol=1e-10)

    def test_gscale_constant_signal_nulls(self, ctx_ring4_path3):
        out = gscale_nd(SignalNd(ctx_ring4_path3.shape, np.ones(12)), 2.5, ctx_ring4_path3)
        np.testing.assert_allclose(out.values, 0.0, atol=1e-12)

    def test_gscale_matches_kronecker_sum(self, ctx_ring4_path3, rand_signal):
        x = rand_signal(ctx_ring4_path3, 7)
        zsum = kronecker_sum([dec.z for dec in ctx_ring4_path3.factors])
        np.testing.assert_allclose(
            gscale_nd(x, 1.0, ctx_ring4_path3).values, zsum @ x.values, atol=1e-10
        )

    def test_gscale_linearity(self, ctx_ring4_path3, rand_signal):
        x, y = rand_signal(ctx_ring4_path3, 8), rand_signal(ctx_ring4_path3, 9)
        mix = SignalNd(x.shape, 1.5 * x.values - 2.0j * y.values)
        lhs = gscale_nd(mix, 0.7, ctx_ring4_path3).values
        rhs = 1.5 * gscale_nd(x, 0.7, ctx_ring4_path3).values - 2.0j * gscale_nd(y, 0.7, ctx_ring4_path3).values
        np.testing.assert_allclose(lhs, rhs, atol=1e-10)

    def test_gscale_zero_sigma_raises(self, ctx_ring4_path3):
        with pytest.raises(ValidationError):
            gscale_nd(SignalNd(ctx_ring4_path3.shape, np.ones(12)), 0.0, ctx_ring4_path3)

    def test_cddhfs_plain_transform_reduction(self, ctx_ring4_path3, rand_signal):
        x = rand_signal(ctx_ring4_path3, 10)
        out = glct_cddhfs_nd(x, LctParams(0, 1, -1, 0), ctx_ring4_path3)
        expected = gscale_nd(gft_nd(x, ctx_ring4_path3), 1.0, ctx_ring4_path3)
        np.testing.assert_allclose(out.values, expected.values, atol=1e-9)

    def test_cmccm_norm_and_inversion(self, ctx_ring4_path3, rand_signal):
        x = rand_signal(ctx_ring4_path3, 11)
        p = LctParams(*GENERAL_ABCD)
        y = glct_cmccm_nd(x, p, ctx_ring4_path3)
        assert y.norm() == pytest.approx(x.norm(), abs=1e-9)
        back = glct_cmccm_nd(y, inverse(p), ctx_ring4_path3)
        assert np.abs(back.values - x.values).max() < 1e-9

    def test_transform_linearity(self, ctx_ring4_path3, rand_signal):
        x, y = rand_signal(ctx_ring4_path3, 12), rand_signal(ctx_ring4_path3, 13)
        p = LctParams(*GENERAL_ABCD)
        mix = SignalNd(x.shape, 0.5 * x.values + 2.0 * y.values)
        for fn in (
            lambda s: glct_cmccm_nd(s, p, ctx_ring4_path3),
            lambda s: glct_cddhfs_nd(s, p, ctx_ring4_path3),
        ):
            lhs = fn(mix).values
            rhs = 0.5 * fn(x).values + 2.0 * fn(y).values
            np.testing.assert_allclose(lhs, rhs, atol=1e-10)


class TestUnitarity:
    @pytest.mark.parametrize(
        "spec",
        [
            TransformSpec("glct_cmccm", {"abcd": GENERAL_ABCD}),
            TransformSpec("glct_cmccm", {"abcd": ZERO_B_ABCD}, zero_b_variant="eq30"),
            TransformSpec("glct_cmccm", {"abcd": ZERO_B_ABCD}, zero_b_variant="eq31"),
        ],
        ids=["general", "eq30", "eq31"],
    )
    def test_cmccm_branches_unitary(self, spec, ctx_ring4_path3):
        t = dense_operator(spec, ctx_ring4_path3.graph)
        assert np.abs(t.conj().T @ t - np.eye(ctx_ring4_path3.graph.n)).max() < 1e-9


class TestTransformSpec:
    def test_dict_round_trip(self):
        spec = TransformSpec("glct_cmccm", {"abcd": list(GENERAL_ABCD)}, zero_b_variant="eq31")
        assert TransformSpec.from_dict(spec.to_dict()) == spec

    def test_unknown_op_raises(self):
        with pytest.raises(ValidationError):
            TransformSpec("dct")

    def test_gso_mismatch_raises(self, ctx_ring4_path3):
        spec = TransformSpec("gft", gso="adjacency")
        with pytest.raises(ValidationError):
            apply_spec(SignalNd(ctx_ring4_path3.shape, np.ones(12)), spec, ctx_ring4_path3)

    def test_missing_abcd_raises(self):
        with pytest.raises(ValidationError):
            TransformSpec("glct_cmccm").abcd()


class TestMultCount:
    def test_chirp_multiplication_cost(self):
        assert mult_count(TransformSpec("gcm", {"xi": 1.0}), (7, 9)) == 4 * 63

    def test_deterministic(self):
        spec = TransformSpec("glct_cddhfs", {"abcd": GENERAL_ABCD})
        assert mult_count(spec, (100, 15)) == mult_count(spec, (100, 15))

    def test_monotone_when_sizes_grow(self):
        for spec in (
            TransformSpec("gft"),
            TransformSpec("gfrft", {"alpha": 0.3}),
            TransformSpec("gscale", {"sigma": 2.0}),
            TransformSpec("glct_cddhfs", {"abcd": GENERAL_ABCD}),
            TransformSpec("glct_cmccm", {"abcd": GENERAL_ABCD}),
        ):
            counts = [mult_count(spec, (n, n + 2)) for n in (4, 8, 16, 32)]
            assert all(a < b for a, b in zip(counts, counts[1:]))

    def test_cmccm_beats_cddhfs_at_study_size(self):
        cm = mult_count(TransformSpec("glct_cmccm", {"abcd": GENERAL_ABCD}), (100, 15))
        cd = mult_count(TransformSpec("glct_cddhfs", {"abcd": GENERAL_ABCD}), (100, 15))
        assert cm < cd

    def test_zero_b_costs_more_than_general(self):
        general = mult_count(TransformSpec("glct_cmccm", {"abcd": GENERAL_ABCD}), (16, 8))
        zero_b = mult_count(TransformSpec("glct_cmccm", {"abcd": ZERO_B_ABCD}), (16, 8))
        assert zero_b > general
