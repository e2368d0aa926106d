"""Quantitative studies: additivity and reversibility NMSE, an operation-count
model for the two factorizations, and a transform-domain compression pipeline
with RE / NRMS / CC quality metrics.

All randomized routines take an explicit master seed; every trial derives its
own sub-seed from (seed, signal index, trial index), so results do not depend
on evaluation order and are reproducible run to run.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import ValidationError
from .graphs import (
    GsoKind,
    ProductGraph,
    bipolar_rect_signal,
    cartesian_product,
    make_family,
)
from .params import LctParams, ZeroBVariant, compose, inverse, sample_random_params
from .product import (
    ProductContext,
    SignalNd,
    gfrft_nd,
    glct_cddhfs_nd,
    glct_cmccm_nd,
)

VARIANTS = ("cddhfs", "cmccm")

#: Benchmark product graphs: name -> ((family, size), (family, size))
BENCHMARK_GRAPHS: dict[str, tuple[tuple[str, int], tuple[str, int]]] = {
    "x1": (("ring", 14), ("path", 8)),
    "x2": (("ring", 18), ("lowstretch", 16)),
    "x3": (("complete", 14), ("comet", 6)),
    "x4": (("complete", 8), ("lowstretch", 16)),
}
BENCHMARK_SIGNALS = tuple(BENCHMARK_GRAPHS)

#: Reference parameter sets for the compression study, one row per
#: (quality metric, compression ratio 0.1..0.9); printed to two decimals, so
#: validate them with LctParams.from_loose rather than the strict constructor.
COMPRESSION_REFERENCE_PARAMS: tuple[tuple[float, float, float, float], ...] = (
    # selected for relative error
    (0.10, 0.60, -0.20, 8.80),
    (0.40, 0.10, -0.60, 2.35),
    (0.10, -0.20, 0.90, 8.20),
    (0.30, -0.20, -1.40, 4.27),
    (0.80, -1.20, 1.40, -0.85),
    (1.20, 1.40, -0.30, 0.48),
    (-1.30, 0.50, 0.40, -0.92),
    (-0.90, 0.30, -1.20, -0.71),
    (0.40, -1.10, 0.70, 0.58),
    # selected for normalized RMS
    (-1.80, 0.30, -1.20, -0.36),
    (-0.40, 0.30, 1.50, -3.60),
    (0.30, 0.10, -0.60, 3.13),
    (0.40, -1.00, 0.70, 0.75),
    (1.30, -0.20, 1.40, 0.55),
    (1.20, 0.50, -1.00, 0.42),
    (1.50, -1.40, 0.20, 0.48),
    (-0.70, 0.30, 1.50, -2.07),
    (0.30, -0.20, 1.80, 2.13),
    # selected for correlation coefficient
    (-0.20, 0.70, 0.40, -6.40),
    (-0.20, 0.50, 1.10, -7.75),
    (0.30, 0.40, -0.80, 2.27),
    (1.40, 0.10, -0.60, 0.67),
    (0.90, -1.10, 0.40, 0.62),
    (-0.60, 1.40, 0.90, -3.77),
    (0.70, 1.80, -0.50, 0.14),
    (0.40, 0.10, -0.60, 2.35),
    (0.10, 0.50, 1.20, 16.00),
)


def _check_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise ValidationError(f"unknown variant {variant!r}; choose from {VARIANTS}")


def apply_glct(
    x: SignalNd,
    p: LctParams,
    ctx: ProductContext,
    variant: str = "cmccm",
    zero_b_variant: ZeroBVariant = ZeroBVariant.EQ30,
) -> SignalNd:
    """Dispatch to the chosen factorization."""
    _check_variant(variant)
    if variant == "cddhfs":
        return glct_cddhfs_nd(x, p, ctx)
    return glct_cmccm_nd(x, p, ctx, zero_b_variant)


# ---------------------------------------------------------------------------
# NMSE figures of merit


def nmse_additivity(
    x: SignalNd,
    p1: LctParams,
    p2: LctParams,
    ctx: ProductContext,
    variant: str = "cmccm",
    zero_b_variant: ZeroBVariant = ZeroBVariant.EQ30,
) -> float:
    """Squared-error ratio between the one-step transform at p1*p2 and the
    two-step cascade: ||T_{p1 p2} x - T_{p1} T_{p2} x||^2 / ||T_{p1 p2} x||^2."""
    one = apply_glct(x, compose(p1, p2), ctx, variant, zero_b_variant)
    den = float(np.sum(np.abs(one.values) ** 2))
    if den == 0.0:
        raise ValidationError("degenerate signal: the reference transform is identically zero")
    two = apply_glct(apply_glct(x, p2, ctx, variant, zero_b_variant), p1, ctx, variant, zero_b_variant)
    num = float(np.sum(np.abs(one.values - two.values) ** 2))
    return num / den


def nmse_reversibility(
    x: SignalNd,
    p: LctParams,
    ctx: ProductContext,
    variant: str = "cmccm",
    zero_b_variant: ZeroBVariant = ZeroBVariant.EQ30,
) -> float:
    """Reconstruction error ||x - T_{p^-1} T_p x||^2 / ||x||^2."""
    den = float(np.sum(np.abs(x.values) ** 2))
    if den == 0.0:
        raise ValidationError("degenerate signal: ||x|| = 0")
    recon = apply_glct(apply_glct(x, p, ctx, variant, zero_b_variant), inverse(p), ctx, variant, zero_b_variant)
    num = float(np.sum(np.abs(x.values - recon.values) ** 2))
    return num / den


# ---------------------------------------------------------------------------
# operation-count model


def complexity_model(n1: int, n2: int, variant: str) -> float:
    """Modeled real-multiplication count of one 2-D transform.

    The model assumes fast length-N transforms at (N/2) log2 N complex
    multiplies, so it reflects the asymptotic regime rather than the dense
    implementation measured by ``mult_count``:

    - cddhfs:        4 (N1^2 + N2^2) + 8 (N1 + N2)
    - cmccm:         12 (N1 + N2) + 4 (N1 log2 N1 + N2 log2 N2)
    - cmccm_zero_b:  12 (N1 + N2) + 6 (N1 log2 N1 + N2 log2 N2)
    """
    if n1 < 2 or n2 < 2:
        raise ValidationError(f"sizes must be >= 2, got ({n1}, {n2})")
    logs = n1 * math.log2(n1) + n2 * math.log2(n2)
    if variant == "cddhfs":
        return 4.0 * (n1 * n1 + n2 * n2) + 8.0 * (n1 + n2)
    if variant == "cmccm":
        return 12.0 * (n1 + n2) + 4.0 * logs
    if variant == "cmccm_zero_b":
        return 12.0 * (n1 + n2) + 6.0 * logs
    raise ValidationError(f"unknown variant {variant!r}; choose cddhfs, cmccm, or cmccm_zero_b")


# ---------------------------------------------------------------------------
# benchmark signals and suites


def benchmark_signal(name: str) -> tuple[ProductGraph, SignalNd]:
    """Benchmark 2-D signal: outer product of per-factor rectangular signals.

    Each factor carries the +1/-1 rectangular signal, so the product signal
    is itself +1/-1 valued.
    """
    try:
        specs = BENCHMARK_GRAPHS[name]
    except KeyError:
        raise ValidationError(f"unknown benchmark signal {name!r}; choose from {BENCHMARK_SIGNALS}")
    factors = [make_family(fam, n) for fam, n in specs]
    graph = cartesian_product(factors)
    parts = [bipolar_rect_signal(g.n) for g in factors]
    tensor = np.multiply.outer(parts[0], parts[1])
    return graph, SignalNd.from_tensor(tensor)


@dataclass(frozen=True)
class NmseReport:
    """Per-trial NMSE values for one (study, variant, signal) combination."""

    kind: str
    variant: str
    signal: str
    seed: int
    values: np.ndarray
    params: tuple

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 1 or values.size == 0 or (values < 0).any():
            raise ValidationError("NMSE values must be a non-empty vector of non-negative reals")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def trials(self) -> int:
        return self.values.size

    @property
    def mean(self) -> float:
        return float(np.mean(self.values))

    def sorted_values(self) -> np.ndarray:
        return np.sort(self.values)

    def summary_dict(self) -> dict:
        return {
            "kind": self.kind,
            "variant": self.variant,
            "signal": self.signal,
            "seed": self.seed,
            "trials": self.trials,
            "mean": self.mean,
            "values": [float(v) for v in self.sorted_values()],
        }


def _trial_rng(seed: int, signal_index: int, trial: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence((seed, signal_index, trial)))


def _suite(
    kind: str,
    signals: Sequence[str],
    trials: int,
    seed: int,
    variants: Sequence[str],
    gso_kind: GsoKind,
    zero_b_variant: ZeroBVariant,
) -> list[NmseReport]:
    if trials < 1:
        raise ValidationError("trials must be >= 1")
    for v in variants:
        _check_variant(v)
    reports: list[NmseReport] = []
    for name in signals:
        sig_index = BENCHMARK_SIGNALS.index(name) if name in BENCHMARK_SIGNALS else len(BENCHMARK_SIGNALS)
        graph, x = benchmark_signal(name)
        ctx = ProductContext(graph, gso_kind)
        drawn: list[tuple] = []
        values = {v: np.empty(trials) for v in variants}
        for t in range(trials):
            rng = _trial_rng(seed, sig_index, t)
            if kind == "additivity":
                p1 = sample_random_params(rng)
                p2 = sample_random_params(rng)
                drawn.append((p1.astuple(), p2.astuple()))
                for v in variants:
                    values[v][t] = nmse_additivity(x, p1, p2, ctx, v, zero_b_variant)
            else:
                p = sample_random_params(rng)
                drawn.append(p.astuple())
                for v in variants:
                    values[v][t] = nmse_reversibility(x, p, ctx, v, zero_b_variant)
        for v in variants:
            reports.append(
                NmseReport(kind=kind, variant=v, signal=name, seed=seed, values=values[v], params=tuple(drawn))
            )
    return reports


def suite_additivity(
    signals: Sequence[str] = BENCHMARK_SIGNALS,
    trials: int = 1000,
    seed: int = 0,
    variants: Sequence[str] = VARIANTS,
    gso_kind: GsoKind = GsoKind.LAPLACIAN,
    zero_b_variant: ZeroBVariant = ZeroBVariant.EQ30,
) -> list[NmseReport]:
    """Additivity NMSE over seeded random parameter pairs, per signal and variant."""
    return _suite("additivity", signals, trials, seed, variants, gso_kind, zero_b_variant)


def suite_reversibility(
    signals: Sequence[str] = BENCHMARK_SIGNALS,
    trials: int = 1000,
    seed: int = 0,
    variants: Sequence[str] = VARIANTS,
    gso_kind: GsoKind = GsoKind.LAPLACIAN,
    zero_b_variant: ZeroBVariant = ZeroBVariant.EQ30,
) -> list[NmseReport]:
    """Reversibility NMSE over seeded random parameters, per signal and variant."""
    return _suite("reversibility", signals, trials, seed, variants, gso_kind, zero_b_variant)


# ---------------------------------------------------------------------------
# compression


def relative_error(x: np.ndarray, xc: np.ndarray) -> float:
    """Sum of absolute errors over the sum of absolute signal values."""
    x = np.asarray(x, dtype=float).ravel()
    xc = np.asarray(xc, dtype=float).ravel()
    den = float(np.abs(x).sum())
    if den == 0.0:
        raise ValidationError("relative error undefined for an all-zero signal")
    return float(np.abs(x - xc).sum()) / den


def normalized_rms(x: np.ndarray, xc: np.ndarray) -> float:
    """Root-sum-square error normalized by the signal's deviation from its mean."""
    x = np.asarray(x, dtype=float).ravel()
    xc = np.asarray(xc, dtype=float).ravel()
    den = float(np.linalg.norm(x - x.mean()))
    if den == 0.0:
        raise ValidationError("normalized RMS undefined for a constant signal")
    return float(np.linalg.norm(x - xc)) / den


def correlation_coefficient(x: np.ndarray, xc: np.ndarray) -> float:
    """Pearson correlation between original and reconstruction."""
    x = np.asarray(x, dtype=float).ravel()
    xc = np.asarray(xc, dtype=float).ravel()
    dx = x - x.mean()
    dc = xc - xc.mean()
    den = float(np.linalg.norm(dx) * np.linalg.norm(dc))
    if den == 0.0:
        raise ValidationError("correlation undefined for a constant signal")
    return float(np.dot(dx, dc)) / den


@dataclass(frozen=True)
class CompressionReport:
    """Quality metrics for one compressed reconstruction."""

    method: str
    gamma: float
    re: float
    nrms: float
    cc: float
    alpha: float | None = None
    params: tuple[float, float, float, float] | None = None
    variant: str | None = None
    seed: int | None = None

    def row(self) -> dict:
        return {
            "method": self.method,
            "variant": "" if self.variant is None else self.variant,
            "alpha": "" if self.alpha is None else self.alpha,
            "a": "" if self.params is None else self.params[0],
            "b": "" if self.params is None else self.params[1],
            "c": "" if self.params is None else self.params[2],
            "d": "" if self.params is None else self.params[3],
            "gamma": self.gamma,
            "re": self.re,
            "nrms": self.nrms,
            "cc": self.cc,
        }


def _keep_largest(values: np.ndarray, k: int) -> np.ndarray:
    """Zero all but the k largest-magnitude entries; ties keep the lower index."""
    order = np.lexsort((np.arange(values.size), -np.abs(values)))
    out = np.zeros_like(values)
    keep = order[:k]
    out[keep] = values[keep]
    return out


def _check_gamma(gamma: float) -> float:
    gamma = float(gamma)
    if not 0.0 < gamma <= 1.0:
        raise ValidationError(f"compression ratio must lie in (0, 1], got {gamma}")
    return gamma


def _compress_core(x, forward, backward, gamma):
    if float(np.linalg.norm(x.values)) == 0.0:
        raise ValidationError("cannot compress an all-zero signal")
    coeffs = forward(x)
    k = math.ceil(gamma * coeffs.n)
    kept = SignalNd(coeffs.shape, _keep_largest(np.asarray(coeffs.values), k))
    recon = backward(kept)
    x_com = SignalNd(recon.shape, recon.values.real.astype(complex))
    xr = x.values.real
    cr = recon.values.real
    return x_com, relative_error(xr, cr), normalized_rms(xr, cr), correlation_coefficient(xr, cr)


def compress(
    x: SignalNd,
    p: LctParams,
    ctx: ProductContext,
    gamma: float,
    variant: str = "cmccm",
    zero_b_variant: ZeroBVariant = ZeroBVariant.EQ30,
    seed: int | None = None,
) -> tuple[SignalNd, CompressionReport]:
    """Keep the ceil(gamma * N) largest transform coefficients and reconstruct.

    The reconstruction applies the transform with inverse parameters and the
    same factorization; metrics compare real parts against the original.
    """
    gamma = _check_gamma(gamma)
    _check_variant(variant)
    pinv = inverse(p)
    x_com, re, nrms, cc = _compress_core(
        x,
        lambda s: apply_glct(s, p, ctx, variant, zero_b_variant),
        lambda s: apply_glct(s, pinv, ctx, variant, zero_b_variant),
        gamma,
    )
    report = CompressionReport(
        method="glct", gamma=gamma, re=re, nrms=nrms, cc=cc,
        params=p.astuple(), variant=variant, seed=seed,
    )
    return x_com, report


def compress_gfrft(
    x: SignalNd,
    alpha: float,
    ctx: ProductContext,
    gamma: float,
    seed: int | None = None,
) -> tuple[SignalNd, CompressionReport]:
    """Fractional-transform baseline for the compression pipeline."""
    gamma = _check_gamma(gamma)
    x_com, re, nrms, cc = _compress_core(
        x,
        lambda s: gfrft_nd(s, alpha, ctx),
        lambda s: gfrft_nd(s, -alpha, ctx),
        gamma,
    )
    report = CompressionReport(method="gfrft", gamma=gamma, re=re, nrms=nrms, cc=cc, alpha=float(alpha), seed=seed)
    return x_com, report


DEFAULT_GAMMAS = tuple(round(0.1 * k, 1) for k in range(1, 10))
DEFAULT_ALPHA_GRID = tuple(round(0.05 * k, 2) for k in range(21))


def study_signal(n1: int = 100, n2: int = 15, seed: int = 0) -> tuple[ProductGraph, SignalNd]:
    """Default compression-study setup: ring x path with uniform [-10, 10] data."""
    graph = cartesian_product([make_family("ring", n1), make_family("path", n2)])
    rng = np.random.default_rng(np.random.SeedSequence((seed,)))
    values = rng.uniform(-10.0, 10.0, size=graph.n)
    return graph, SignalNd(graph.shape, values)


def compression_study(
    seed: int = 0,
    gammas: Sequence[float] = DEFAULT_GAMMAS,
    alpha_grid: Sequence[float] | None = DEFAULT_ALPHA_GRID,
    glct_param_sets: Sequence[Sequence[float]] | None = COMPRESSION_REFERENCE_PARAMS,
    n1: int = 100,
    n2: int = 15,
    variant: str = "cmccm",
    gso_kind: GsoKind = GsoKind.LAPLACIAN,
    zero_b_variant: ZeroBVariant = ZeroBVariant.EQ30,
) -> list[CompressionReport]:
    """Sweep the fractional baseline and parameter sets across ratios.

    Parameter sets are accepted with two-decimal rounding; d is renormalized
    to keep ad - bc = 1 exact before transforming.
    """
    graph, x = study_signal(n1, n2, seed)
    ctx = ProductContext(graph, gso_kind)
    reports: list[CompressionReport] = []
    for alpha in alpha_grid or ():
        for gamma in gammas:
            _, rep = compress_gfrft(x, float(alpha), ctx, gamma, seed=seed)
            reports.append(rep)
    for row in glct_param_sets or ():
        p = LctParams.from_loose(*row)
        for gamma in gammas:
            _, rep = compress(x, p, ctx, gamma, variant, zero_b_variant, seed=seed)
            reports.append(rep)
    return reports


def best_by_metric(reports: Iterable[CompressionReport], metric: str = "nrms") -> dict[float, CompressionReport]:
    """Best report per compression ratio; lower is better except for cc."""
    if metric not in ("re", "nrms", "cc"):
        raise ValidationError(f"unknown metric {metric!r}; choose re, nrms, or cc")
    sign = -1.0 if metric == "cc" else 1.0
    best: dict[float, CompressionReport] = {}
    for rep in reports:
        cur = best.get(rep.gamma)
        if cur is None or sign * getattr(rep, metric) < sign * getattr(cur, metric):
            best[rep.gamma] = rep
    return best


def search_glct_params(
    x: SignalNd,
    ctx: ProductContext,
    gamma: float,
    budget: int = 50,
    seed: int = 0,
    metric: str = "nrms",
    variant: str = "cmccm",
    zero_b_variant: ZeroBVariant = ZeroBVariant.EQ30,
) -> CompressionReport:
    """Random search over (a, b, c) with d = (1 + bc) / a; returns the best report."""
    if budget < 1:
        raise ValidationError("search budget must be >= 1")
    if metric not in ("re", "nrms", "cc"):
        raise ValidationError(f"unknown metric {metric!r}; choose re, nrms, or cc")
    rng = np.random.default_rng(np.random.SeedSequence((seed,)))
    sign = -1.0 if metric == "cc" else 1.0
    best: CompressionReport | None = None
    for _ in range(budget):
        p = sample_random_params(rng)
        _, rep = compress(x, p, ctx, gamma, variant, zero_b_variant, seed=seed)
        if best is None or sign * getattr(rep, metric) < sign * getattr(best, metric):
            best = rep
    assert best is not None
    return best
