"""Command-line interface.

Commands: ``gen-graph``, ``transform``, ``bench``, ``compress``. Every
command is deterministic given its inputs and ``--seed``; persisted outputs
embed the resolved configuration as a JSON key, a leading CSV comment, or a
``<out>.run.json`` sidecar for fixed-schema files.

Exit codes: 0 success, 2 usage or validation error, 3 numerical failure.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import experiments as xp
from . import io as gio
from .errors import NumericalError, ValidationError
from .graphs import GRAPH_FAMILIES, GsoKind, cartesian_product, make_family
from .params import LctParams, ZeroBVariant, inverse
from .product import ProductContext

_BENCH_FIELDS = ("kind", "variant", "signal", "seed", "rank", "nmse")
_COMPRESS_FIELDS = ("method", "variant", "alpha", "a", "b", "c", "d", "gamma", "re", "nrms", "cc")


def _parse_params(text: str) -> tuple[float, float, float, float]:
    parts = text.split(",")
    if len(parts) != 4:
        raise ValidationError(f"--params expects a,b,c,d (four comma-separated numbers), got {text!r}")
    try:
        a, b, c, d = (float(p) for p in parts)
    except ValueError as exc:
        raise ValidationError(f"malformed parameter string {text!r}: {exc}") from exc
    return a, b, c, d


def _parse_gammas(text: str) -> list[float]:
    """Parse 'start:stop:step' into an inclusive list of ratios."""
    try:
        start, stop, step = (float(p) for p in text.split(":"))
    except ValueError as exc:
        raise ValidationError(f"--gammas expects start:stop:step, got {text!r}") from exc
    if step <= 0:
        raise ValidationError("--gammas step must be positive")
    out = []
    k = 0
    while True:
        g = round(start + k * step, 10)
        if g > stop + 1e-12:
            break
        out.append(g)
        k += 1
    if not out:
        raise ValidationError(f"--gammas range {text!r} is empty")
    return out


def _emit(payload: dict, out: str | None, fmt: str | None, csv_fields, csv_rows, config: dict) -> None:
    """Write JSON or CSV to --out, or print to stdout when --out is absent."""
    if fmt is None and out is not None and str(out).endswith(".csv"):
        fmt = "csv"
    if fmt != "csv":
        text = gio.dumps_json(payload)
    else:
        text = gio.csv_text(csv_fields, csv_rows, config)
    if out is None:
        sys.stdout.write(text)
    else:
        gio.atomic_write_text(out, text)


def _sidecar(out: str, config: dict) -> None:
    gio.write_json(str(out) + ".run.json", {"config": config})


def _add_common(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--seed", type=int, default=0, help="master seed (non-negative integer)")
    sp.add_argument("--out", help="output file; stdout when omitted")
    sp.add_argument("--format", choices=("csv", "json"), default=None,
                    help="output format (default json; signal files follow the suffix)")
    sp.add_argument("--gso", choices=("laplacian", "adjacency"), default="laplacian",
                    help="graph shift operator")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="glct", description=__doc__,
                                 formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen-graph", help="generate a graph family and write it as JSON")
    g.add_argument("family", choices=GRAPH_FAMILIES)
    g.add_argument("n", type=int, help="vertex count")
    g.add_argument("--head", type=int, help="comet only: number of star leaves")
    _add_common(g)

    t = sub.add_parser("transform", help="apply a linear canonical transform to a signal file")
    t.add_argument("--signal", required=True, help="input signal file (csv or json)")
    t.add_argument("--graph", action="append", required=True,
                   help="factor graph file; repeat once per dimension")
    t.add_argument("--params", required=True, help="a,b,c,d with ad-bc=1")
    t.add_argument("--variant", choices=xp.VARIANTS, default="cmccm")
    t.add_argument("--zero-b-variant", choices=("eq30", "eq31"), default="eq30")
    t.add_argument("--inverse", action="store_true", help="apply the inverse-parameter transform")
    _add_common(t)

    b = sub.add_parser("bench", help="run the additivity / reversibility / complexity studies")
    b.add_argument("kind", choices=("additivity", "reversibility", "complexity"))
    b.add_argument("--signal", action="append", choices=xp.BENCHMARK_SIGNALS,
                   help="benchmark signal; repeatable, default all")
    b.add_argument("--trials", type=int, default=1000)
    b.add_argument("--variant", choices=xp.VARIANTS + ("both",), default="both")
    b.add_argument("--zero-b-variant", choices=("eq30", "eq31"), default="eq30")
    b.add_argument("--curves-dir", help="write one sorted (rank, nmse) CSV per signal and variant")
    b.add_argument("--n1", type=int, help="complexity only: first size")
    b.add_argument("--n2", type=int, help="complexity only: second size")
    _add_common(b)

    c = sub.add_parser("compress", help="transform-domain compression study")
    c.add_argument("--gamma", action="append", type=float, help="compression ratio; repeatable")
    c.add_argument("--gammas", help="ratio range start:stop:step")
    c.add_argument("--alpha", action="append", type=float,
                   help="fractional baseline order; repeatable")
    c.add_argument("--sweep-gfrft", action="store_true",
                   help="sweep the fractional baseline over orders 0..1 in steps of 0.05")
    c.add_argument("--glct-params", action="append",
                   help="a,b,c,d parameter set; repeatable; d is renormalized to ad-bc=1")
    c.add_argument("--search", type=int, metavar="BUDGET",
                   help="random-search BUDGET parameter sets per ratio and report the best")
    c.add_argument("--variant", choices=xp.VARIANTS, default="cmccm")
    c.add_argument("--zero-b-variant", choices=("eq30", "eq31"), default="eq30")
    c.add_argument("--n1", type=int, default=100, help="ring size of the study graph")
    c.add_argument("--n2", type=int, default=15, help="path size of the study graph")
    c.add_argument("--metric", choices=("re", "nrms", "cc"), default="nrms",
                   help="objective for --search")
    c.add_argument("--curves-dir", help="write one (gamma, metric) CSV per method and metric")
    c.add_argument("--recon-dir", help="write reconstructed signals, one JSON per method and ratio")
    _add_common(c)
    return ap


def _config_echo(args: argparse.Namespace) -> dict:
    cfg = {}
    for key, val in sorted(vars(args).items()):
        if key in ("out",) or val is None:
            continue
        cfg[key.replace("_", "-")] = val
    return cfg


def _cmd_gen_graph(args) -> int:
    if args.seed < 0:
        raise ValidationError("--seed must be non-negative")
    g = make_family(args.family, args.n, args.head)
    config = _config_echo(args)
    if args.out is None:
        sys.stdout.write(gio.dumps_json(gio.graph_to_dict(g)))
    else:
        gio.write_graph(args.out, g)
        _sidecar(args.out, config)
    return 0


def _cmd_transform(args) -> int:
    factors = [gio.read_graph(p) for p in args.graph]
    graph = cartesian_product(factors)
    ctx = ProductContext(graph, GsoKind(args.gso))
    sig = gio.read_signal(args.signal, shape=graph.shape)
    p = LctParams(*_parse_params(args.params))
    if args.inverse:
        p = inverse(p)
    out_sig = xp.apply_glct(sig, p, ctx, args.variant, ZeroBVariant(args.zero_b_variant))
    config = _config_echo(args)
    if args.out is None:
        sys.stdout.write(gio.dumps_json(gio.signal_to_dict(out_sig)))
    else:
        gio.write_signal(args.out, out_sig, fmt=args.format)
        _sidecar(args.out, config)
    return 0


def _bench_complexity(args, config) -> int:
    if args.n1 is None or args.n2 is None:
        raise ValidationError("bench complexity requires --n1 and --n2")
    counts = {v: xp.complexity_model(args.n1, args.n2, v)
              for v in ("cddhfs", "cmccm", "cmccm_zero_b")}
    payload = {"config": config, "complexity": counts}
    rows = [{"variant": k, "count": v} for k, v in counts.items()]
    _emit(payload, args.out, args.format, ("variant", "count"), rows, config)
    return 0


def _cmd_bench(args) -> int:
    if args.seed < 0:
        raise ValidationError("--seed must be non-negative")
    config = _config_echo(args)
    if args.kind == "complexity":
        return _bench_complexity(args, config)
    signals = tuple(args.signal) if args.signal else xp.BENCHMARK_SIGNALS
    variants = xp.VARIANTS if args.variant == "both" else (args.variant,)
    suite = xp.suite_additivity if args.kind == "additivity" else xp.suite_reversibility
    reports = suite(signals=signals, trials=args.trials, seed=args.seed, variants=variants,
                    gso_kind=GsoKind(args.gso), zero_b_variant=ZeroBVariant(args.zero_b_variant))
    payload = {"config": config, "reports": [r.summary_dict() for r in reports]}
    rows = []
    for r in reports:
        for rank, v in enumerate(r.sorted_values(), start=1):
            rows.append({"kind": r.kind, "variant": r.variant, "signal": r.signal,
                         "seed": r.seed, "rank": rank, "nmse": float(v)})
    _emit(payload, args.out, args.format, _BENCH_FIELDS, rows, config)
    if args.curves_dir:
        for r in reports:
            path = Path(args.curves_dir) / f"{r.kind}_{r.signal}_{r.variant}.csv"
            curve = [{"rank": i + 1, "nmse": float(v)} for i, v in enumerate(r.sorted_values())]
            gio.write_csv(path, ("rank", "nmse"), curve, config)
    return 0


def _compress_reports(args, gammas, ctx, x) -> list:
    zb = ZeroBVariant(args.zero_b_variant)
    reports = []
    alphas = list(args.alpha or [])
    if args.sweep_gfrft:
        alphas.extend(a for a in xp.DEFAULT_ALPHA_GRID if a not in alphas)
    param_sets = [LctParams.from_loose(*_parse_params(t)) for t in (args.glct_params or [])]
    if not alphas and not param_sets and not args.search:
        alphas = [1.0]  # plain-transform baseline
    for alpha in alphas:
        for gamma in gammas:
            _, rep = xp.compress_gfrft(x, alpha, ctx, gamma, seed=args.seed)
            reports.append(rep)
    for p in param_sets:
        for gamma in gammas:
            _, rep = xp.compress(x, p, ctx, gamma, args.variant, zb, seed=args.seed)
            reports.append(rep)
    if args.search:
        for gamma in gammas:
            reports.append(xp.search_glct_params(
                x, ctx, gamma, budget=args.search, seed=args.seed,
                metric=args.metric, variant=args.variant, zero_b_variant=zb))
    return reports


def _method_label(rep) -> str:
    if rep.method == "gfrft":
        return f"gfrft_alpha{gio.fmt_num(rep.alpha)}"
    abcd = "_".join(gio.fmt_num(v) for v in rep.params)
    return f"glct_{abcd}"


def _cmd_compress(args) -> int:
    if args.seed < 0:
        raise ValidationError("--seed must be non-negative")
    gammas = list(args.gamma or [])
    if args.gammas:
        gammas.extend(_parse_gammas(args.gammas))
    if not gammas:
        gammas = list(xp.DEFAULT_GAMMAS)
    for g in gammas:
        if not 0.0 < g <= 1.0:
            raise ValidationError(f"compression ratio must lie in (0, 1], got {g}")
    graph, x = xp.study_signal(args.n1, args.n2, args.seed)
    ctx = ProductContext(graph, GsoKind(args.gso))
    reports = _compress_reports(args, gammas, ctx, x)
    config = _config_echo(args)
    rows = [r.row() for r in reports]
    payload = {"config": config, "rows": rows}
    _emit(payload, args.out, args.format, _COMPRESS_FIELDS, rows, config)
    if args.curves_dir:
        by_label: dict[str, list] = {}
        for rep in reports:
            by_label.setdefault(_method_label(rep), []).append(rep)
        for label, reps in by_label.items():
            for metric in ("re", "nrms", "cc"):
                path = Path(args.curves_dir) / f"{label}_{metric}.csv"
                curve = [{"gamma": r.gamma, metric: getattr(r, metric)}
                         for r in sorted(reps, key=lambda r: r.gamma)]
                gio.write_csv(path, ("gamma", metric), curve, config)
    if args.recon_dir:
        zb = ZeroBVariant(args.zero_b_variant)
        for rep in reports:
            if rep.method == "gfrft":
                recon, _ = xp.compress_gfrft(x, rep.alpha, ctx, rep.gamma, seed=args.seed)
            else:
                recon, _ = xp.compress(x, LctParams(*rep.params), ctx, rep.gamma,
                                       rep.variant, zb, seed=args.seed)
            path = Path(args.recon_dir) / f"{_method_label(rep)}_gamma{gio.fmt_num(rep.gamma)}.json"
            gio.write_signal(path, recon, fmt="json")
    return 0


_COMMANDS = {
    "gen-graph": _cmd_gen_graph,
    "transform": _cmd_transform,
    "bench": _cmd_bench,
    "compress": _cmd_compress,
}


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (NumericalError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
