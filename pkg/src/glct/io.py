"""File formats and deterministic serialization.

Graph files are JSON ``{"n": int, "edges": [[i, j, w], ...]}`` with i < j.
Signal files are either CSV with one value per line in linearized vertex
order, or JSON ``{"shape": [...], "data": [[re, im], ...]}``. All writes are
atomic (temp file + rename) and all numbers are serialized via ``repr`` of
Python floats, so reruns produce byte-identical files.
"""
from __future__ import annotations

import json
import os
import tempfile
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from .errors import ValidationError
from .graphs import Graph
from .product import SignalNd


def fmt_num(v: Any) -> str:
    """Shortest round-trip decimal text for a real number."""
    if isinstance(v, str):
        return v
    f = float(v)
    if f == int(f) and abs(f) < 1e16:
        return str(int(f))
    return repr(f)


def atomic_write_text(path: str | Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name + ".", suffix=".tmp")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def dumps_json(obj: Any, compact: bool = False) -> str:
    if compact:
        return json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n"
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def write_json(path: str | Path, obj: Any, compact: bool = False) -> None:
    atomic_write_text(path, dumps_json(obj, compact=compact))


def write_csv(
    path: str | Path,
    fieldnames: Sequence[str],
    rows: Iterable[Mapping[str, Any]],
    config: Mapping[str, Any] | None = None,
) -> None:
    """Write rows as CSV; an optional config echo goes in a leading comment."""
    atomic_write_text(path, csv_text(fieldnames, rows, config))


def csv_text(
    fieldnames: Sequence[str],
    rows: Iterable[Mapping[str, Any]],
    config: Mapping[str, Any] | None = None,
) -> str:
    lines = []
    if config is not None:
        lines.append("# config: " + json.dumps(config, sort_keys=True))
    lines.append(",".join(fieldnames))
    for row in rows:
        lines.append(",".join(fmt_num(row[k]) for k in fieldnames))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# graphs


def graph_to_dict(g: Graph) -> dict:
    return {"n": g.n, "edges": [[i, j, w] for i, j, w in g.edges]}


def write_graph(path: str | Path, g: Graph) -> None:
    write_json(path, graph_to_dict(g), compact=True)


def read_graph(path: str | Path) -> Graph:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ValidationError(f"cannot read graph file {path}: {exc}") from exc
    try:
        n = data["n"]
        edges = tuple((int(i), int(j), float(w)) for i, j, w in data["edges"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ValidationError(f"malformed graph file {path}: {exc}") from exc
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# signals


def signal_to_dict(sig: SignalNd) -> dict:
    return {
        "shape": list(sig.shape),
        "data": [[float(v.real), float(v.imag)] for v in sig.values],
    }


def write_signal(path: str | Path, sig: SignalNd, fmt: str | None = None) -> None:
    """Write a signal as JSON or CSV; the default follows the file suffix."""
    path = Path(path)
    if fmt is None:
        fmt = "csv" if path.suffix.lower() == ".csv" else "json"
    if fmt == "json":
        write_json(path, signal_to_dict(sig), compact=True)
        return
    if fmt != "csv":
        raise ValidationError(f"unknown signal format {fmt!r}; choose csv or json")
    lines = []
    for v in sig.values:
        lines.append(fmt_num(v.real) if v.imag == 0.0 else repr(complex(v)))
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_signal(path: str | Path, shape: Sequence[int] | None = None) -> SignalNd:
    """Read a signal file; CSV needs ``shape`` unless the signal is 1-D."""
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise ValidationError(f"cannot read signal file {path}: {exc}") from exc
    if path.suffix.lower() == ".json" or text.lstrip().startswith("{"):
        try:
            data = json.loads(text)
            file_shape = tuple(int(s) for s in data["shape"])
            vals = []
            for entry in data["data"]:
                if isinstance(entry, (list, tuple)):
                    re, im = entry
                    vals.append(complex(float(re), float(im)))
                else:
                    vals.append(complex(entry))
            values = np.array(vals, dtype=complex)
        except (KeyError, TypeError, ValueError, json.JSONDecodeError) as exc:
            raise ValidationError(f"malformed signal file {path}: {exc}") from exc
        if shape is not None and tuple(shape) != file_shape:
            raise ValidationError(
                f"signal file {path} has shape {file_shape}, expected {tuple(shape)}"
            )
        return SignalNd(file_shape, values)
    try:
        values = np.array(
            [complex(line.strip()) for line in text.splitlines() if line.strip()],
            dtype=complex,
        )
    except ValueError as exc:
        raise ValidationError(f"malformed signal file {path}: {exc}") from exc
    use_shape = tuple(int(s) for s in shape) if shape is not None else (values.size,)
    return SignalNd(use_shape, values)
