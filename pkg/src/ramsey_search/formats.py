"""Text formats for colorings, coloring vectors and search trajectories.

Coloring files are line-oriented 7-bit text::

    ramsey v1 <edges|circulant|blocks>
    n=<n> r=<r> [targets=<k1,...,kr>]
    [m=<m> sym=<0|1>]            # blocks only
    <digit lines>

For ``edges`` there are n-1 digit lines, the line for vertex u listing the
colors of {u, v} for v = u+1..n-1. A ``circulant`` body is one line of
floor(n/2) digits, distance 1 first. A ``blocks`` body has one line per block
in row-major upper-triangular order. Lines starting with ``#`` after the
first line are ignored.
"""
from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence, TextIO

from .coloring import (BLOCKS, CIRCULANT, EDGES, ColoringVector, EdgeColoring, Shape,
                       block_order, block_width, edge_index, expand)
from .search import SearchResult

MAGIC = "ramsey v1"


class FormatError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class ColoringFile:
    coloring: EdgeColoring | ColoringVector
    targets: tuple[int, ...] | None = None

    @property
    def n(self) -> int:
        c = self.coloring
        return c.n if isinstance(c, EdgeColoring) else c.shape.n

    @property
    def r(self) -> int:
        return self.coloring.r

    def edges(self) -> EdgeColoring:
        c = self.coloring
        return c if isinstance(c, EdgeColoring) else expand(c)


def dumps(obj: EdgeColoring | ColoringVector, targets: Sequence[int] | None = None) -> str:
    if isinstance(obj, ColoringVector) and obj.shape.kind == EDGES:
        obj = expand(obj)
    if isinstance(obj, EdgeColoring):
        kind, n = EDGES, obj.n
    else:
        kind, n = obj.shape.kind, obj.shape.n
    header = f"n={n} r={obj.r}"
    if targets is not None:
        if len(targets) != obj.r:
            raise ValueError(f"{len(targets)} targets for a {obj.r}-coloring")
        header += " targets=" + ",".join(str(k) for k in targets)
    lines = [f"{MAGIC} {kind}", header]
    if kind == EDGES:
        cols = obj.colors
        for u in range(n - 1):
            lines.append("".join(str(cols[edge_index(u, v)]) for v in range(u + 1, n)))
    elif kind == CIRCULANT:
        lines.append("".join(map(str, obj.values)))
    else:
        shape = obj.shape
        lines.append(f"m={shape.m} sym={int(shape.sym)}")
        pos = 0
        for p, q in block_order(shape.m):
            w = block_width(shape, p, q)
            lines.append("".join(map(str, obj.values[pos:pos + w])))
            pos += w
    return "\n".join(lines) + "\n"


def _fields(text: str, lineno: int, required: Sequence[str], optional: Sequence[str] = ()) -> dict:
    out = {}
    for tok in text.split():
        key, sep, val = tok.partition("=")
        if not sep or key not in (*required, *optional):
            raise FormatError(f"unexpected field {tok!r}", lineno)
        if key in out:
            raise FormatError(f"duplicate field {key!r}", lineno)
        out[key] = val
    missing = [k for k in required if k not in out]
    if missing:
        raise FormatError(f"missing field {missing[0]!r}", lineno)
    return out


def _int(val: str, lineno: int, what: str) -> int:
    if not val.isdigit():
        raise FormatError(f"{what} must be a non-negative integer, got {val!r}", lineno)
    return int(val)


def _digits(text: str, lineno: int, width: int, r: int) -> list[int]:
    if len(text) != width:
        raise FormatError(f"expected {width} digits, got {len(text)}", lineno)
    out = []
    for ch in text:
        if not ch.isdigit() or not 1 <= int(ch) <= r:
            raise FormatError(f"color {ch!r} outside 1..{r}", lineno)
        out.append(int(ch))
    return out


def loads(text: str) -> ColoringFile:
    raw = text.split("\n")
    if raw and raw[-1] == "":
        raw.pop()
    if not raw:
        raise FormatError("empty file", 1)
    head = raw[0].split()
    if len(head) != 3 or " ".join(head[:2]) != MAGIC:
        raise FormatError(f"first line must be '{MAGIC} <kind>'", 1)
    kind = head[2]
    if kind not in (EDGES, CIRCULANT, BLOCKS):
        raise FormatError(f"unknown kind {kind!r}", 1)
    body = [(i, line.rstrip("\r")) for i, line in enumerate(raw[1:], 2)
            if not line.startswith("#")]
    if not body:
        raise FormatError("missing size line", len(raw) + 1)
    lineno, line = body.pop(0)
    f = _fields(line, lineno, ("n", "r"), ("targets",))
    n = _int(f["n"], lineno, "n")
    r = _int(f["r"], lineno, "r")
    if n < 2:
        raise FormatError("n must be at least 2", lineno)
    if not 2 <= r <= 9:
        raise FormatError("r must lie in 2..9", lineno)
    targets = None
    if "targets" in f:
        parts = f["targets"].split(",")
        targets = tuple(_int(x, lineno, "target") for x in parts)
        if len(targets) != r:
            raise FormatError(f"{len(targets)} targets for r={r}", lineno)

    def take(count: int):
        if len(body) < count:
            last = body[-1][0] if body else lineno
            raise FormatError(f"expected {count} more lines", last + 1)
        rows = body[:count]
        if len(body) > count:
            raise FormatError("unexpected extra line", body[count][0])
        return rows

    try:
        if kind == EDGES:
            colors = bytearray(n * (n - 1) // 2)
            for u, (ln, text_) in enumerate(take(n - 1)):
                for v, c in enumerate(_digits(text_, ln, n - 1 - u, r), u + 1):
                    colors[edge_index(u, v)] = c
            return ColoringFile(EdgeColoring(n, r, bytes(colors)), targets)
        if kind == CIRCULANT:
            (ln, text_), = take(1)
            vals = _digits(text_, ln, n // 2, r)
            return ColoringFile(ColoringVector(Shape.circulant(n), r, tuple(vals)), targets)
        if not body:
            raise FormatError("missing block line", lineno + 1)
        ln, text_ = body.pop(0)
        bf = _fields(text_, ln, ("m", "sym"))
        m = _int(bf["m"], ln, "m")
        if bf["sym"] not in ("0", "1"):
            raise FormatError("sym must be 0 or 1", ln)
        try:
            shape = Shape.blocks(n, m, bf["sym"] == "1")
        except ValueError as exc:
            raise FormatError(str(exc), ln) from None
        order = block_order(m)
        vals = []
        for (p, q), (ln2, text_) in zip(order, take(len(order))):
            vals.extend(_digits(text_, ln2, block_width(shape, p, q), r))
        return ColoringFile(ColoringVector(shape, r, tuple(vals)), targets)
    except FormatError:
        raise
    except ValueError as exc:
        raise FormatError(str(exc)) from None


def write_coloring(obj: EdgeColoring | ColoringVector, path, targets: Sequence[int] | None = None):
    Path(path).write_text(dumps(obj, targets), encoding="ascii")


def read_file(path) -> ColoringFile:
    try:
        text = Path(path).read_text(encoding="ascii")
    except UnicodeDecodeError as exc:
        raise FormatError(f"file is not 7-bit text ({exc.reason})") from None
    return loads(text)


def read_coloring(path) -> EdgeColoring | ColoringVector:
    return read_file(path).coloring


def _fmt(x: float) -> str:
    return f"{x:.9g}"


def trajectory_lines(result: SearchResult) -> list[str]:
    lines = []
    restarts = 0
    for st in result.trajectory:
        if st.event == "restart":
            restarts += 1
            lines.append(f"restart={restarts} iter={st.iteration}")
            continue
        if st.event == "escape":
            lines.append(f"escape iter={st.iteration}")
        T = "-" if st.T is None else _fmt(st.T)
        lines.append(
            f"iter={st.iteration} score={_fmt(st.score)} f={','.join(map(str, st.counts))} "
            f"T={T} w={','.join(_fmt(x) for x in st.weights)}")
    lines.append(f"result={'good' if result.good else 'exhausted'} seed={result.seed}")
    return lines


def log_trajectory(result: SearchResult, sink: TextIO):
    for line in trajectory_lines(result):
        sink.write(line + "\n")
