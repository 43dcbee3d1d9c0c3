"""Command-line interface.

Exit codes: 0 good coloring produced or verified, 1 search budget exhausted
(best attempt still written), 2 verification found a bad coloring, 64 usage
or input error.
"""
from __future__ import annotations

import argparse
import random
import secrets
import sys

from .cliques import MalformedColoring, count_all, verify
from .coloring import (BLOCKS, CIRCULANT, EDGES, ColoringVector, EdgeColoring, Shape,
                       as_free, delete_vertices, expand)
from .constructors import (as_block_vector, cubic, extend_layer, frozen_prefix,
                           greedy_delete_vertices, paley, split)
from .formats import FormatError, log_trajectory, read_file, write_coloring
from .search import SearchConfig, anneal_search, random_vector, tabu_search

EXIT_GOOD, EXIT_EXHAUSTED, EXIT_BAD, EXIT_USAGE = 0, 1, 2, 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _int_list(text: str) -> tuple[int, ...]:
    try:
        out = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")
    if any(k < 2 for k in out):
        raise argparse.ArgumentTypeError("clique bounds must be at least 2")
    return out


def _seed(text: str) -> int:
    s = int(text)
    if not 0 <= s < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must fit in 64 bits")
    return s


def parse_shape(spec: str, n: int) -> Shape:
    """``circulant``, ``edges`` or ``blocks:<m>[:sym]``."""
    parts = spec.split(":")
    try:
        if parts == [CIRCULANT]:
            return Shape.circulant(n)
        if parts == [EDGES]:
            return Shape.edges(n)
        if parts[0] == BLOCKS and len(parts) in (2, 3):
            if len(parts) == 3 and parts[2] != "sym":
                raise UsageError(f"bad shape {spec!r}")
            return Shape.blocks(n, int(parts[1]), len(parts) == 3)
    except ValueError as exc:
        raise UsageError(f"bad shape {spec!r}: {exc}")
    raise UsageError(f"bad shape {spec!r}; use circulant, edges or blocks:<m>[:sym]")


def _add_search_options(p):
    p.add_argument("--L", type=int, default=1000, help="tabu list length")
    p.add_argument("--K", type=float, default=50.0, help="weight smoothing constant")
    p.add_argument("--exponent", type=float, default=1.5, help="initial weight ratio exponent")
    p.add_argument("--perturb", type=float, default=0.0, help="relative random weight noise")
    p.add_argument("--weight-rule", choices=("normalized", "literal"), default="normalized")
    p.add_argument("--T0", type=float, default=None, help="initial temperature (default: calibrated)")
    p.add_argument("--alpha", type=float, default=0.999, help="geometric cooling factor")
    p.add_argument("--T-min", type=float, default=1e-3, dest="T_min")
    p.add_argument("--jmax", type=int, default=None, help="inner annealing iterations")
    p.add_argument("--max-iters", type=int, default=200_000)
    p.add_argument("--max-restarts", type=int, default=100)
    p.add_argument("--rng-seed", type=_seed, default=None)
    p.add_argument("--log", default=None, help="write the trajectory here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="ramsey-search", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("seed", help="write a seed coloring")
    p.add_argument("kind", choices=("paley", "cubic", "random"))
    p.add_argument("--p", type=int, help="prime order for residue colorings")
    p.add_argument("--shape", default=EDGES)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int, default=2)
    p.add_argument("--rng-seed", type=_seed, default=None)
    p.add_argument("--vector", action="store_true", help="write residue colorings as circulant vectors")
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("search", help="run tabu search or annealing")
    p.add_argument("method", choices=("tabu", "anneal"))
    p.add_argument("--targets", type=_int_list, required=True)
    p.add_argument("--shape", default=None)
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--init", default=None, help="initial coloring file")
    p.add_argument("--frozen-from", default=None,
                   help="freeze every component lying on the first n vertices of this file's coloring")
    _add_search_options(p)
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("split", help="split one color class into two")
    p.add_argument("--input", required=True)
    p.add_argument("--color", type=int, required=True)
    p.add_argument("--into", type=_int_list, required=True)
    p.add_argument("--targets", type=_int_list, default=None)
    p.add_argument("--stage3-max-bad", type=int, default=50)
    _add_search_options(p)
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("extend", help="append a layer of circulant blocks")
    p.add_argument("--input", required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--sym", action="store_true")
    p.add_argument("--rng-seed", type=_seed, default=None)
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("delete", help="delete vertices")
    p.add_argument("--input", required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--greedy", action="store_true",
                   help="remove the vertices in most bad subgraphs instead of the last ones")
    p.add_argument("--targets", type=_int_list, default=None)
    p.add_argument("-o", "--output", required=True)

    for name, text in (("verify", "check a coloring from scratch"), ("count", "print bad subgraph counts")):
        p = sub.add_parser(name, help=text)
        p.add_argument("--input", required=True)
        p.add_argument("--targets", type=_int_list, default=None)
    return ap


def _targets(args, f, r: int) -> tuple[int, ...]:
    t = args.targets or f.targets
    if t is None:
        raise UsageError("no --targets given and the file header has none")
    if len(t) != r:
        raise UsageError(f"{len(t)} targets given for a {r}-coloring")
    return tuple(t)


def _rng_seed(args, out) -> int:
    if args.rng_seed is not None:
        return args.rng_seed
    s = secrets.randbits(63)
    print(f"rng-seed={s}", file=out)
    return s


def _config(args, seed: int, frozen=frozenset()) -> SearchConfig:
    try:
        return SearchConfig(L=args.L, K=args.K, exponent=args.exponent, perturb_amp=args.perturb,
                            T0=args.T0, alpha=args.alpha, T_min=args.T_min, j_max=args.jmax,
                            max_iters=args.max_iters, max_restarts=args.max_restarts,
                            frozen=frozenset(frozen), seed=seed, weight_rule=args.weight_rule)
    except ValueError as exc:
        raise UsageError(str(exc))


def _as_shape(obj, shape: Shape) -> ColoringVector:
    """Convert a loaded coloring to a vector of the requested shape."""
    if isinstance(obj, ColoringVector) and obj.shape == shape:
        return obj
    col = obj if isinstance(obj, EdgeColoring) else expand(obj)
    if col.n != shape.n:
        raise UsageError(f"initial coloring has n={col.n}, shape wants n={shape.n}")
    if shape.kind == EDGES:
        return as_free(col)
    d = shape.n if shape.kind == CIRCULANT else shape.d
    v = as_block_vector(col, d, shape.sym)
    if v is None or v.shape != shape:
        raise UsageError(f"initial coloring is not of shape {shape}")
    return v


def _emit_log(result, args, out):
    if args.log:
        with open(args.log, "w", encoding="ascii") as fh:
            log_trajectory(result, fh)
    else:
        log_trajectory(result, out)


def cmd_seed(args, out) -> int:
    if args.kind in ("paley", "cubic"):
        if args.p is None:
            raise UsageError("--p is required for residue colorings")
        try:
            col = paley(args.p) if args.kind == "paley" else cubic(args.p)
        except ValueError as exc:
            raise UsageError(str(exc))
        write_coloring(as_block_vector(col, col.n) if args.vector else col, args.output)
        print(f"wrote {args.kind}({args.p}) to {args.output}", file=out)
        return EXIT_GOOD
    if args.n is None:
        raise UsageError("--n is required for random seeds")
    shape = parse_shape(args.shape, args.n)
    if not 2 <= args.r <= 9:
        raise UsageError("--r must lie in 2..9")
    seed = _rng_seed(args, out)
    v = random_vector(shape, args.r, random.Random(seed))
    write_coloring(v, args.output)
    print(f"wrote random {shape} coloring to {args.output}", file=out)
    return EXIT_GOOD


def cmd_search(args, out) -> int:
    init = None
    if args.init:
        f = read_file(args.init)
        n = args.n or f.n
        shape = parse_shape(args.shape, n) if args.shape else (
            f.coloring.shape if isinstance(f.coloring, ColoringVector) else Shape.edges(n))
        init = _as_shape(f.coloring, shape)
    else:
        if args.shape is None or args.n is None:
            raise UsageError("--shape and --n are required without --init")
        shape = parse_shape(args.shape, args.n)
    r = len(args.targets)
    if init is not None and init.r != r:
        raise UsageError(f"initial coloring has r={init.r} but {r} targets were given")
    frozen = frozenset()
    if args.frozen_from:
        old = read_file(args.frozen_from)
        frozen = frozen_prefix(shape, old.n)
    seed = _rng_seed(args, out)
    cfg = _config(args, seed, frozen)
    if args.method == "tabu":
        result = tabu_search(shape, r, args.targets, cfg, initial=init)
    else:
        if init is None:
            init = random_vector(shape, r, random.Random(seed ^ 0xA5A5A5A5))
        result = anneal_search(init, args.targets, cfg)
    write_coloring(result.vector, args.output, args.targets)
    _emit_log(result, args, out)
    return EXIT_GOOD if result.good else EXIT_EXHAUSTED


def cmd_split(args, out) -> int:
    f = read_file(args.input)
    col = f.edges()
    targets = _targets(args, f, col.r)
    if col.r + 1 > 9:
        raise UsageError("splitting would exceed 9 colors")
    seed = _rng_seed(args, out)
    cfg = _config(args, seed)
    try:
        result = split(col, args.color, args.into, targets, cfg, stage3_max_bad=args.stage3_max_bad)
    except ValueError as exc:
        raise UsageError(str(exc))
    write_coloring(result.vector, args.output, result.targets)
    print(f"split stage={result.stage} f={','.join(map(str, result.counts))}", file=out)
    _emit_log(result, args, out)
    return EXIT_GOOD if result.good else EXIT_EXHAUSTED


def cmd_extend(args, out) -> int:
    f = read_file(args.input)
    seed = _rng_seed(args, out)
    try:
        v, frozen = extend_layer(f.edges(), args.d, random.Random(seed), args.sym)
    except ValueError as exc:
        raise UsageError(str(exc))
    write_coloring(v, args.output, f.targets)
    print(f"extended to {v.shape}; {len(frozen)} of {len(v.values)} components cover the old "
          f"coloring (freeze them with --frozen-from {args.input})", file=out)
    return EXIT_GOOD


def cmd_delete(args, out) -> int:
    f = read_file(args.input)
    col = f.edges()
    if not 0 <= args.count < col.n - 1:
        raise UsageError("must keep at least two vertices")
    if args.greedy:
        targets = _targets(args, f, col.r)
        col, removed = greedy_delete_vertices(col, targets, args.count)
    else:
        removed = list(range(col.n - args.count, col.n))
        col = delete_vertices(col, removed)
    write_coloring(col, args.output, args.targets or f.targets)
    print(f"removed vertices {','.join(map(str, removed)) or '-'}; n={col.n}", file=out)
    return EXIT_GOOD


def cmd_verify(args, out) -> int:
    f = read_file(args.input)
    targets = _targets(args, f, f.r)
    try:
        verdict = verify(f.edges(), targets)
    except MalformedColoring as exc:
        raise UsageError(str(exc))
    print(f"n={f.n} targets={','.join(map(str, targets))} f={','.join(map(str, verdict.counts))}", file=out)
    if verdict.good:
        print("good", file=out)
        return EXIT_GOOD
    print(f"bad: color {verdict.witness_color} clique {' '.join(map(str, verdict.witness))}", file=out)
    return EXIT_BAD


def cmd_count(args, out) -> int:
    f = read_file(args.input)
    targets = _targets(args, f, f.r)
    counts = count_all(f.edges(), targets)
    print("color  k  count", file=out)
    for c, (k, fc) in enumerate(zip(targets, counts), 1):
        print(f"{c:>5} {k:>2}  {fc}", file=out)
    return EXIT_GOOD


COMMANDS = {"seed": cmd_seed, "search": cmd_search, "split": cmd_split, "extend": cmd_extend,
            "delete": cmd_delete, "verify": cmd_verify, "count": cmd_count}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except (UsageError, FormatError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
