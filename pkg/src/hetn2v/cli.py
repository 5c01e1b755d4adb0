"""Command line: ``hetn2v walk | embed | stats | rerun``.

Exit status is 0 on success, 1 on runtime or I/O failure and 2 on bad usage.
Every ``walk`` and ``embed`` run writes ``<out>.manifest.tsv`` next to its
output; ``hetn2v rerun <manifest>`` repeats the run.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from importlib.metadata import PackageNotFoundError, version

from . import bias, io
from .embedding import SgnsConfig, train
from .stats import walk_stats
from .walks import WalkConfig, generate_walks

MANIFEST_SUFFIX = ".manifest.tsv"


def _version() -> str:
    try:
        return version("hetn2v")
    except PackageNotFoundError:
        return "unknown"


class UsageError(Exception):
    pass


def _graph_args(ap, required=True):
    ap.add_argument("--edges", required=required, help="src<TAB>dst<TAB>edge_type[<TAB>weight]")
    ap.add_argument("--node-types", help="node<TAB>node_type")


def _walk_args(ap):
    ap.add_argument("--p", type=float, default=1.0, help="return parameter")
    ap.add_argument("--q", type=float, default=1.0, help="in-out parameter")
    ap.add_argument("--s", type=float, help="node switching value for every type pair")
    ap.add_argument("--s-matrix", help="from_type<TAB>to_type<TAB>s rows")
    ap.add_argument("--special-node-types", help="comma-separated node types")
    ap.add_argument("--s-to", type=float, help="switching value for entering special node types")
    ap.add_argument("--s-from", type=float, help="switching value for leaving special node types")
    ap.add_argument("--e", type=float, help="edge switching value for every type pair")
    ap.add_argument("--e-matrix", help="from_type<TAB>to_type<TAB>e rows")
    ap.add_argument("--special-edge-types", help="comma-separated edge types")
    ap.add_argument("--e-to", type=float, help="switching value for entering special edge types")
    ap.add_argument("--e-from", type=float, help="switching value for leaving special edge types")
    ap.add_argument("--walk-length", type=int, default=80)
    ap.add_argument("--num-walks", type=int, default=10)
    ap.add_argument("--threads", type=int, default=1)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hetn2v", description="Type-aware node2vec walks and embeddings.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {_version()}")
    sub = ap.add_subparsers(dest="command", required=True)

    w = sub.add_parser("walk", help="generate a walk corpus")
    _graph_args(w)
    _walk_args(w)
    w.add_argument("--seed", type=int, default=0)
    w.add_argument("--out", required=True)

    e = sub.add_parser("embed", help="train embeddings from a corpus, or walk and train in one go")
    _graph_args(e, required=False)
    e.add_argument("--walks", help="corpus from `hetn2v walk`; omit to walk the graph first")
    _walk_args(e)
    e.add_argument("--dims", type=int, default=64)
    e.add_argument("--window", type=int, default=5)
    e.add_argument("--negatives", type=int, default=5)
    e.add_argument("--epochs", type=int, default=5)
    e.add_argument("--lr", type=float, default=0.025)
    e.add_argument("--min-lr", type=float, default=0.0001)
    e.add_argument("--fixed-window", action="store_true")
    e.add_argument("--sgns-threads", type=int, default=1,
                   help="more than one trains without locks and is not reproducible")
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--out", required=True)

    s = sub.add_parser("stats", help="type visit and switching statistics of a corpus")
    s.add_argument("--walks", required=True)
    _graph_args(s)
    s.add_argument("--format", choices=("text", "tsv"), default="text")
    s.add_argument("--out", help="write here instead of stdout")

    r = sub.add_parser("rerun", help="repeat the run recorded in a manifest")
    r.add_argument("manifest")
    return ap


def _switch_model(args, kind: str, type_names: list[str]):
    value, matrix, special, to, frm = (
        getattr(args, kind),
        getattr(args, f"{kind}_matrix"),
        getattr(args, f"special_{'node' if kind == 's' else 'edge'}_types"),
        getattr(args, f"{kind}_to"),
        getattr(args, f"{kind}_from"),
    )
    if special is not None:
        return bias.special_set([t for t in special.split(",") if t], type_names, to, frm)
    if matrix is not None:
        return bias.load_switch_matrix(matrix, type_names)
    return bias.Uniform(1.0 if value is None else value)


def _check_switch_flags(args, kind: str):
    flag = f"--{kind}"
    special_flag = f"--special-{'node' if kind == 's' else 'edge'}-types"
    value, matrix, special = (getattr(args, kind), getattr(args, f"{kind}_matrix"),
                              getattr(args, f"special_{'node' if kind == 's' else 'edge'}_types"))
    to, frm = getattr(args, f"{kind}_to"), getattr(args, f"{kind}_from")
    given = [f for f, v in ((flag, value), (f"{flag}-matrix", matrix), (special_flag, special))
             if v is not None]
    if len(given) > 1:
        raise UsageError(f"{' and '.join(given)} are mutually exclusive")
    if special is not None and (to is None or frm is None):
        raise UsageError(f"{special_flag} needs both {flag}-to and {flag}-from")
    if special is None and (to is not None or frm is not None):
        raise UsageError(f"{flag}-to/{flag}-from only apply with {special_flag}")
    for name, v in ((flag, value), (f"{flag}-to", to), (f"{flag}-from", frm)):
        if v is not None and not v > 0:
            raise UsageError(f"{name} must be positive")


def _check_walk_flags(args):
    for kind in ("s", "e"):
        _check_switch_flags(args, kind)
    if not (args.p > 0 and args.q > 0):
        raise UsageError("--p and --q must be positive")
    for name in ("walk_length", "num_walks", "threads"):
        if getattr(args, name) < 1:
            raise UsageError(f"--{name.replace('_', '-')} must be >= 1")


def _load(args):
    return io.load_graph(args.edges, args.node_types)


def _params(args, g):
    return bias.BiasParams(
        args.p, args.q,
        _switch_model(args, "s", g.node_type_names),
        _switch_model(args, "e", g.edge_type_names),
    )


def _describe(model) -> str:
    if isinstance(model, bias.PairwiseDirected):
        return "pairwise:" + json.dumps(model.matrix.tolist())
    if isinstance(model, bias.SpecialSet):
        return f"special:{sorted(model.special)}:{model.to_special!r}:{model.from_special!r}"
    return f"uniform:{model.value!r}"


def _write_manifest(path, argv, entries, inputs):
    rows = [("tool", "hetn2v"), ("version", _version()), ("argv", json.dumps(argv)),
            ("cwd", os.getcwd())]
    rows += [(k, str(v)) for k, v in entries]
    rows += [(f"sha256.{p}", io.file_digest(p)) for p in inputs if p]
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.writelines(f"{k}\t{v}\n" for k, v in rows)


def read_manifest(path) -> dict[str, str]:
    out = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            k, _, v = line.rstrip("\n").partition("\t")
            out[k] = v
    return out


def _walk_entries(args, params, cfg):
    return [
        ("p", params.p), ("q", params.q),
        ("node_switch", _describe(params.node_switch)),
        ("edge_switch", _describe(params.edge_switch)),
        ("walk_length", cfg.walk_length), ("num_walks", cfg.walks_per_node),
        ("seed", cfg.seed), ("threads", cfg.threads),
    ]


def cmd_walk(args, argv):
    _check_walk_flags(args)
    g = _load(args)
    params = _params(args, g)
    cfg = WalkConfig(args.walk_length, args.num_walks, args.seed, args.threads)
    corpus = generate_walks(g, params, cfg)
    io.write_walks(corpus, args.out)
    _write_manifest(args.out + MANIFEST_SUFFIX, argv, _walk_entries(args, params, cfg),
                    [args.edges, args.node_types])


def cmd_embed(args, argv):
    if args.dims < 1 or args.window < 1 or args.negatives < 1 or args.epochs < 0:
        raise UsageError("--dims, --window and --negatives must be >= 1, --epochs >= 0")
    if not 0 <= args.min_lr <= args.lr or not args.lr > 0:
        raise UsageError("need 0 <= --min-lr <= --lr and --lr > 0")
    if args.sgns_threads < 1:
        raise UsageError("--sgns-threads must be >= 1")
    entries, inputs = [], [args.edges, args.node_types]
    if args.walks is None:
        if args.edges is None:
            raise UsageError("give --walks, or --edges to walk first")
        _check_walk_flags(args)
        g = _load(args)
        params = _params(args, g)
        cfg = WalkConfig(args.walk_length, args.num_walks, args.seed, args.threads)
        corpus = generate_walks(g, params, cfg)
        entries += _walk_entries(args, params, cfg)
    else:
        g = _load(args) if args.edges else None
        corpus = io.read_walks(args.walks, g)
        inputs.append(args.walks)
    scfg = SgnsConfig(
        dims=args.dims, window=args.window, negatives=args.negatives, epochs=args.epochs,
        initial_lr=args.lr, min_lr=args.min_lr, seed=args.seed,
        dynamic_window=not args.fixed_window, threads=args.sgns_threads,
    )
    emb = train(corpus, scfg)
    io.write_embeddings(emb.vectors, emb.names, args.out)
    entries += [(f"sgns.{k}", v) for k, v in vars(scfg).items()]
    entries += [(f"epoch_loss.{i}", repr(x)) for i, x in enumerate(emb.epoch_loss)]
    _write_manifest(args.out + MANIFEST_SUFFIX, argv, entries, inputs)


def cmd_stats(args, argv):
    g = _load(args)
    corpus = io.read_walks(args.walks, g)
    report = walk_stats(corpus, g)
    text = report.to_tsv() if args.format == "tsv" else report.to_text()
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_rerun(args, argv):
    manifest = read_manifest(args.manifest)
    recorded = json.loads(manifest["argv"])
    here = os.getcwd()
    os.chdir(manifest.get("cwd", here))
    try:
        return main(recorded)
    finally:
        os.chdir(here)


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    handler = {"walk": cmd_walk, "embed": cmd_embed, "stats": cmd_stats, "rerun": cmd_rerun}[args.command]
    try:
        rc = handler(args, argv)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"hetn2v: error: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError, KeyError) as exc:
        print(f"hetn2v: {exc}", file=sys.stderr)
        return 1
    return rc or 0


if __name__ == "__main__":
    sys.exit(main())
