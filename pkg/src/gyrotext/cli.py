"""Command-line interface.

Three subcommands:

    run           full (composition x classifier) experiment grid -> CSV/JSON
    check-kernel  PSD diagnostic for the geodesic kernel on sampled vectors
    compose       compose a single text into one ball point, printed as JSON

Exit codes: 0 on success; 1 when grid cells errored (run) or the PSD
check failed (check-kernel); 2 on bad arguments or input files.
"""

from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from .classify import LinearPrimalConfig, SmoConfig
from .composition import METHODS, compose
from .corpus import doc_to_points, load_corpus, load_embeddings, tokenize
from .harness import (
    ExperimentConfig,
    KnnSpec,
    SplitSpec,
    emit_table,
    run_experiment,
)
from .kernels import KernelSpec, gram_matrix, psd_check

KERNEL_NAMES = {
    "geodesic-laplacian": ("geodesic", 1.0),
    "geodesic-gaussian": ("geodesic", 2.0),
    "euclidean-rbf": ("euclidean_rbf", None),
    "linear": ("linear", None),
}


def _parse_pairs(text: str, flag: str) -> dict:
    pairs = {}
    for part in text.split(","):
        key, sep, value = part.partition("=")
        if not sep or not key:
            raise ValueError(f"{flag}: expected key=value items, got {part!r}")
        pairs[key] = value
    return pairs


def _parse_methods(text: str) -> tuple:
    methods = tuple(m.strip() for m in text.split(",") if m.strip())
    unknown = [m for m in methods if m not in METHODS]
    if unknown:
        raise ValueError(f"--methods: unknown {unknown}; choose from {','.join(METHODS)}")
    if not methods:
        raise ValueError("--methods: empty list")
    return methods


def _parse_knn(text: str) -> tuple:
    # the k list shares one key: k=3,5,7,9,11
    if not text.startswith("k="):
        raise ValueError(f"--knn: expected k=K1,K2,..., got {text!r}")
    try:
        ks = tuple(int(v) for v in text[2:].split(","))
    except ValueError:
        raise ValueError(f"--knn: k values must be integers, got {text!r}") from None
    return ks

def _parse_svm(text: str) -> SmoConfig:
    pairs = _parse_pairs(text, "--svm")
    name = pairs.pop("kernel", "geodesic-laplacian")
    if name not in KERNEL_NAMES:
        raise ValueError(f"--svm: unknown kernel {name!r}; choose from {','.join(KERNEL_NAMES)}")
    kind, q = KERNEL_NAMES[name]
    lam = float(pairs.pop("lambda", 1.0))
    q = float(pairs.pop("q", q if q is not None else 1.0))
    C = float(pairs.pop("C", 1.0))
    if pairs:
        raise ValueError(f"--svm: unknown keys {sorted(pairs)}")
    return SmoConfig(kernel=KernelSpec(kind=kind, lam=lam, q=q), C=C)


def _parse_linear_svm(text: str, seed: int) -> LinearPrimalConfig:
    pairs = _parse_pairs(text, "--linear-svm")
    C = float(pairs.pop("C", 1.0))
    epochs = int(pairs.pop("epochs", 100))
    lr = float(pairs.pop("lr", 0.05))
    if pairs:
        raise ValueError(f"--linear-svm: unknown keys {sorted(pairs)}")
    return LinearPrimalConfig(C=C, epochs=epochs, seed=seed, lr=lr)


def _parse_split(text: str, seed: int) -> SplitSpec:
    kind, sep, value = text.partition(":")
    if kind == "holdout":
        return SplitSpec(kind="holdout", ratio=float(value) if sep else 0.8, seed=seed)
    if kind == "kfold":
        if not sep:
            raise ValueError("--split: kfold needs a fold count, e.g. kfold:5")
        return SplitSpec(kind="kfold", folds=int(value), seed=seed)
    raise ValueError(f"--split: expected holdout:RATIO or kfold:K, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gyrotext", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run the experiment grid and write a results table")
    run.add_argument("--corpus", required=True, help="label-TAB-text corpus file")
    run.add_argument("--embeddings", required=True, help="word-vector text file")
    run.add_argument("--flavor", required=True, choices=["euclidean", "poincare"])
    run.add_argument("--methods", default=",".join(METHODS), help="comma list of composition methods")
    run.add_argument("--knn", default="k=3,5,7,9,11", help="k list, e.g. k=3,5,7,9,11; 'off' disables")
    run.add_argument("--knn-metric", choices=["poincare", "euclidean"], default=None,
                     help="k-NN metric (default: match the embedding flavor)")
    run.add_argument("--svm", default=None, help="e.g. kernel=geodesic-laplacian,lambda=1.0,C=1.0")
    run.add_argument("--linear-svm", default=None, help="e.g. C=1.0")
    run.add_argument("--split", default="holdout:0.8", help="holdout:RATIO or kfold:K")
    run.add_argument("--seed", type=int, default=42)
    run.add_argument("--out", default="results.csv")
    run.add_argument("--format", choices=["csv", "json"], default="csv")

    check = sub.add_parser("check-kernel", help="PSD diagnostic on a sampled Gram matrix")
    check.add_argument("--embeddings", required=True)
    check.add_argument("--n", type=int, default=30, help="number of sampled vectors")
    check.add_argument("--q", type=float, default=1.0, help="geodesic exponent (1 or 2)")
    check.add_argument("--lam", type=float, default=1.0, help="kernel rate lambda")
    check.add_argument("--seed", type=int, default=0)

    comp = sub.add_parser("compose", help="compose one text into a single point")
    comp.add_argument("--embeddings", required=True)
    comp.add_argument("--flavor", choices=["euclidean", "poincare"], default="poincare")
    comp.add_argument("--method", required=True, choices=list(METHODS))
    comp.add_argument("--text", required=True)
    return parser


def _cmd_run(args) -> int:
    metric = args.knn_metric or ("poincare" if args.flavor == "poincare" else "euclidean")
    knn = None if args.knn == "off" else KnnSpec(ks=_parse_knn(args.knn), metric=metric)
    config = ExperimentConfig(
        corpus_path=args.corpus,
        embeddings_path=args.embeddings,
        flavor=args.flavor,
        methods=_parse_methods(args.methods),
        knn=knn,
        svm=_parse_svm(args.svm) if args.svm else None,
        linear_svm=_parse_linear_svm(args.linear_svm, args.seed) if args.linear_svm else None,
        split=_parse_split(args.split, args.seed),
    )
    results = run_experiment(config)
    emit_table(results, args.format, args.out)
    print(f"{len(results.rows)} rows -> {args.out}")
    if results.errors:
        print(f"{len(results.errors)} cells failed:", file=sys.stderr)
        for row in results.errors:
            print(f"  {row.composition}/{row.classifier}[{row.params}]: {row.error}", file=sys.stderr)
        return 1
    return 0


def _cmd_check_kernel(args) -> int:
    table, _ = load_embeddings(args.embeddings, "poincare")
    tokens = sorted(table.vectors)
    if args.n < 2 or args.n > len(tokens):
        raise ValueError(f"--n must lie in [2, {len(tokens)}], got {args.n}")
    rng = np.random.default_rng(args.seed)
    chosen = rng.choice(len(tokens), size=args.n, replace=False)
    points = np.stack([table.vectors[tokens[i]] for i in chosen])
    report = psd_check(gram_matrix(points, KernelSpec(kind="geodesic", lam=args.lam, q=args.q)))
    verdict = "pass" if report.passed else "FAIL"
    print(
        f"n={args.n} q={args.q:g} lambda={args.lam:g} "
        f"min_eigenvalue={report.min_eigenvalue:.6e} psd={verdict}"
    )
    return 0 if report.passed else 1


def _cmd_compose(args) -> int:
    table, _ = load_embeddings(args.embeddings, args.flavor)
    tokens = tokenize(args.text)
    doc = doc_to_points(tokens, table)
    if doc.empty:
        point = np.zeros(table.dimension)
    else:
        point = compose(args.method, doc.points)
    json.dump(
        {
            "method": args.method,
            "tokens": len(tokens),
            "oov": doc.oov,
            "point": point.tolist(),
        },
        sys.stdout,
    )
    sys.stdout.write("\n")
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _cmd_run(args)
        if args.command == "check-kernel":
            return _cmd_check_kernel(args)
        return _cmd_compose(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
