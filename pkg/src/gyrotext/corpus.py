"""Embedding tables, tokenization, and document-to-point-sequence mapping.

File formats (both UTF-8 text, one record per line):

    embeddings   token SP num_1 SP ... SP num_d     (standard word-vector text)
    corpus       label TAB text

The embedding dimension is inferred from the first parseable line.
Malformed lines are skipped and counted; more than 1% of them aborts the
load. Poincare-flavor vectors are clamped inside the unit ball at load
time; Euclidean-flavor vectors are stored as-is.
"""

from __future__ import annotations

import logging
import unicodedata
from dataclasses import dataclass
from itertools import groupby
from typing import NamedTuple

import numpy as np

from .composition import CompositionConfig, DEFAULT_COMPOSITION, compose
from .gyroball import clamp_to_ball

__all__ = [
    "EmbeddingTable",
    "LoadReport",
    "CorpusLoadReport",
    "LabeledCorpus",
    "TokenizerConfig",
    "DEFAULT_TOKENIZER",
    "DocPoints",
    "CorpusDiagnostics",
    "FLAVORS",
    "load_embeddings",
    "tokenize",
    "load_corpus",
    "doc_to_points",
    "represent_corpus",
]

logger = logging.getLogger(__name__)

FLAVORS = ("euclidean", "poincare")

# fraction of bad lines tolerated before a loader gives up on the file
SKIP_THRESHOLD = 0.01


@dataclass(frozen=True)
class EmbeddingTable:
    """Token -> vector map of uniform dimension, tagged by geometry flavor."""

    dimension: int
    vectors: dict
    flavor: str

    def __contains__(self, token: str) -> bool:
        return token in self.vectors

    def __len__(self) -> int:
        return len(self.vectors)


class LoadReport(NamedTuple):
    total: int
    parsed: int
    skipped: int
    clamped: int


def load_embeddings(path, flavor: str):
    """Read a word-vector text file into an EmbeddingTable.

    Returns (table, report). Skipped lines are those that fail to parse
    as token + d finite numbers (d fixed by the first parseable line) or
    that repeat an already-seen token; more than 1% skipped aborts. For
    the poincare flavor, vectors with norm >= 1 are pulled just inside
    the unit ball and counted in the report.
    """
    if flavor not in FLAVORS:
        raise ValueError(f"unknown flavor {flavor!r}; expected one of {FLAVORS}")
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    vectors = {}
    dimension = None
    skipped = 0
    clamped = 0
    for line in lines:
        parts = line.split()
        if len(parts) < 2:
            skipped += 1
            continue
        token = parts[0]
        try:
            vec = np.array([float(p) for p in parts[1:]])
        except ValueError:
            skipped += 1
            continue
        if dimension is None:
            dimension = vec.shape[0]
        if vec.shape[0] != dimension or not np.all(np.isfinite(vec)) or token in vectors:
            skipped += 1
            continue
        if flavor == "poincare" and float(np.linalg.norm(vec)) >= 1.0:
            vec = clamp_to_ball(vec)
            clamped += 1
        vectors[token] = vec
    total = len(lines)
    if dimension is None:
        raise ValueError(f"{path}: no parseable embedding lines")
    if skipped > SKIP_THRESHOLD * total:
        raise ValueError(f"{path}: {skipped} of {total} lines malformed (> 1%)")
    if clamped:
        logger.warning("%s: %d vectors clamped inside the unit ball", path, clamped)
    table = EmbeddingTable(dimension=dimension, vectors=vectors, flavor=flavor)
    return table, LoadReport(total=total, parsed=total - skipped, skipped=skipped, clamped=clamped)


@dataclass(frozen=True)
class TokenizerConfig:
    """Maximal runs of letter (L*) or decimal-digit (Nd) characters."""

    lowercase: bool = True


DEFAULT_TOKENIZER = TokenizerConfig()


def _is_token_char(ch: str) -> bool:
    cat = unicodedata.category(ch)
    return cat.startswith("L") or cat == "Nd"


def tokenize(text: str, cfg: TokenizerConfig = DEFAULT_TOKENIZER):
    """Split text into maximal letter-or-digit runs, then lowercase.

    Runs are taken on the raw text and lowercased afterwards, so case
    mappings that change character category (e.g. dotted capital I
    lowercasing to "i" plus a combining dot) cannot split a token.
    """
    tokens = []
    for is_word, run in groupby(text, key=_is_token_char):
        if is_word:
            tok = "".join(run)
            tokens.append(tok.lower() if cfg.lowercase else tok)
    return tokens


@dataclass(frozen=True)
class LabeledCorpus:
    """Ordered (label, text) records plus the set of labels seen."""

    records: tuple
    label_set: frozenset

    def __len__(self) -> int:
        return len(self.records)


class CorpusLoadReport(NamedTuple):
    total: int
    parsed: int
    rejected: int


def load_corpus(path):
    """Read a label-TAB-text file; returns (corpus, report).

    Lines without a TAB are rejected and counted; more than 1% rejected
    aborts. Duplicate texts are permitted.
    """
    with open(path, encoding="utf-8") as fh:
        lines = fh.read().splitlines()
    records = []
    rejected = 0
    for line in lines:
        label, sep, text = line.partition("\t")
        if not sep:
            rejected += 1
            continue
        records.append((label, text))
    total = len(lines)
    if rejected > SKIP_THRESHOLD * total:
        raise ValueError(f"{path}: {rejected} of {total} lines lack a TAB (> 1%)")
    if not records:
        raise ValueError(f"{path}: no records")
    corpus = LabeledCorpus(
        records=tuple(records),
        label_set=frozenset(label for label, _ in records),
    )
    return corpus, CorpusLoadReport(total=total, parsed=total - rejected, rejected=rejected)


class DocPoints(NamedTuple):
    points: np.ndarray
    oov: int

    @property
    def empty(self) -> bool:
        return self.points.shape[0] == 0


def doc_to_points(tokens, table: EmbeddingTable) -> DocPoints:
    """Map tokens to their embedding points in order, skipping OOV tokens.

    Every in-vocabulary token contributes one point with implicit weight 1.
    Returns the (m, d) point array and the out-of-vocabulary count; m = 0
    flags an empty or all-OOV document.
    """
    rows = [table.vectors[t] for t in tokens if t in table.vectors]
    oov = len(tokens) - len(rows)
    if rows:
        points = np.stack(rows)
    else:
        points = np.empty((0, table.dimension))
    return DocPoints(points=points, oov=oov)


@dataclass(frozen=True)
class CorpusDiagnostics:
    n_docs: int
    empty_doc_indices: tuple
    total_tokens: int
    oov_tokens: int
    oov_rate: float


def represent_corpus(
    corpus: LabeledCorpus,
    table: EmbeddingTable,
    method: str,
    cfg: CompositionConfig = DEFAULT_COMPOSITION,
    tokenizer: TokenizerConfig = DEFAULT_TOKENIZER,
):
    """Compose every document into one point; returns (matrix, labels, diagnostics).

    Documents with no in-vocabulary tokens are represented by the origin
    and listed in the diagnostics rather than dropped, so the output row
    count always equals the corpus record count.
    """
    if len(corpus) == 0:
        raise ValueError("corpus is empty")
    reps = np.empty((len(corpus), table.dimension))
    labels = []
    empty_docs = []
    total_tokens = 0
    oov_tokens = 0
    for i, (label, text) in enumerate(corpus.records):
        tokens = tokenize(text, tokenizer)
        doc = doc_to_points(tokens, table)
        total_tokens += len(tokens)
        oov_tokens += doc.oov
        if doc.empty:
            empty_docs.append(i)
            reps[i] = np.zeros(table.dimension)
        else:
            reps[i] = compose(method, doc.points, cfg=cfg)
        labels.append(label)
    if empty_docs:
        logger.warning(
            "%d of %d documents had no in-vocabulary tokens; represented by the origin",
            len(empty_docs),
            len(corpus),
        )
    diagnostics = CorpusDiagnostics(
        n_docs=len(corpus),
        empty_doc_indices=tuple(empty_docs),
        total_tokens=total_tokens,
        oov_tokens=oov_tokens,
        oov_rate=oov_tokens / total_tokens if total_tokens else 0.0,
    )
    return reps, labels, diagnostics
