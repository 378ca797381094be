"""Label, one-hot and TF-IDF encodings of a tokenized corpus."""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from typing import Sequence, TextIO, Union

import numpy as np

from .corpus import Corpus, Vocabulary

PAD_ID = 0
UNK_ID = 1
_ID_OFFSET = 2

TokenRows = Union[Corpus, Sequence[Sequence[str]]]


@dataclass
class SparseMatrix:
    """Row-compressed matrix: ``rows[i]`` is a list of ``(col, value)`` pairs
    with strictly increasing columns and no stored zeros."""

    n_rows: int
    n_cols: int
    rows: list[list[tuple[int, float]]]

    def __post_init__(self):
        if len(self.rows) != self.n_rows:
            raise ValueError(f"expected {self.n_rows} rows, got {len(self.rows)}")
        for row in self.rows:
            prev = -1
            for col, value in row:
                if not prev < col < self.n_cols:
                    raise ValueError(f"bad column {col} in row {row}")
                if value == 0:
                    raise ValueError("stored zero")
                prev = col

    @classmethod
    def from_dense(cls, dense) -> SparseMatrix:
        arr = np.asarray(dense, dtype=float)
        if arr.ndim != 2:
            raise ValueError("expected a 2-D array")
        rows = [[(int(j), float(row[j])) for j in np.flatnonzero(row)] for row in arr]
        return cls(arr.shape[0], arr.shape[1], rows)

    def to_dense(self) -> np.ndarray:
        out = np.zeros((self.n_rows, self.n_cols))
        for i, row in enumerate(self.rows):
            for j, v in row:
                out[i, j] = v
        return out

    def take_rows(self, indices: Sequence[int]) -> SparseMatrix:
        return SparseMatrix(len(indices), self.n_cols, [self.rows[i] for i in indices])

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)


@dataclass
class LabelMatrix:
    n_rows: int
    seq_len: int
    ids: np.ndarray  # (n_rows, seq_len) int64

    def to_sparse(self) -> SparseMatrix:
        return SparseMatrix.from_dense(self.ids)


def _token_rows(corpus: TokenRows) -> list[list[str]]:
    if isinstance(corpus, Corpus):
        return corpus.token_lists
    return [list(r) for r in corpus]


def encode_onehot(corpus: TokenRows, vocab: Vocabulary) -> SparseMatrix:
    if not len(vocab):
        raise ValueError("empty vocabulary")
    rows = []
    for tokens in _token_rows(corpus):
        cols = sorted({vocab.index[t] for t in tokens if t in vocab.index})
        rows.append([(j, 1.0) for j in cols])
    return SparseMatrix(len(rows), len(vocab), rows)


def document_frequencies(docs: list[list[str]], vocab: Vocabulary) -> list[int]:
    df = [0] * len(vocab)
    for tokens in docs:
        for j in {vocab.index[t] for t in tokens if t in vocab.index}:
            df[j] += 1
    return df


def smoothed_idf(n_docs: int, df: Sequence[int]) -> list[float]:
    """``ln((1 + N) / (1 + df)) + 1`` per column."""
    return [math.log((1 + n_docs) / (1 + d)) + 1.0 for d in df]


def encode_tfidf(corpus: TokenRows, vocab: Vocabulary) -> SparseMatrix:
    """Raw term counts times smoothed idf, each non-empty row scaled to unit L2 norm."""
    docs = _token_rows(corpus)
    if not docs:
        raise ValueError("empty corpus")
    if not len(vocab):
        raise ValueError("empty vocabulary")
    idf = smoothed_idf(len(docs), document_frequencies(docs, vocab))

    rows = []
    for tokens in docs:
        tf = Counter(vocab.index[t] for t in tokens if t in vocab.index)
        weighted = [(j, tf[j] * idf[j]) for j in sorted(tf)]
        norm = math.sqrt(math.fsum(w * w for _, w in weighted))
        rows.append([(j, w / norm) for j, w in weighted] if weighted else [])
    return SparseMatrix(len(rows), len(vocab), rows)


def encode_label(corpus: TokenRows, vocab: Vocabulary, seq_len: int = 32) -> LabelMatrix:
    """Fixed-length id sequences: vocab position + 2, UNK=1, right-padded with PAD=0."""
    if seq_len < 1:
        raise ValueError(f"seq_len must be >= 1, got {seq_len}")
    docs = _token_rows(corpus)
    ids = np.full((len(docs), seq_len), PAD_ID, dtype=np.int64)
    for i, tokens in enumerate(docs):
        for k, t in enumerate(tokens[:seq_len]):
            pos = vocab.index.get(t)
            ids[i, k] = UNK_ID if pos is None else pos + _ID_OFFSET
    return LabelMatrix(len(docs), seq_len, ids)


def format_value(v: float) -> str:
    return f"{v:.9g}"


def write_svmlight(matrix: SparseMatrix, fh: TextIO, labels: Sequence[int] | None = None) -> None:
    """``<label> <col+1>:<value> ...`` per row; label 0 when none are given."""
    if labels is not None and len(labels) != matrix.n_rows:
        raise ValueError(f"{len(labels)} labels for {matrix.n_rows} rows")
    for i, row in enumerate(matrix.rows):
        label = labels[i] if labels is not None else 0
        parts = [str(label)] + [f"{j + 1}:{format_value(v)}" for j, v in row]
        fh.write(" ".join(parts) + "\n")


def read_svmlight(fh: TextIO, n_cols: int | None = None) -> tuple[SparseMatrix, list[int]]:
    labels = []
    rows = []
    width = 0
    for line in fh:
        parts = line.split()
        if not parts:
            continue
        labels.append(int(float(parts[0])))
        row = []
        for item in parts[1:]:
            col, val = item.split(":")
            row.append((int(col) - 1, float(val)))
            width = max(width, int(col))
        rows.append(row)
    return SparseMatrix(len(rows), n_cols if n_cols is not None else width, rows), labels


def write_label_rows(matrix: LabelMatrix, fh: TextIO) -> None:
    for row in matrix.ids:
        fh.write(" ".join(str(int(v)) for v in row) + "\n")
