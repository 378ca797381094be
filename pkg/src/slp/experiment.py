"""Benign-vs-malicious classification experiment comparing tokenizers."""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Sequence, TextIO

from .corpus import TOKENIZERS, build_corpus, read_lines, top_k_vocabulary
from .encoders import SparseMatrix, encode_label, encode_onehot, encode_tfidf
from .model import GbdtParams, Metrics, compute_metrics, cross_validate, fit, predict_proba

ENCODINGS = ("tfidf", "onehot", "label")


@dataclass(frozen=True)
class ExperimentConfig:
    tokenizer: str = "slp"
    encoding: str = "tfidf"
    top_tokens: int = 100
    seq_len: int = 32
    folds: int = 10
    normalize: bool = True
    tlds: tuple[str, ...] | None = None  # None: built-in allow-list

    def __post_init__(self):
        if self.tokenizer not in TOKENIZERS:
            raise ValueError(f"unknown tokenizer {self.tokenizer!r}")
        if self.encoding not in ENCODINGS:
            raise ValueError(f"unknown encoding {self.encoding!r}")
        for name in ("top_tokens", "seq_len"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.folds < 2:
            raise ValueError("folds must be >= 2")


@dataclass(frozen=True)
class ExperimentResult:
    tokenizer: str
    encoding: str
    train: Metrics
    cv: Metrics


def fixture_path(name: str) -> Path:
    """Path of a bundled corpus: ``benign.txt`` or ``malicious.txt``."""
    return Path(str(resources.files("slp") / "data" / name))


def encode(commands: Sequence[str], labels: Sequence[int], config: ExperimentConfig) -> SparseMatrix:
    corpus, counter = build_corpus(
        commands, use_normalization=config.normalize, labels=labels,
        tokenizer=config.tokenizer, tlds=config.tlds,
    )
    vocab = top_k_vocabulary(counter, config.top_tokens)
    if config.encoding == "tfidf":
        return encode_tfidf(corpus, vocab)
    if config.encoding == "onehot":
        return encode_onehot(corpus, vocab)
    return encode_label(corpus, vocab, config.seq_len).to_sparse()


def run_experiment(
    benign: Sequence[str],
    malicious: Sequence[str],
    config: ExperimentConfig,
    params: GbdtParams | None = None,
) -> ExperimentResult:
    """Fit on everything and score the training rows, then run k-fold CV."""
    if not benign or not malicious:
        raise ValueError("both benign and malicious commands are required")
    commands = list(benign) + list(malicious)
    labels = [0] * len(benign) + [1] * len(malicious)
    X = encode(commands, labels, config)

    model = fit(X, labels, params)
    train = compute_metrics(labels, predict_proba(model, X))
    cv, _ = cross_validate(X, labels, params, folds=config.folds)
    return ExperimentResult(config.tokenizer, config.encoding, train, cv)


def load_commands(path: str | Path) -> list[str]:
    return [ln for ln in read_lines(path) if ln.strip()]


RESULT_HEADER = ("tokenizer", "encoding", "evaluation", "auc", "f1", "precision", "recall")


def _fmt(v: float | None) -> str:
    return "nan" if v is None else f"{v:.6f}"


def write_results(results: Sequence[ExperimentResult], fh: TextIO) -> None:
    """Tab-separated table, one line per (tokenizer, evaluation mode)."""
    fh.write("\t".join(RESULT_HEADER) + "\n")
    for r in results:
        for mode, m in (("train", r.train), ("cv", r.cv)):
            cells = [r.tokenizer, r.encoding, mode, *(_fmt(v) for v in m.as_row())]
            fh.write("\t".join(cells) + "\n")
