"""Corpus construction, token counting and top-K vocabulary selection."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence, TextIO

from .baselines import whitespace_tokenize, wordpunct_tokenize
from .lexer import Token, TokenizedCommand, TokenKind, tokenize
from .normalize import normalize

TokenCounter = Counter  # token value -> occurrence count


def _plain(fn: Callable[[str], list[str]]) -> Callable[[str], TokenizedCommand]:
    def run(raw: str) -> TokenizedCommand:
        return TokenizedCommand(raw, [Token(v, TokenKind.WORD) for v in fn(raw)])

    run.__name__ = fn.__name__
    return run


TOKENIZERS: dict[str, Callable[[str], TokenizedCommand]] = {
    "slp": tokenize,
    "wordpunct": _plain(wordpunct_tokenize),
    "whitespace": _plain(whitespace_tokenize),
}


@dataclass
class Corpus:
    commands: list[TokenizedCommand]
    labels: list[int] | None = None
    # indices of rows whose tokenization carried lexer warnings
    warning_rows: list[int] = field(default_factory=list)

    def __post_init__(self):
        if self.labels is not None and len(self.labels) != len(self.commands):
            raise ValueError(
                f"{len(self.labels)} labels for {len(self.commands)} commands"
            )

    def __len__(self) -> int:
        return len(self.commands)

    @property
    def token_lists(self) -> list[list[str]]:
        return [cmd.values for cmd in self.commands]


def build_corpus(
    raw_commands: Sequence[str],
    use_normalization: bool = True,
    labels: Sequence[int] | None = None,
    tokenizer: str = "slp",
    tlds: Iterable[str] | None = None,
) -> tuple[Corpus, TokenCounter]:
    """Tokenize every command and count token occurrences across the batch.

    Lexer warnings never abort the batch; the affected rows are listed in
    ``Corpus.warning_rows``.
    """
    if not raw_commands:
        raise ValueError("raw_commands is empty")
    try:
        tok = TOKENIZERS[tokenizer]
    except KeyError:
        raise ValueError(f"unknown tokenizer {tokenizer!r}") from None

    commands = []
    warning_rows = []
    counter: TokenCounter = Counter()
    for i, raw in enumerate(raw_commands):
        cmd = tok(normalize(raw, tlds) if use_normalization else raw)
        if cmd.warnings:
            warning_rows.append(i)
        counter.update(cmd.values)
        commands.append(cmd)
    corpus = Corpus(commands, list(labels) if labels is not None else None, warning_rows)
    return corpus, counter


@dataclass(frozen=True)
class Vocabulary:
    entries: tuple[str, ...]
    index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        index = {tok: i for i, tok in enumerate(self.entries)}
        if len(index) != len(self.entries):
            raise ValueError("duplicate vocabulary entries")
        object.__setattr__(self, "index", index)

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, token: str) -> bool:
        return token in self.index


def _rank_key(item: tuple[str, int]):
    token, count = item
    return (-count, token.encode("utf-8"))


def ranked_tokens(counter: TokenCounter) -> list[tuple[str, int]]:
    """All (token, count) pairs, count descending then token bytes ascending."""
    return sorted(counter.items(), key=_rank_key)


def top_k_vocabulary(counter: TokenCounter, k: int) -> Vocabulary:
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    return Vocabulary(tuple(tok for tok, _ in ranked_tokens(counter)[:k]))


def write_counter(counter: TokenCounter, fh: TextIO) -> None:
    for token, count in ranked_tokens(counter):
        fh.write(f"{token}\t{count}\n")


def write_vocabulary(vocab: Vocabulary, path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for token in vocab.entries:
            fh.write(token + "\n")


def read_vocabulary(path: str | Path) -> Vocabulary:
    with open(path, encoding="utf-8", newline="\n") as fh:
        return Vocabulary(tuple(line.rstrip("\n") for line in fh))


def read_lines(path: str | Path) -> list[str]:
    """One command per line; the trailing newline of each line is dropped."""
    with open(path, encoding="utf-8", newline="\n") as fh:
        return [line.rstrip("\n").rstrip("\r") for line in fh]
