"""Command-line entry point: ``slp tokenize|encode|experiment``."""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from contextlib import contextmanager
from typing import Sequence

from .corpus import (
    TOKENIZERS,
    build_corpus,
    read_lines,
    top_k_vocabulary,
    write_counter,
    write_vocabulary,
)
from .encoders import encode_label, encode_onehot, encode_tfidf, write_label_rows, write_svmlight
from .experiment import (
    ENCODINGS,
    ExperimentConfig,
    fixture_path,
    load_commands,
    run_experiment,
    write_results,
)
from .model import DegenerateLabelsError, GbdtParams, TooFewSamplesError
from .normalize import load_tld_list, normalize


class CliError(Exception):
    pass


@contextmanager
def _output(path: str | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            yield fh


def _tlds(args) -> tuple[str, ...] | None:
    return load_tld_list(args.tld_file) if args.tld_file else None


def cmd_tokenize(args) -> int:
    tokenizer = TOKENIZERS[args.tokenizer]
    tlds = _tlds(args)
    counter: Counter = Counter()
    for lineno, line in enumerate(read_lines(args.input), 1):
        cmd = tokenizer(normalize(line, tlds) if args.normalize else line)
        for w in cmd.warnings:
            print(f"{args.input}:{lineno}: warning: {w.value}", file=sys.stderr)
        counter.update(cmd.values)
        sys.stdout.write(json.dumps(cmd.values, ensure_ascii=False, separators=(",", ":")) + "\n")
    if args.counter:
        with _output(args.counter) as fh:
            write_counter(counter, fh)
    return 0


def cmd_encode(args) -> int:
    lines = read_lines(args.input)
    if not lines:
        raise CliError(f"{args.input}: no commands")
    labels = None
    if args.labels:
        labels = [int(v) for v in read_lines(args.labels) if v.strip()]
        if len(labels) != len(lines):
            raise CliError(
                f"label length mismatch: {len(labels)} labels for {len(lines)} commands"
            )
        if any(v not in (0, 1) for v in labels):
            raise CliError("labels must be 0 or 1")
    corpus, counter = build_corpus(
        lines,
        use_normalization=args.normalize,
        labels=labels,
        tokenizer=args.tokenizer,
        tlds=_tlds(args),
    )
    for i in corpus.warning_rows:
        warns = ", ".join(w.value for w in corpus.commands[i].warnings)
        print(f"{args.input}:{i + 1}: warning: {warns}", file=sys.stderr)
    vocab = top_k_vocabulary(counter, args.top_tokens)
    if args.vocab:
        write_vocabulary(vocab, args.vocab)

    with _output(args.out) as fh:
        if args.encoding == "label":
            write_label_rows(encode_label(corpus, vocab, args.seq_len), fh)
        elif args.encoding == "onehot":
            write_svmlight(encode_onehot(corpus, vocab), fh, labels)
        else:
            write_svmlight(encode_tfidf(corpus, vocab), fh, labels)
    return 0


def cmd_experiment(args) -> int:
    benign = load_commands(args.benign)
    malicious = load_commands(args.malicious)
    if not benign or not malicious:
        empty = args.benign if not benign else args.malicious
        raise CliError(f"{empty}: no commands; both classes are required")
    params = GbdtParams(
        n_rounds=args.rounds,
        max_depth=args.depth,
        learning_rate=args.learning_rate,
        l2_lambda=args.l2_lambda,
    )
    tokenizers = list(TOKENIZERS) if args.all_tokenizers else [args.tokenizer]
    results = []
    for name in tokenizers:
        config = ExperimentConfig(
            tokenizer=name,
            encoding=args.encoding,
            top_tokens=args.top_tokens,
            seq_len=args.seq_len,
            folds=args.folds,
            normalize=args.normalize,
            tlds=_tlds(args),
        )
        print(f"running {name}/{args.encoding} ...", file=sys.stderr)
        results.append(run_experiment(benign, malicious, config, params))
    write_results(results, sys.stdout)
    return 0


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _folds(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError(f"cross-validation needs at least 2 folds, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="slp", description="Shell command tokenization, encoding and evaluation."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--tokenizer", choices=list(TOKENIZERS), default="slp")
        p.add_argument("--no-normalize", dest="normalize", action="store_false",
                       help="skip IP/domain placeholder substitution")
        p.add_argument("--tld-file", help="TLD allow-list for domain normalization, one per line")

    p = sub.add_parser("tokenize", help="print one JSON token array per input line")
    p.add_argument("--input", required=True)
    p.add_argument("--counter", help="write a token<TAB>count dump here")
    common(p)
    p.set_defaults(func=cmd_tokenize)

    p = sub.add_parser("encode", help="encode commands into svmlight rows (or label id rows)")
    p.add_argument("--input", required=True)
    p.add_argument("--labels", help="one 0/1 label per line")
    p.add_argument("--encoding", choices=ENCODINGS, required=True)
    p.add_argument("--top-tokens", type=_positive_int, default=100)
    p.add_argument("--seq-len", type=_positive_int, default=32)
    p.add_argument("--out")
    p.add_argument("--vocab", help="write the vocabulary here, one token per line")
    common(p)
    p.set_defaults(func=cmd_encode)

    p = sub.add_parser("experiment", help="benign vs malicious classification report")
    p.add_argument("--benign", default=str(fixture_path("benign.txt")),
                   help="benign commands (default: bundled fixture)")
    p.add_argument("--malicious", default=str(fixture_path("malicious.txt")),
                   help="malicious commands (default: bundled fixture)")
    p.add_argument("--all-tokenizers", action="store_true",
                   help="compare slp, wordpunct and whitespace with identical settings")
    p.add_argument("--encoding", choices=ENCODINGS, default="tfidf")
    p.add_argument("--top-tokens", type=_positive_int, default=100)
    p.add_argument("--seq-len", type=_positive_int, default=32)
    p.add_argument("--folds", type=_folds, default=10)
    p.add_argument("--rounds", type=_positive_int, default=100)
    p.add_argument("--depth", type=_positive_int, default=3)
    p.add_argument("--learning-rate", type=float, default=0.3)
    p.add_argument("--l2-lambda", type=float, default=1.0)
    common(p)
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CliError, DegenerateLabelsError, TooFewSamplesError, ValueError) as e:
        print(f"slp: error: {e}", file=sys.stderr)
        return 1
    except OSError as e:
        print(f"slp: error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
