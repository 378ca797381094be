import io
import math
import random

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import naive_label, naive_onehot, naive_tfidf
from slp.corpus import Vocabulary, build_corpus, top_k_vocabulary
from slp.encoders import (
    SparseMatrix,
    encode_label,
    encode_onehot,
    encode_tfidf,
    read_svmlight,
    write_svmlight,
)


def V(*tokens):
    return Vocabulary(tuple(tokens))


@pytest.mark.parametrize(
    "docs, vocab, expected",
    [
        ([["ls", "-la"]], V("ls", "-la", "cat"), [[(0, 1.0), (1, 1.0)]]),
        ([["zzz"]], V("ls"), [[]]),
        ([["ls", "ls", "ls"]], V("ls"), [[(0, 1.0)]]),
    ],
)
def test_onehot_examples(docs, vocab, expected):
    m = encode_onehot(docs, vocab)
    assert m.rows == expected
    assert m.n_cols == len(vocab)


def test_tfidf_example():
    # frozen from the naive oracle: idf(a) = 1, idf(b) = ln(3/2) + 1
    m = encode_tfidf([["a", "b"], ["a"]], V("a", "b"))
    idf_b = math.log(1.5) + 1
    assert idf_b == pytest.approx(1.405465, abs=1e-6)
    (c0, v0), (c1, v1) = m.rows[0]
    assert (c0, c1) == (0, 1)
    assert v0 == pytest.approx(0.579739, abs=1e-6)
    assert v1 == pytest.approx(0.814802, abs=1e-6)
    assert m.rows[1] == [(0, 1.0)]


def test_tfidf_trivial():
    assert encode_tfidf([["a"]], V("a")).rows == [[(0, 1.0)]]
    assert encode_tfidf([["z"]], V("a")).rows == [[]]


@pytest.mark.parametrize(
    "docs, vocab, L, expected",
    [
        ([["ls", "-la"]], V("ls", "-la"), 4, [[2, 3, 0, 0]]),
        ([["zzz"]], V("ls"), 2, [[1, 0]]),
        ([["a", "b", "c"]], V("a", "b", "c"), 2, [[2, 3]]),
    ],
)
def test_label_examples(docs, vocab, L, expected):
    m = encode_label(docs, vocab, L)
    assert m.ids.tolist() == expected
    assert m.seq_len == L


def test_preconditions():
    with pytest.raises(ValueError):
        encode_onehot([["a"]], V())
    with pytest.raises(ValueError):
        encode_tfidf([], V("a"))
    with pytest.raises(ValueError):
        encode_label([["a"]], V("a"), 0)


def test_sparse_matrix_validation():
    with pytest.raises(ValueError):
        SparseMatrix(1, 3, [[(1, 1.0), (0, 1.0)]])
    with pytest.raises(ValueError):
        SparseMatrix(1, 3, [[(0, 0.0)]])
    with pytest.raises(ValueError):
        SparseMatrix(1, 3, [[(3, 1.0)]])
    m = SparseMatrix.from_dense([[0, 2.5], [1, 0]])
    assert m.rows == [[(1, 2.5)], [(0, 1.0)]]
    assert m.to_dense().tolist() == [[0, 2.5], [1, 0]]


def test_svmlight_format_and_round_trip():
    m = encode_tfidf([["a", "b"], ["a"]], V("a", "b"))
    fh = io.StringIO()
    write_svmlight(m, fh, [1, 0])
    assert fh.getvalue() == "1 1:0.579738672 2:0.814802475\n0 1:1\n"  # mpmath, 30 digits
    back, labels = read_svmlight(io.StringIO(fh.getvalue()), n_cols=2)
    assert labels == [1, 0]
    np.testing.assert_allclose(back.to_dense(), m.to_dense(), rtol=1e-8)
    fh = io.StringIO()
    write_svmlight(m, fh)
    assert fh.getvalue().startswith("0 ")


def random_corpus(rnd):
    alphabet = [f"t{i}" for i in range(rnd.randint(1, 6))]
    docs = [[rnd.choice(alphabet) for _ in range(rnd.randint(0, 5))]
            for _ in range(rnd.randint(1, 5))]
    vocab = alphabet[:]
    rnd.shuffle(vocab)
    vocab = vocab[: rnd.randint(1, len(vocab))]
    return docs, V(*vocab)


@pytest.mark.parametrize("seed", range(50))
def test_against_naive_oracle(seed):
    rnd = random.Random(seed)
    docs, vocab = random_corpus(rnd)
    assert encode_onehot(docs, vocab).to_dense().tolist() == naive_onehot(docs, vocab.entries)
    np.testing.assert_allclose(
        encode_tfidf(docs, vocab).to_dense(), naive_tfidf(docs, vocab.entries), rtol=0, atol=1e-9
    )
    L = rnd.randint(1, 6)
    assert encode_label(docs, vocab, L).ids.tolist() == naive_label(docs, vocab.entries, L)


_docs = st.lists(st.lists(st.sampled_from("abcdef"), max_size=6), min_size=1, max_size=6)


@given(_docs)
def test_row_invariants(docs):
    vocab = V(*"abcd")
    tfidf = encode_tfidf(docs, vocab)
    onehot = encode_onehot(docs, vocab)
    for doc, trow, orow in zip(docs, tfidf.rows, onehot.rows):
        norm = math.sqrt(sum(v * v for _, v in trow))
        assert norm == 0 or abs(norm - 1) <= 1e-9
        assert len(orow) == len({t for t in doc if t in vocab})
        # same column semantics across encoders
        assert [c for c, _ in trow] == [c for c, _ in orow]
    ids = encode_label(docs, vocab, 8).ids
    for doc, row in zip(docs, ids):
        for tok, i in zip(doc, row):
            assert i == (vocab.index[tok] + 2 if tok in vocab else 1)
        # padding only as a suffix
        n = min(len(doc), 8)
        assert (row[n:] == 0).all() and (row[:n] != 0).all()


@given(_docs, st.lists(st.sampled_from("abcdef"), min_size=1, max_size=4))
def test_adding_a_document_never_raises_idf(docs, extra):
    from slp.encoders import document_frequencies, smoothed_idf

    vocab = V(*"abcdef")
    before = smoothed_idf(len(docs), document_frequencies(docs, vocab))
    after_docs = docs + [extra]
    after = smoothed_idf(len(after_docs), document_frequencies(after_docs, vocab))
    for t in set(extra):
        j = vocab.index[t]
        assert after[j] <= before[j] + 1e-15


def test_encoders_accept_corpus_objects():
    corpus, counter = build_corpus(["ls -la", "ls /tmp"])
    vocab = top_k_vocabulary(counter, 2)
    assert encode_onehot(corpus, vocab).rows == [[(0, 1.0), (1, 1.0)], [(0, 1.0)]]
