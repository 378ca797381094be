"""Shell command tokenization and encoding for machine-learning pipelines."""

from .baselines import whitespace_tokenize, wordpunct_tokenize
from .corpus import Corpus, Vocabulary, build_corpus, top_k_vocabulary
from .encoders import LabelMatrix, SparseMatrix, encode_label, encode_onehot, encode_tfidf
from .lexer import Token, TokenizedCommand, TokenKind, tokenize
from .normalize import normalize

__version__ = "0.1.0"

__all__ = [
    "Corpus",
    "LabelMatrix",
    "SparseMatrix",
    "Token",
    "TokenKind",
    "TokenizedCommand",
    "Vocabulary",
    "build_corpus",
    "encode_label",
    "encode_onehot",
    "encode_tfidf",
    "normalize",
    "tokenize",
    "top_k_vocabulary",
    "whitespace_tokenize",
    "wordpunct_tokenize",
]
