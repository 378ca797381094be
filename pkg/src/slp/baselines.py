"""Generic text tokenizers used as comparison points for the shell lexer."""

import re

# \w in Python's unicode mode covers ASCII letters/digits/underscore plus
# non-ASCII alphanumerics
_WORDPUNCT_RE = re.compile(r"\w+|[^\w\s]+")


def whitespace_tokenize(raw: str) -> list[str]:
    return raw.split()


def wordpunct_tokenize(raw: str) -> list[str]:
    """Alternate runs of word characters and runs of punctuation.

    >>> wordpunct_tokenize("java -Xms256m")
    ['java', '-', 'Xms256m']
    """
    return _WORDPUNCT_RE.findall(raw)
