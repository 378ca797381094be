"""Shell-aware lexer for single command lines.

Works at the lexical level only: quotes are removed, operators are split off,
flags stay whole, and command substitutions (``$(...)`` and backticks) are
tokenized recursively with explicit open/close marker tokens.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field


class TokenKind(enum.Enum):
    WORD = "Word"
    FLAG = "Flag"
    ASSIGNMENT = "Assignment"
    OPERATOR = "Operator"
    SUBST_OPEN = "SubstitutionOpen"
    SUBST_CLOSE = "SubstitutionClose"


class LexWarning(str, enum.Enum):
    UNBALANCED_QUOTE = "UnbalancedQuote"
    UNBALANCED_SUBSTITUTION = "UnbalancedSubstitution"


class LexError(ValueError):
    """Raised by ``tokenize(..., strict=True)`` when the lexer had to guess."""

    def __init__(self, warnings: list[LexWarning], raw: str):
        self.warnings = warnings
        self.raw = raw
        names = ", ".join(w.value for w in warnings)
        super().__init__(f"{names} in {raw!r}")


@dataclass(frozen=True)
class Token:
    value: str
    kind: TokenKind

    def __post_init__(self):
        if not self.value:
            raise ValueError("empty token")


@dataclass
class TokenizedCommand:
    raw: str
    tokens: list[Token]
    warnings: list[LexWarning] = field(default_factory=list)

    @property
    def values(self) -> list[str]:
        return [t.value for t in self.tokens]

    @property
    def ok(self) -> bool:
        return not self.warnings


OPERATORS = ("|", "||", "&&", ";", "&", "<", ">", ">>", "2>", "2>>", "2>&1", "<<")
# longest first so that greedy matching picks `2>&1` over `2>`
_OPS_LONGEST_FIRST = sorted(OPERATORS, key=len, reverse=True)
_FD_OPS = tuple(op for op in _OPS_LONGEST_FIRST if op.startswith("2"))
_PLAIN_OPS = tuple(op for op in _OPS_LONGEST_FIRST if not op.startswith("2"))
_OPERATOR_CHARS = frozenset("|&;<>")

_ASSIGNMENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*=")
# characters a backslash protects inside double quotes
_DQ_ESCAPABLE = frozenset('$`"\\\n')


class _WordBuilder:
    """Accumulates one shell word, splitting it wherever a substitution occurs."""

    def __init__(self, out: list[Token]):
        self.out = out
        self.buf: list[str] = []
        self.started = False  # any character (even an empty quote) seen
        self.lead_quoted = False
        self.unquoted_prefix: list[str] = []
        self.prefix_open = True  # still collecting the unquoted leading run

    def add(self, ch: str, quoted: bool) -> None:
        if not self.started:
            self.started = True
            self.lead_quoted = quoted
        if self.prefix_open:
            if quoted:
                self.prefix_open = False
            else:
                self.unquoted_prefix.append(ch)
        self.buf.append(ch)

    def mark_quote(self) -> None:
        # an opening quote ends the unquoted lead even if the span is empty
        if not self.started:
            self.started = True
            self.lead_quoted = True
        self.prefix_open = False

    def flush(self) -> None:
        if self.buf:
            value = "".join(self.buf)
            self.out.append(Token(value, self._kind(value)))
        self.buf = []
        self.started = False
        self.lead_quoted = False
        self.unquoted_prefix = []
        self.prefix_open = True

    def _kind(self, value: str) -> TokenKind:
        if not self.lead_quoted and value[0] in "-+":
            return TokenKind.FLAG
        m = _ASSIGNMENT_RE.match("".join(self.unquoted_prefix))
        if m:
            return TokenKind.ASSIGNMENT
        return TokenKind.WORD


class _Lexer:
    def __init__(self, text: str):
        self.s = text
        self.n = len(text)
        self.warnings: list[LexWarning] = []

    def warn(self, w: LexWarning) -> None:
        if w not in self.warnings:
            self.warnings.append(w)

    def _match_op(self, i: int, at_word_start: bool) -> str | None:
        if at_word_start and self.s.startswith("2", i):
            for op in _FD_OPS:
                if self.s.startswith(op, i):
                    return op
        if self.s[i] in _OPERATOR_CHARS:
            for op in _PLAIN_OPS:
                if self.s.startswith(op, i):
                    return op
        return None

    def lex(self, i: int, out: list[Token], close: str | None) -> tuple[int, bool]:
        """Lex from ``i`` until end of input or an unquoted ``close`` char.

        Returns the index just past the terminator and whether it was found.
        """
        s, n = self.s, self.n
        word = _WordBuilder(out)
        depth = 0  # bare parentheses opened inside this level
        while i < n:
            ch = s[i]
            if (ch == ")" and close == ")" and depth == 0) or (ch == "`" and close == "`"):
                word.flush()
                return i + 1, True
            if ch in " \t\n\r\f\v":
                word.flush()
                i += 1
                continue
            if ch == "(":
                word.flush()
                depth += 1
                i += 1
                continue
            if ch == ")":
                word.flush()
                depth = max(depth - 1, 0)
                i += 1
                continue
            op = self._match_op(i, not word.started)
            if op is not None:
                word.flush()
                out.append(Token(op, TokenKind.OPERATOR))
                i += len(op)
                continue
            if ch == "\\":
                if i + 1 < n:
                    word.add(s[i + 1], quoted=False)
                    i += 2
                else:
                    word.add(ch, quoted=False)
                    i += 1
                continue
            if ch == "'":
                word.mark_quote()
                end = s.find("'", i + 1)
                if end < 0:
                    self.warn(LexWarning.UNBALANCED_QUOTE)
                    end = n
                for c in s[i + 1 : end]:
                    word.add(c, quoted=True)
                i = end + 1
                continue
            if ch == '"':
                word.mark_quote()
                i = self._double_quoted(i + 1, word, out)
                continue
            if ch == "$" and s.startswith("$(", i):
                i = self._substitution(i + 2, "$(", word, out)
                continue
            if ch == "`":
                i = self._substitution(i + 1, "`", word, out)
                continue
            if ch == "$" and s.startswith("${", i):
                end = s.find("}", i + 2)
                end = n - 1 if end < 0 else end
                for c in s[i : end + 1]:
                    word.add(c, quoted=False)
                i = end + 1
                continue
            word.add(ch, quoted=False)
            i += 1
        word.flush()
        if close is not None:
            self.warn(LexWarning.UNBALANCED_SUBSTITUTION)
        return n, False

    def _double_quoted(self, i: int, word: _WordBuilder, out: list[Token]) -> int:
        s, n = self.s, self.n
        while i < n:
            ch = s[i]
            if ch == '"':
                return i + 1
            if ch == "\\" and i + 1 < n and s[i + 1] in _DQ_ESCAPABLE:
                word.add(s[i + 1], quoted=True)
                i += 2
                continue
            if ch == "$" and s.startswith("$(", i):
                i = self._substitution(i + 2, "$(", word, out)
                continue
            if ch == "`":
                i = self._substitution(i + 1, "`", word, out)
                continue
            word.add(ch, quoted=True)
            i += 1
        self.warn(LexWarning.UNBALANCED_QUOTE)
        return n

    def _substitution(self, i: int, opener: str, word: _WordBuilder, out: list[Token]) -> int:
        word.flush()
        out.append(Token(opener, TokenKind.SUBST_OPEN))
        closer = ")" if opener == "$(" else "`"
        end, closed = self.lex(i, out, closer)
        if closed:
            out.append(Token(closer, TokenKind.SUBST_CLOSE))
        return end


def tokenize(raw: str, strict: bool = False) -> TokenizedCommand:
    """Split a shell command line into typed tokens.

    Malformed input (unclosed quotes or substitutions) is lexed on a best-effort
    basis and flagged in ``warnings``; pass ``strict=True`` to raise instead.

    >>> tokenize("java -Xms256m -jar remoting.jar").values
    ['java', '-Xms256m', '-jar', 'remoting.jar']
    """
    text = raw.replace("\\\n", "")
    lexer = _Lexer(text)
    tokens: list[Token] = []
    lexer.lex(0, tokens, None)
    result = TokenizedCommand(raw=raw, tokens=tokens, warnings=lexer.warnings)
    if strict and result.warnings:
        raise LexError(result.warnings, raw)
    return result
