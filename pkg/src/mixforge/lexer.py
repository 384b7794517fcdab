"""Lossless flat tokenizer for LaTeX source.

Every byte of the input lands in exactly one token, so concatenating token
texts reproduces the source; this is what makes token-level accounting,
perturbation targeting, chunking, and metrics all agree on one token unit.

Lexing rules:
  - ``\\begin{name}`` / ``\\end{name}`` become EnvBegin / EnvEnd (name kept).
  - ``\\word`` consumes letters greedily; ``\\X`` takes one non-letter.
  - ``$`` and ``$$`` are MathShift (``$$`` is a single token).
  - ``%`` up to (excluding) the newline is Comment.
  - Whitespace runs collapse into single Whitespace tokens.
  - Runs of two or more non-CJK letters are Word; any other single
    letter/digit (including CJK ideographs and kana, which have no word
    boundaries) is Char; everything else is a one-character Other token.

Token counts exclude Whitespace and Comment tokens: those carry no
recognition-target content.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Iterator

from .errors import InvalidUtf8Error


class TokenKind(Enum):
    COMMAND = "Command"
    WORD = "Word"
    CHAR = "Char"
    BRACE_OPEN = "BraceOpen"
    BRACE_CLOSE = "BraceClose"
    MATH_SHIFT = "MathShift"
    ENV_BEGIN = "EnvBegin"
    ENV_END = "EnvEnd"
    WHITESPACE = "Whitespace"
    COMMENT = "Comment"
    OTHER = "Other"


@dataclass(frozen=True)
class Token:
    kind: TokenKind
    text: str

    @property
    def env_name(self) -> str | None:
        """Environment name for EnvBegin/EnvEnd tokens, else None."""
        if self.kind in (TokenKind.ENV_BEGIN, TokenKind.ENV_END):
            return self.text[self.text.index("{") + 1 : -1]
        return None

    @property
    def countable(self) -> bool:
        return self.kind not in (TokenKind.WHITESPACE, TokenKind.COMMENT)


@dataclass
class TokenStream:
    tokens: list[Token]
    source_len: int  # UTF-8 byte count of the original source

    def __iter__(self) -> Iterator[Token]:
        return iter(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def validate(self) -> None:
        """Assert the stream invariants (byte accounting, whitespace runs)."""
        total = sum(len(t.text.encode("utf-8")) for t in self.tokens)
        if total != self.source_len:
            raise AssertionError(
                f"token bytes {total} != source_len {self.source_len}"
            )
        for a, b in zip(self.tokens, self.tokens[1:]):
            if a.kind == TokenKind.WHITESPACE and b.kind == TokenKind.WHITESPACE:
                raise AssertionError("adjacent whitespace tokens")
        for t in self.tokens:
            if not t.text:
                raise AssertionError("empty token text")


# CJK ideographs, kana, hangul, and compatibility/extension planes are kept
# out of Word runs: those scripts have no whitespace word boundaries, so each
# character is its own countable token.
_CJK = "⺀-鿿぀-ヿ가-힯豈-﫿\U00020000-\U0002ffff"

_TOKEN_RE = re.compile(
    r"""
      (?P<envbegin>\\begin\{[A-Za-z]+\*?\})
    | (?P<envend>\\end\{[A-Za-z]+\*?\})
    | (?P<command>\\(?:[A-Za-z]+|[^A-Za-z]))
    | (?P<mathshift>\$\$?)
    | (?P<comment>%[^\n]*)
    | (?P<whitespace>\s+)
    | (?P<braceopen>\{)
    | (?P<braceclose>\})
    | (?P<word>[^\W\d_""" + _CJK + r"""]{2,})
    | (?P<char>[^\W_])
    | (?P<other>.)
    """,
    re.VERBOSE | re.DOTALL,
)

_GROUP_KIND = {
    "envbegin": TokenKind.ENV_BEGIN,
    "envend": TokenKind.ENV_END,
    "command": TokenKind.COMMAND,
    "mathshift": TokenKind.MATH_SHIFT,
    "comment": TokenKind.COMMENT,
    "whitespace": TokenKind.WHITESPACE,
    "braceopen": TokenKind.BRACE_OPEN,
    "braceclose": TokenKind.BRACE_CLOSE,
    "word": TokenKind.WORD,
    "char": TokenKind.CHAR,
    "other": TokenKind.OTHER,
}


def _decode(source: str | bytes) -> str:
    if isinstance(source, bytes):
        try:
            return source.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise InvalidUtf8Error(str(exc)) from exc
    return source


def _byte_len(text: str) -> int:
    try:
        return len(text.encode("utf-8"))
    except UnicodeEncodeError as exc:  # lone surrogates
        raise InvalidUtf8Error(str(exc)) from exc


def iter_tokens(source: str | bytes) -> Iterator[Token]:
    """Yield tokens without materializing a TokenStream."""
    text = _decode(source)
    for m in _TOKEN_RE.finditer(text):
        yield Token(_GROUP_KIND[m.lastgroup], m.group())


def tokenize(source: str | bytes) -> TokenStream:
    text = _decode(source)
    return TokenStream(tokens=list(iter_tokens(text)), source_len=_byte_len(text))


def detokenize(stream: TokenStream | Iterable[Token]) -> str:
    tokens = stream.tokens if isinstance(stream, TokenStream) else stream
    return "".join(t.text for t in tokens)


def count_tokens(source: str | bytes) -> int:
    """Number of non-whitespace, non-comment tokens in the source."""
    text = _decode(source)
    n = 0
    for m in _TOKEN_RE.finditer(text):
        if m.lastgroup not in ("whitespace", "comment"):
            n += 1
    return n


def countable_texts(source: str | bytes) -> list[str]:
    """Texts of the countable tokens, in order (the metric token sequence)."""
    return [t.text for t in iter_tokens(source) if t.countable]


@dataclass
class BalanceReport:
    """Structural balance of a source string, judged on the flat token level."""

    brace_final_depth: int = 0
    brace_min_depth: int = 0
    left_count: int = 0
    right_count: int = 0
    single_math_shifts: int = 0
    double_math_shifts: int = 0
    env_errors: list[str] = field(default_factory=list)

    @property
    def balanced(self) -> bool:
        return (
            self.brace_final_depth == 0
            and self.brace_min_depth >= 0
            and self.left_count == self.right_count
            and self.single_math_shifts % 2 == 0
            and self.double_math_shifts % 2 == 0
            and not self.env_errors
        )


def scan_balance(source: str | bytes | TokenStream) -> BalanceReport:
    """Check brace depth, \\left/\\right pairing, math-shift parity, and
    environment begin/end matching. The oracle for generated output."""
    tokens: Iterable[Token]
    if isinstance(source, TokenStream):
        tokens = source.tokens
    else:
        tokens = iter_tokens(source)

    report = BalanceReport()
    depth = 0
    env_stack: list[str] = []
    for t in tokens:
        if t.kind == TokenKind.BRACE_OPEN:
            depth += 1
        elif t.kind == TokenKind.BRACE_CLOSE:
            depth -= 1
            report.brace_min_depth = min(report.brace_min_depth, depth)
        elif t.kind == TokenKind.COMMAND:
            if t.text == "\\left":
                report.left_count += 1
            elif t.text == "\\right":
                report.right_count += 1
        elif t.kind == TokenKind.MATH_SHIFT:
            if t.text == "$":
                report.single_math_shifts += 1
            else:
                report.double_math_shifts += 1
        elif t.kind == TokenKind.ENV_BEGIN:
            env_stack.append(t.env_name or "")
        elif t.kind == TokenKind.ENV_END:
            name = t.env_name or ""
            if not env_stack:
                report.env_errors.append(f"\\end{{{name}}} without begin")
            elif env_stack[-1] != name:
                report.env_errors.append(
                    f"\\end{{{name}}} closes \\begin{{{env_stack[-1]}}}"
                )
                env_stack.pop()
            else:
                env_stack.pop()
    for name in env_stack:
        report.env_errors.append(f"\\begin{{{name}}} never closed")
    report.brace_final_depth = depth
    return report
