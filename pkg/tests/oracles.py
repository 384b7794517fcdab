"""Independent reference implementations used to pin expected test values.

Nothing here imports from mixforge: each oracle re-derives its answer from
first principles (character-by-character scanning, memoized recursion,
exhaustive enumeration) so the tests compare two unrelated code paths.
"""

from __future__ import annotations

import functools
import math
import unicodedata
from collections import Counter
from fractions import Fraction

# ---------------------------------------------------------------------------
# Reference LaTeX scanner (character-by-character, no regex)
# ---------------------------------------------------------------------------

_CJK_RANGES = (
    (0x2E80, 0x9FFF),
    (0x3040, 0x30FF),
    (0xAC00, 0xD7AF),
    (0xF900, 0xFAFF),
    (0x20000, 0x2FFFF),
)


def _is_cjk(ch: str) -> bool:
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in _CJK_RANGES)


def _is_alnum_token_char(ch: str) -> bool:
    # mirrors the regex class [^\W_]: unicode alphanumerics minus underscore
    return ch != "_" and ch.isalnum()


def _is_word_letter(ch: str) -> bool:
    # mirrors [^\W\d_] minus CJK: alphanumeric, not a decimal digit, not CJK
    return (
        _is_alnum_token_char(ch)
        and unicodedata.category(ch) != "Nd"
        and not _is_cjk(ch)
    )


def _match_env(text: str, i: int) -> tuple[str, int] | None:
    """Try to scan \\begin{letters*?} or \\end{letters*?} at position i."""
    for keyword, kind in (("\\begin{", "EnvBegin"), ("\\end{", "EnvEnd")):
        if not text.startswith(keyword, i):
            continue
        j = i + len(keyword)
        start = j
        while j < len(text) and text[j].isascii() and text[j].isalpha():
            j += 1
        if j == start:
            continue
        if j < len(text) and text[j] == "*":
            j += 1
        if j < len(text) and text[j] == "}":
            return kind, j + 1
    return None


def reference_scan(text: str) -> list[tuple[str, str]]:
    """Scan LaTeX source into (kind-name, text) pairs, losslessly."""
    toks: list[tuple[str, str]] = []
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\\":
            env = _match_env(text, i)
            if env is not None:
                kind, end = env
                toks.append((kind, text[i:end]))
                i = end
                continue
            j = i + 1
            if j < n and text[j].isascii() and text[j].isalpha():
                while j < n and text[j].isascii() and text[j].isalpha():
                    j += 1
                toks.append(("Command", text[i:j]))
                i = j
            elif j < n:
                toks.append(("Command", text[i : j + 1]))
                i = j + 1
            else:
                toks.append(("Other", c))
                i += 1
        elif c == "$":
            if i + 1 < n and text[i + 1] == "$":
                toks.append(("MathShift", "$$"))
                i += 2
            else:
                toks.append(("MathShift", "$"))
                i += 1
        elif c == "%":
            j = i
            while j < n and text[j] != "\n":
                j += 1
            toks.append(("Comment", text[i:j]))
            i = j
        elif c.isspace():
            j = i
            while j < n and text[j].isspace():
                j += 1
            toks.append(("Whitespace", text[i:j]))
            i = j
        elif c == "{":
            toks.append(("BraceOpen", c))
            i += 1
        elif c == "}":
            toks.append(("BraceClose", c))
            i += 1
        elif _is_word_letter(c):
            j = i
            while j < n and _is_word_letter(text[j]):
                j += 1
            if j - i >= 2:
                toks.append(("Word", text[i:j]))
                i = j
            else:
                toks.append(("Char", c))
                i += 1
        elif _is_alnum_token_char(c):
            toks.append(("Char", c))
            i += 1
        else:
            toks.append(("Other", c))
            i += 1
    return toks


def reference_count(text: str) -> int:
    return sum(1 for kind, _ in reference_scan(text) if kind not in ("Whitespace", "Comment"))


# ---------------------------------------------------------------------------
# Edit distance by memoized recursion
# ---------------------------------------------------------------------------


def bruteforce_edit_distance(a, b) -> int:
    a, b = tuple(a), tuple(b)

    @functools.lru_cache(maxsize=None)
    def go(i: int, j: int) -> int:
        if i == len(a):
            return len(b) - j
        if j == len(b):
            return len(a) - i
        return min(
            go(i + 1, j) + 1,
            go(i, j + 1) + 1,
            go(i + 1, j + 1) + (a[i] != b[j]),
        )

    return go(0, 0)


# ---------------------------------------------------------------------------
# Exhaustive alignment enumeration for precision/recall matches
# ---------------------------------------------------------------------------


def enumerate_min_cost_max_matches(ref, hyp) -> tuple[int, int]:
    """Walk every alignment of ref/hyp; return (min cost, max #matches
    among min-cost alignments). Exponential: only for short sequences."""
    ref, hyp = list(ref), list(hyp)
    dmin = bruteforce_edit_distance(ref, hyp)
    best_m = -1

    def go(i: int, j: int, cost: int, m: int) -> None:
        nonlocal best_m
        if cost > dmin:
            return
        if i == len(ref) and j == len(hyp):
            if cost == dmin:
                best_m = max(best_m, m)
            return
        if i < len(ref) and j < len(hyp):
            if ref[i] == hyp[j]:
                go(i + 1, j + 1, cost, m + 1)
            else:
                go(i + 1, j + 1, cost + 1, m)
        if i < len(ref):
            go(i + 1, j, cost + 1, m)
        if j < len(hyp):
            go(i, j + 1, cost + 1, m)

    go(0, 0, 0, 0)
    return dmin, best_m


# ---------------------------------------------------------------------------
# BLEU from first principles (exact fractions, clipped counts)
# ---------------------------------------------------------------------------


def reference_bleu(ref, hyp, max_n: int = 4) -> float:
    ref, hyp = list(ref), list(hyp)
    if not hyp:
        return 0.0
    log_sum = 0.0
    orders = 0
    for n in range(1, max_n + 1):
        hyp_ngrams = [tuple(hyp[i : i + n]) for i in range(len(hyp) - n + 1)]
        ref_ngrams = Counter(tuple(ref[i : i + n]) for i in range(len(ref) - n + 1))
        if not hyp_ngrams:
            continue
        clipped = sum(min(c, ref_ngrams[g]) for g, c in Counter(hyp_ngrams).items())
        if clipped:
            p = Fraction(clipped, len(hyp_ngrams))
        else:
            p = Fraction(1, 2 * len(hyp_ngrams))
        log_sum += math.log(p)
        orders += 1
    brevity = 1.0 if len(hyp) >= len(ref) else math.exp(1.0 - len(ref) / len(hyp))
    return 100.0 * brevity * math.exp(log_sum / orders)
