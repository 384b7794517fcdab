"""The four text-corruption primitives: scrambling, word insertion,
inline-math insertion, disruptive-character injection.

The corrupted string IS the recognition target: downstream ground truth is
the perturbed text, never the original, so a trained model learns to
transcribe errors instead of silently fixing them. All operations are pure
per seed and are the identity at rate 0.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Sequence

from .errors import EmptyLexiconError, InvalidGrammarError
from .pseudo import FormulaGrammar, gen_formula
from .segment import Provenance

# Characters with LaTeX syntax meaning; never valid as disruptive noise.
LATEX_ACTIVE_CHARS = frozenset("\\{}$%&#^_~")

DEFAULT_DISRUPT_CHARSET = ",.;:'!?0123456789"


@dataclass(frozen=True)
class PerturbRates:
    scramble_rate: float = 0.03
    word_insert_rate: float = 0.02
    math_insert_rate: float = 0.03
    disrupt_rate: float = 0.005
    disrupt_charset: str = DEFAULT_DISRUPT_CHARSET

    def validate(self) -> None:
        for name in ("scramble_rate", "word_insert_rate", "math_insert_rate", "disrupt_rate"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} outside [0, 1]: {value}")
        if self.disrupt_rate > 0 and not self.disrupt_charset:
            raise ValueError("disrupt_rate > 0 needs a non-empty charset")
        active = set(self.disrupt_charset) & LATEX_ACTIVE_CHARS
        if active:
            raise ValueError(f"disrupt_charset contains LaTeX-active chars: {sorted(active)}")

    @classmethod
    def zero(cls) -> "PerturbRates":
        return cls(0.0, 0.0, 0.0, 0.0)


@dataclass(frozen=True)
class MarkedItem:
    """A word-granularity piece of perturbation output."""

    text: str
    provenance: Provenance
    is_math: bool = False
    scrambled: bool = False


def _as_items(tokens: Sequence[str | MarkedItem]) -> list[MarkedItem]:
    return [
        t if isinstance(t, MarkedItem) else MarkedItem(t, Provenance.REAL)
        for t in tokens
    ]


def scramble_word(word: str, seed: int) -> str:
    """Uniformly permute the word's characters. For words of length >= 4
    with at least two distinct characters the identity outcome is rejected
    and resampled."""
    if any(c.isspace() for c in word):
        raise ValueError(f"word contains whitespace: {word!r}")
    if len(word) < 2:
        return word
    chars = list(word)
    rng = random.Random(seed)
    rng.shuffle(chars)
    out = "".join(chars)
    if len(word) >= 4 and len(set(word)) >= 2:
        while out == word:
            rng.shuffle(chars)
            out = "".join(chars)
    return out


def insert_words(
    tokens: Sequence[str | MarkedItem],
    rates: PerturbRates,
    lexicon: Sequence[str],
    seed: int,
) -> list[MarkedItem]:
    """Fill each gap (including both ends) with a lexicon word with
    probability word_insert_rate; insertions carry Perturbed provenance."""
    rates.validate()
    items = _as_items(tokens)
    if rates.word_insert_rate == 0.0:
        return items
    if not lexicon:
        raise EmptyLexiconError("word insertion needs a lexicon")
    rng = random.Random(seed)
    pool = list(lexicon)
    out: list[MarkedItem] = []
    for item in items:
        if rng.random() < rates.word_insert_rate:
            out.append(MarkedItem(rng.choice(pool), Provenance.PERTURBED))
        out.append(item)
    if rng.random() < rates.word_insert_rate:
        out.append(MarkedItem(rng.choice(pool), Provenance.PERTURBED))
    return out


def insert_inline_math(
    tokens: Sequence[str | MarkedItem],
    rates: PerturbRates,
    grammar: FormulaGrammar,
    seed: int,
) -> list[MarkedItem]:
    """Fill gaps with ``$...$``-wrapped pseudo-formulas (provenance Pseudo)."""
    rates.validate()
    if grammar is None:
        raise InvalidGrammarError("inline math insertion needs a grammar")
    grammar.validate()
    items = _as_items(tokens)
    if rates.math_insert_rate == 0.0:
        return items
    rng = random.Random(seed)

    def math_item() -> MarkedItem:
        formula = gen_formula(rng.getrandbits(63), grammar)
        return MarkedItem(f"${formula}$", Provenance.PSEUDO, is_math=True)

    out: list[MarkedItem] = []
    for item in items:
        if rng.random() < rates.math_insert_rate:
            out.append(math_item())
        out.append(item)
    if rng.random() < rates.math_insert_rate:
        out.append(math_item())
    return out


def inject_chars(text: str, rates: PerturbRates, seed: int) -> str:
    """Follow each character with a disruptive character with probability
    disrupt_rate; the original characters all survive in order."""
    rates.validate()
    if rates.disrupt_rate == 0.0 or not text:
        return text
    rng = random.Random(seed)
    charset = rates.disrupt_charset
    out: list[str] = []
    for c in text:
        out.append(c)
        if rng.random() < rates.disrupt_rate:
            out.append(rng.choice(charset))
    return "".join(out)


def perturb_words(
    words: Sequence[str],
    rates: PerturbRates,
    lexicon: Sequence[str],
    grammar: FormulaGrammar,
    seed: int,
) -> list[MarkedItem]:
    """Composite pass over one text fragment's words, in fixed order:
    scramble, then character injection, then word insertion, then inline
    math insertion. Words touched by scrambling or injection become
    Perturbed; untouched words stay Real."""
    rates.validate()
    rng = random.Random(seed)
    items: list[MarkedItem] = []
    for word in words:
        provenance = Provenance.REAL
        was_scrambled = False
        if len(word) >= 2 and rates.scramble_rate > 0 and rng.random() < rates.scramble_rate:
            scrambled = scramble_word(word, rng.getrandbits(63))
            if scrambled != word:
                word = scrambled
                provenance = Provenance.PERTURBED
                was_scrambled = True
        if rates.disrupt_rate > 0:
            injected = inject_chars(word, rates, rng.getrandbits(63))
            if injected != word:
                word = injected
                provenance = Provenance.PERTURBED
        items.append(MarkedItem(word, provenance, scrambled=was_scrambled))
    marked = insert_words(items, rates, lexicon, seed ^ 0x57AB)
    marked = insert_inline_math(marked, rates, grammar, seed ^ 0x3A7)
    return marked
