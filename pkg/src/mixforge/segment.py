"""Provenance-labeled document fragments, the unit the mixer shuffles."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .lexer import count_tokens

LANGUAGES = ("zh", "en", "fr", "de", "ja", "ru", "es")


class Provenance(Enum):
    REAL = "real"
    PSEUDO = "pseudo"
    PERTURBED = "perturbed"


class SegmentKind(Enum):
    TEXT = "text"
    INLINE_MATH = "inline_math"
    DISPLAY_MATH = "display_math"
    TABLE = "table"


@dataclass
class Segment:
    content: str
    kind: SegmentKind
    provenance: Provenance
    language: str | None = None
    token_count: int = -1  # -1: computed on construction
    meta: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.token_count < 0:
            self.token_count = count_tokens(self.content)

    def validate(self) -> None:
        if (self.language is not None) != (self.kind == SegmentKind.TEXT):
            raise AssertionError(
                f"language must be present iff kind is text: {self!r}"
            )
        if self.language is not None and self.language not in LANGUAGES:
            raise AssertionError(f"unknown language {self.language!r}")
        if self.token_count != count_tokens(self.content):
            raise AssertionError(f"stale token_count on {self!r}")
