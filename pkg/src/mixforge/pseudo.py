"""Grammar-driven generation of pseudo-formulas, tables, and display blocks.

Generated expressions are syntactically valid and compilable but carry no
meaning: symbols are deliberately decorrelated from context (an ``=`` can
appear twice, limits need not make sense). Everything is a pure function of
(seed, grammar/spec), so parallel callers partition the seed space.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import InvalidGrammarError, InvalidSpecError

# Commands that may appear in generated output regardless of grammar tables.
_STRUCTURAL_COMMANDS = frozenset({"\\left", "\\right", "\\begin", "\\end"})

_DEFAULT_ATOMS = (
    tuple("abcdefghijklmnopqrstuvwxyz")
    + tuple("0123456789")
    + (
        "\\alpha",
        "\\beta",
        "\\gamma",
        "\\delta",
        "\\epsilon",
        "\\theta",
        "\\lambda",
        "\\mu",
        "\\pi",
        "\\tau",
    )
    + ("\\infty",)
)
_DEFAULT_UNARY = ("^", "_", "\\hat", "\\dot", "\\bar", "\\sqrt")
_DEFAULT_BINARY = ("+", "-", "=", "\\cdot", "\\frac")
_DEFAULT_BIG = ("\\sum", "\\int", "\\prod")

DEFAULT_WHITELIST = frozenset(
    c
    for c in _DEFAULT_ATOMS + _DEFAULT_UNARY + _DEFAULT_BINARY + _DEFAULT_BIG
    if c.startswith("\\")
) | _STRUCTURAL_COMMANDS


def _commands_in(items: Sequence[str]) -> set[str]:
    return {s for s in items if s.startswith("\\")}


@dataclass(frozen=True)
class FormulaGrammar:
    atoms: tuple[str, ...] = _DEFAULT_ATOMS
    unary_ops: tuple[str, ...] = _DEFAULT_UNARY
    binary_ops: tuple[str, ...] = _DEFAULT_BINARY
    big_ops: tuple[str, ...] = _DEFAULT_BIG
    # production weights; atom weight applies everywhere, the rest only
    # above the depth limit
    structure_weights: Mapping[str, float] = field(
        default_factory=lambda: {"atom": 3.0, "unary": 1.5, "binary": 2.5, "big": 0.5}
    )
    max_depth: int = 4
    left_right_prob: float = 0.15
    whitelist: frozenset[str] = DEFAULT_WHITELIST

    def validate(self) -> None:
        if not self.atoms:
            raise InvalidGrammarError("grammar needs at least one atom")
        if not 0.0 <= self.left_right_prob <= 1.0:
            raise InvalidGrammarError("left_right_prob outside [0, 1]")
        if self.max_depth < 0:
            raise InvalidGrammarError("max_depth must be non-negative")
        weights = dict(self.structure_weights)
        if any(w < 0 for w in weights.values()):
            raise InvalidGrammarError("negative production weight")
        if weights.get("atom", 0.0) <= 0.0:
            raise InvalidGrammarError("atom production must have positive weight")
        unknown = set(weights) - {"atom", "unary", "binary", "big"}
        if unknown:
            raise InvalidGrammarError(f"unknown productions: {sorted(unknown)}")
        used = (
            _commands_in(self.atoms)
            | _commands_in(self.unary_ops)
            | _commands_in(self.binary_ops)
            | _commands_in(self.big_ops)
        )
        stray = used - set(self.whitelist)
        if stray:
            raise InvalidGrammarError(f"commands outside whitelist: {sorted(stray)}")


@dataclass(frozen=True)
class TableSpec:
    rows: int
    cols: int
    col_spec: str = ""  # defaults to centered columns
    cell_source: str = "pseudo-formula"  # lexicon-word | pseudo-formula | digit-run

    def validate(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise InvalidSpecError("table needs rows >= 1 and cols >= 1")
        spec = self.col_spec or "c" * self.cols
        if len(spec) != self.cols or set(spec) - set("lcr"):
            raise InvalidSpecError(f"bad col_spec {self.col_spec!r} for {self.cols} cols")
        if self.cell_source not in ("lexicon-word", "pseudo-formula", "digit-run"):
            raise InvalidSpecError(f"unknown cell_source {self.cell_source!r}")

    @property
    def effective_col_spec(self) -> str:
        return self.col_spec or "c" * self.cols


def _pick_weighted(rng: random.Random, options: list[tuple[str, float]]) -> str:
    total = sum(w for _, w in options)
    x = rng.random() * total
    acc = 0.0
    for name, w in options:
        acc += w
        if x < acc:
            return name
    return options[-1][0]


def _expr(rng: random.Random, g: FormulaGrammar, depth: int) -> str:
    weights = g.structure_weights
    options = [("atom", weights.get("atom", 1.0))]
    if depth < g.max_depth:
        if g.unary_ops and weights.get("unary", 0.0) > 0:
            options.append(("unary", weights["unary"]))
        if g.binary_ops and weights.get("binary", 0.0) > 0:
            options.append(("binary", weights["binary"]))
        if g.big_ops and weights.get("big", 0.0) > 0:
            options.append(("big", weights["big"]))
    production = _pick_weighted(rng, options) if len(options) > 1 else "atom"

    if production == "atom":
        out = rng.choice(g.atoms)
    elif production == "unary":
        op = rng.choice(g.unary_ops)
        child = _expr(rng, g, depth + 1)
        if op in ("^", "_"):
            base = rng.choice(g.atoms)
            out = f"{base}{op}{{{child}}}"
        else:
            out = f"{op}{{{child}}}"
    elif production == "binary":
        op = rng.choice(g.binary_ops)
        left = _expr(rng, g, depth + 1)
        right = _expr(rng, g, depth + 1)
        if op == "\\frac":
            out = f"\\frac{{{left}}}{{{right}}}"
        elif op.startswith("\\"):
            out = f"{left}{op} {right}"
        else:
            out = f"{left}{op}{right}"
    else:  # big operator with optional limits
        op = rng.choice(g.big_ops)
        parts = [op]
        if rng.random() < 0.7:
            parts.append(f"_{{{_expr(rng, g, depth + 1)}}}")
        if rng.random() < 0.6:
            parts.append(f"^{{{_expr(rng, g, depth + 1)}}}")
        body = _expr(rng, g, depth + 1)
        out = f"{''.join(parts)} {body}"

    if depth < g.max_depth and rng.random() < g.left_right_prob:
        out = f"\\left( {out} \\right)"
    return out


def gen_formula(seed: int, grammar: FormulaGrammar) -> str:
    """Generate one math-mode expression (no surrounding delimiters)."""
    grammar.validate()
    rng = random.Random(seed)
    return _expr(rng, grammar, 0)


_TEXT_SAFE = frozenset(
    "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789 +-=.,"
)


def _format_cell(formula: str) -> str:
    # cells that survive text mode stay bare; anything needing math mode
    # is wrapped so the tabular still compiles
    if set(formula) <= _TEXT_SAFE:
        return formula
    return f"${formula}$"


def gen_table(
    seed: int,
    spec: TableSpec,
    grammar: FormulaGrammar,
    lexicon: Sequence[str] | None = None,
) -> str:
    """Generate a tabular environment with rows*cols filled cells."""
    spec.validate()
    grammar.validate()
    if spec.cell_source == "lexicon-word" and not lexicon:
        raise InvalidSpecError("lexicon-word cells need a non-empty lexicon")
    rng = random.Random(seed)
    rows = []
    for _ in range(spec.rows):
        cells = []
        for _ in range(spec.cols):
            if spec.cell_source == "lexicon-word":
                cells.append(rng.choice(list(lexicon)))
            elif spec.cell_source == "digit-run":
                cells.append("".join(rng.choice("0123456789") for _ in range(rng.randint(1, 6))))
            else:
                cells.append(_format_cell(_expr(rng, grammar, 0)))
        rows.append(" & ".join(cells) if len(cells) > 1 else cells[0])
    body = " \\\\ ".join(rows) if len(rows) > 1 else rows[0]
    return f"\\begin{{tabular}}{{{spec.effective_col_spec}}}{body}\\end{{tabular}}"


def gen_display_block(seed: int, grammar: FormulaGrammar) -> str:
    """Generate a display-math block, delimiter pair chosen from the seed."""
    grammar.validate()
    rng = random.Random(seed)
    use_equation = rng.random() < 0.5
    formula = _expr(rng, grammar, 0)
    if use_equation:
        return f"\\begin{{equation}}{formula}\\end{{equation}}"
    return f"\\[{formula}\\]"
