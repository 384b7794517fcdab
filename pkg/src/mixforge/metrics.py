"""Evaluation suite: edit distance, BLEU, token precision/recall, reports.

Edit distance is character-level over Unicode code points; BLEU and
precision/recall are token-level over the lexer's countable tokens. The
normalized distance divides by the longer string's length so it is a true
[0, 1] quantity.
"""

from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import MissingPredictionError
from .lexer import countable_texts


@dataclass(frozen=True)
class EditDistance:
    raw: int
    normalized: float


def edit_distance(ref: str, hyp: str) -> EditDistance:
    """Levenshtein distance (unit-cost insert/delete/substitute) over
    characters, plus the max-length-normalized value (0/0 defined as 0)."""
    if ref == hyp:
        return EditDistance(0, 0.0)
    if not ref or not hyp:
        raw = len(ref) or len(hyp)
        return EditDistance(raw, 1.0)
    # two-row DP; iterate over the shorter string in the inner loop
    if len(hyp) < len(ref):
        ref, hyp = hyp, ref
    prev = list(range(len(ref) + 1))
    cur = [0] * (len(ref) + 1)
    for j, hc in enumerate(hyp, start=1):
        cur[0] = j
        for i, rc in enumerate(ref, start=1):
            cur[i] = min(
                prev[i] + 1,
                cur[i - 1] + 1,
                prev[i - 1] + (rc != hc),
            )
        prev, cur = cur, prev
    raw = prev[len(ref)]
    return EditDistance(raw, raw / max(len(ref), len(hyp)))


def bleu(ref_tokens: Sequence[str], hyp_tokens: Sequence[str], max_n: int = 4) -> float:
    """Corpus-style BLEU for one pair: geometric mean of clipped n-gram
    precisions (n = 1..max_n) with brevity penalty, in [0, 100].

    Zero precisions floor at 1/(2 * #hyp n-grams); orders where the
    hypothesis has no n-grams at all are left out of the mean. An empty
    hypothesis scores 0.
    """
    ref_tokens, hyp_tokens = list(ref_tokens), list(hyp_tokens)
    if not hyp_tokens:
        return 0.0
    log_sum = 0.0
    orders = 0
    for n in range(1, max_n + 1):
        total = len(hyp_tokens) - n + 1
        if total <= 0:
            continue
        ref_counts = Counter(
            tuple(ref_tokens[i : i + n]) for i in range(len(ref_tokens) - n + 1)
        )
        hyp_counts = Counter(
            tuple(hyp_tokens[i : i + n]) for i in range(total)
        )
        clipped = sum(min(c, ref_counts[g]) for g, c in hyp_counts.items())
        p = clipped / total if clipped else 1.0 / (2.0 * total)
        log_sum += math.log(p)
        orders += 1
    if len(hyp_tokens) >= len(ref_tokens):
        brevity = 1.0
    else:
        brevity = math.exp(1.0 - len(ref_tokens) / len(hyp_tokens))
    return 100.0 * brevity * math.exp(log_sum / orders)


def alignment_matches(ref_tokens: Sequence[str], hyp_tokens: Sequence[str]) -> int:
    """Number of matched positions in the canonical minimal-edit alignment.

    Among equal-cost alignments the one with the most matches wins (match
    preferred over substitute/delete/insert), which makes the count unique:
    the DP minimizes (cost, -matches) lexicographically.
    """
    ref_tokens, hyp_tokens = list(ref_tokens), list(hyp_tokens)
    if not ref_tokens or not hyp_tokens:
        return 0
    # dp[i] = (cost, -matches) for aligning ref[:i] against hyp[:j]
    prev = [(i, 0) for i in range(len(ref_tokens) + 1)]
    cur = [(0, 0)] * (len(ref_tokens) + 1)
    for j, hc in enumerate(hyp_tokens, start=1):
        cur[0] = (j, 0)
        for i, rc in enumerate(ref_tokens, start=1):
            sub_cost, sub_neg = prev[i - 1]
            if rc == hc:
                diag = (sub_cost, sub_neg - 1)
            else:
                diag = (sub_cost + 1, sub_neg)
            dele = (prev[i][0] + 1, prev[i][1])
            ins = (cur[i - 1][0] + 1, cur[i - 1][1])
            cur[i] = min(diag, dele, ins)
        prev, cur = cur, prev
    return -prev[len(ref_tokens)][1]


def precision_recall(
    ref_tokens: Sequence[str], hyp_tokens: Sequence[str]
) -> tuple[float, float]:
    """Token precision/recall percentages from the canonical alignment."""
    ref_tokens, hyp_tokens = list(ref_tokens), list(hyp_tokens)
    if not ref_tokens and not hyp_tokens:
        return 100.0, 100.0
    matches = alignment_matches(ref_tokens, hyp_tokens)
    precision = 100.0 * matches / len(hyp_tokens) if hyp_tokens else 0.0
    recall = 100.0 * matches / len(ref_tokens) if ref_tokens else 0.0
    return precision, recall


@dataclass
class MetricsReport:
    edit_distance: float  # mean normalized, in [0, 1]
    bleu: float  # in [0, 100]
    precision: float  # percent
    recall: float  # percent
    n_samples: int

    def format_row(self) -> str:
        """One result row, column order Edit Dis. / BLEU / Precision / Recall."""
        return (
            f"{self.edit_distance:.3f} & {self.bleu:.1f}"
            f" & {self.precision:.1f} & {self.recall:.1f}"
        )

    def format_table(self, label: str = "model") -> str:
        header = f"{'':<12} {'Edit Dis.':>10} {'BLEU':>8} {'Precision':>10} {'Recall':>8}"
        row = (
            f"{label:<12} {self.edit_distance:>10.3f} {self.bleu:>8.1f}"
            f" {self.precision:>10.1f} {self.recall:>8.1f}"
        )
        return header + "\n" + row + f"\n(n={self.n_samples})"

    def to_dict(self) -> dict:
        return {
            "edit_distance": self.edit_distance,
            "bleu": self.bleu,
            "precision": self.precision,
            "recall": self.recall,
            "n_samples": self.n_samples,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)


def score_pair(ref: str, hyp: str) -> tuple[float, float, float, float]:
    """Per-sample (normalized edit distance, bleu, precision, recall)."""
    ref_toks = countable_texts(ref)
    hyp_toks = countable_texts(hyp)
    ed = edit_distance(ref, hyp).normalized
    b = bleu(ref_toks, hyp_toks)
    p, r = precision_recall(ref_toks, hyp_toks)
    return ed, b, p, r


def evaluate(predictions: Mapping[str, str], references: Mapping[str, str]) -> MetricsReport:
    """Macro-average the per-sample metrics over every reference sample.

    ``predictions`` and ``references`` map sample_id to text; every
    reference id must be predicted or MissingPredictionError is raised.
    """
    if not references:
        raise ValueError("no reference samples to evaluate")
    sums = [0.0, 0.0, 0.0, 0.0]
    n = 0
    for sample_id in references:
        if sample_id not in predictions:
            raise MissingPredictionError(sample_id)
        vals = score_pair(references[sample_id], predictions[sample_id])
        for k, v in enumerate(vals):
            sums[k] += v
        n += 1
    return MetricsReport(
        edit_distance=sums[0] / n,
        bleu=sums[1] / n,
        precision=sums[2] / n,
        recall=sums[3] / n,
        n_samples=n,
    )


def read_predictions_jsonl(lines: Iterable[str]) -> dict[str, str]:
    """Parse {"sample_id": ..., "text": ...} JSONL into a dict."""
    out: dict[str, str] = {}
    for line in lines:
        line = line.strip()
        if not line:
            continue
        rec = json.loads(line)
        out[rec["sample_id"]] = rec["text"]
    return out
