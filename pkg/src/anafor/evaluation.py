"""Recall/precision scoring of resolutions against gold links.

recall    = correct / identified   (gold-linked pronouns)
precision = correct / attempted    (identified minus ambiguous)

A resolution is correct when its antecedent base-name set equals the gold
set; a wrongly resolved pronoun still counts as attempted, only ambiguous
ones are excluded from the precision denominator.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Protocol

from .textmodel import Document


class ResolutionLike(Protocol):
    pronoun_id: int
    antecedent: frozenset[str] | None


@dataclass(frozen=True)
class Metrics:
    identified: int
    attempted: int
    correct: int
    recall: float
    precision: float

    @classmethod
    def from_counts(cls, identified: int, ambiguous: int, correct: int) -> "Metrics":
        if not 0 <= ambiguous <= identified:
            raise ValueError("need 0 <= ambiguous <= identified")
        attempted = identified - ambiguous
        if not 0 <= correct <= attempted:
            raise ValueError("need 0 <= correct <= attempted")
        return cls(
            identified=identified,
            attempted=attempted,
            correct=correct,
            recall=correct / identified if identified else 0.0,
            precision=correct / attempted if attempted else 0.0,
        )

    def format_kv(self) -> str:
        return (
            f"identified={self.identified}\n"
            f"attempted={self.attempted}\n"
            f"correct={self.correct}\n"
            f"recall={self.recall:.6f}\n"
            f"precision={self.precision:.6f}\n"
        )

    def format_text(self) -> str:
        return (
            f"identified  {self.identified}\n"
            f"attempted   {self.attempted}\n"
            f"correct     {self.correct}\n"
            f"recall      {_pct(self.recall)}%\n"
            f"precision   {_pct(self.precision)}%\n"
        )


def _pct(fraction: float) -> float:
    return round(fraction * 100, 1)


def evaluate(resolved, gold: Document) -> Metrics:
    """Score resolutions against the gold document's ``ant`` links.

    ``resolved`` may be a ResolvedDocument or any iterable of objects with
    ``pronoun_id`` and ``antecedent`` attributes (trace records included).
    Every gold-linked pronoun must have a resolution with a matching id.
    """
    resolutions: Iterable[ResolutionLike]
    resolutions = getattr(resolved, "resolutions", resolved)
    by_id: dict[int, ResolutionLike] = {}
    for resolution in resolutions:
        if resolution.pronoun_id in by_id:
            raise ValueError(f"duplicate resolution for pronoun {resolution.pronoun_id}")
        by_id[resolution.pronoun_id] = resolution
    identified = 0
    ambiguous = 0
    correct = 0
    for mention in gold.pronouns:
        if mention.gold_antecedent is None:
            continue
        identified += 1
        try:
            resolution = by_id[mention.id]
        except KeyError:
            raise ValueError(f"no resolution for gold-linked pronoun {mention.id}") from None
        if resolution.antecedent is None:
            ambiguous += 1
        elif resolution.antecedent == mention.gold_antecedent:
            correct += 1
    return Metrics.from_counts(identified, ambiguous, correct)


@dataclass(frozen=True)
class Comparison:
    """Side-by-side system versus baseline report."""

    system: Metrics
    baseline: Metrics

    @property
    def recall_delta(self) -> float:
        # Deltas in percentage points, computed from the displayed (rounded)
        # percentages so the table rows stay self-consistent.
        return round(_pct(self.system.recall) - _pct(self.baseline.recall), 1)

    @property
    def precision_delta(self) -> float:
        return round(_pct(self.system.precision) - _pct(self.baseline.precision), 1)

    def format_text(self) -> str:
        rows = [
            ("", "baseline", "system", "delta"),
            (
                "recall",
                f"{_pct(self.baseline.recall)}%",
                f"{_pct(self.system.recall)}%",
                f"{self.recall_delta:+}",
            ),
            (
                "precision",
                f"{_pct(self.baseline.precision)}%",
                f"{_pct(self.system.precision)}%",
                f"{self.precision_delta:+}",
            ),
        ]
        widths = [max(len(row[col]) for row in rows) for col in range(4)]
        lines = [
            "  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip()
            for row in rows
        ]
        return "\n".join(lines) + "\n"

    def format_kv(self) -> str:
        lines = []
        for label, metrics in (("baseline", self.baseline), ("system", self.system)):
            for key, value in (
                ("identified", metrics.identified),
                ("attempted", metrics.attempted),
                ("correct", metrics.correct),
            ):
                lines.append(f"{label}.{key}={value}")
            lines.append(f"{label}.recall={metrics.recall:.6f}")
            lines.append(f"{label}.precision={metrics.precision:.6f}")
        lines.append(f"delta.recall_pp={self.recall_delta:+}")
        lines.append(f"delta.precision_pp={self.precision_delta:+}")
        return "\n".join(lines) + "\n"


def compare(system: Metrics, baseline: Metrics) -> Comparison:
    """Pair up two metric sets for side-by-side reporting."""
    return Comparison(system=system, baseline=baseline)
