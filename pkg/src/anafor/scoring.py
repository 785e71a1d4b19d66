"""The eight binary salience preferences and their weighted aggregate score.

Feature order is part of the serialization contract (weights files, trace
bit strings): quoted_match, recency, nominative, first_np,
predicate_nominal, repetition, punctuation, zero_antecedent_history.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple

from .candidates import Candidate, SearchScope, _window_start
from .morphology import _split_apostrophe, is_nominative
from .textmodel import Document, Overtness, PronounMention, PUNCTUATION_TOKENS


class PreferenceVector(NamedTuple):
    quoted_match: bool
    recency: bool
    nominative: bool
    first_np: bool
    predicate_nominal: bool
    repetition: bool
    punctuation: bool
    zero_antecedent_history: bool

    def bits(self) -> str:
        return "".join("1" if flag else "0" for flag in self)


FEATURE_NAMES: tuple[str, ...] = PreferenceVector._fields


@dataclass(frozen=True)
class PreferenceWeights:
    values: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.values) != len(FEATURE_NAMES):
            raise ValueError(f"need {len(FEATURE_NAMES)} weights, got {len(self.values)}")
        if not all(math.isfinite(v) for v in self.values):
            raise ValueError("weights must be finite")

    def as_mapping(self) -> dict[str, float]:
        return dict(zip(FEATURE_NAMES, self.values))

    @classmethod
    def from_mapping(cls, mapping: dict[str, float]) -> "PreferenceWeights":
        missing = [name for name in FEATURE_NAMES if name not in mapping]
        if missing:
            raise ValueError(f"missing weight names: {', '.join(missing)}")
        extra = [name for name in mapping if name not in FEATURE_NAMES]
        if extra:
            raise ValueError(f"unknown weight names: {', '.join(extra)}")
        return cls(tuple(mapping[name] for name in FEATURE_NAMES))


#: Shipped default weights for the eight preferences, in feature order.
DEFAULT_WEIGHTS = PreferenceWeights((2.20, 2.15, 1.85, 1.40, 1.20, 1.20, 1.15, 1.05))


def score(vector: PreferenceVector, weights: PreferenceWeights) -> float:
    """Aggregate salience: the sum of the weights of the satisfied features."""
    return sum(w for flag, w in zip(vector, weights.values) if flag)


def format_weights(weights: PreferenceWeights) -> str:
    lines = [f"{name} = {value!r}" for name, value in weights.as_mapping().items()]
    return "\n".join(lines) + "\n"


def save_weights(weights: PreferenceWeights, path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(format_weights(weights))


def parse_weights(text: str) -> PreferenceWeights:
    """Parse a weights file: eight ``name = value`` lines, any order."""
    mapping: dict[str, float] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        name, sep, value = line.partition("=")
        name = name.strip()
        if not sep or not name:
            raise ValueError(f"weights line {lineno}: expected 'name = value'")
        if name in mapping:
            raise ValueError(f"weights line {lineno}: duplicate name {name!r}")
        try:
            mapping[name] = float(value.strip())
        except ValueError:
            raise ValueError(f"weights line {lineno}: bad value {value.strip()!r}") from None
    return PreferenceWeights.from_mapping(mapping)


def load_weights(path) -> PreferenceWeights:
    with open(path, encoding="utf-8") as handle:
        return parse_weights(handle.read())


@dataclass
class ResolutionHistory:
    """Base-name sets chosen for zero pronouns earlier in the document,
    together with the sentence index of each such zero pronoun."""

    _entries: list[tuple[frozenset[str], int]] = field(default_factory=list)

    def record(self, names: frozenset[str], sentence_index: int) -> None:
        self._entries.append((frozenset(names), sentence_index))

    def seen_before(self, names: frozenset[str], sentence_index: int) -> bool:
        return any(
            entry == names and recorded < sentence_index
            for entry, recorded in self._entries
        )

    def __len__(self) -> int:
        return len(self._entries)


def _first_phrase_token(doc: Document, sentence_index: int) -> int | None:
    sent = doc.sentences[sentence_index]
    for i in range(sent.first, sent.last + 1):
        if doc.tokens[i].surface not in PUNCTUATION_TOKENS:
            return i
    return None


def _base_occurrences(
    doc: Document, pronoun: PronounMention, base: str, scope: SearchScope
) -> int:
    count = 0
    for i in range(_window_start(doc, pronoun, scope), pronoun.position):
        if _split_apostrophe(doc.tokens[i].surface)[0] == base:
            count += 1
    return count


def feature_vector(
    doc: Document,
    pronoun: PronounMention,
    candidate: Candidate,
    survivors: Iterable[Candidate],
    history: ResolutionHistory,
    scope: SearchScope = SearchScope(),
) -> PreferenceVector:
    """Compute the eight preference flags for one post-constraint candidate.

    quoted_match is symmetric (both sides quoted, or both unquoted);
    recency marks the survivors of the nearest populated sentence;
    repetition requires every member base to occur at least twice in the
    search window, replacement tokens included.
    """
    pronoun_sentence = doc.sentence_index_of(pronoun.position)
    nearest_sentence = max(c.sentence_index for c in survivors)
    return PreferenceVector(
        quoted_match=(
            doc.tokens[pronoun.position].quoted == doc.tokens[candidate.anchor].quoted
        ),
        recency=candidate.sentence_index == nearest_sentence,
        nominative=all(is_nominative(member) for member in candidate.members),
        first_np=(
            candidate.members[0].token_index
            == _first_phrase_token(doc, candidate.sentence_index)
        ),
        predicate_nominal=any(member.copular_suffix for member in candidate.members),
        repetition=all(
            _base_occurrences(doc, pronoun, member.base, scope) >= 2
            for member in candidate.members
        ),
        punctuation=doc.tokens[candidate.anchor].followed_by_comma,
        zero_antecedent_history=(
            pronoun.overtness is Overtness.ZERO
            and history.seen_before(candidate.base_names, pronoun_sentence)
        ),
    )
