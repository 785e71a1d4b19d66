"""Core document model: tokens, sentences and pronoun mentions.

A :class:`Document` is immutable once built.  ``assemble_document`` is the
single constructor used both by the corpus parser and by the resolver when
it rewrites the token stream after replacing a pronoun with its antecedent.

Tokenization is deliberately shallow: text splits on whitespace, the
punctuation marks ``, . ! ? … "`` become tokens of their own, and apostrophes
stay inside the token (``Ali'yi`` is one token) because the apostrophe is the
cue for proper-name case suffixes.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable, Sequence

PUNCTUATION_TOKENS = frozenset({",", ".", "!", "?", "…", '"'})
SENTENCE_TERMINATORS = frozenset({".", "!", "?", "…"})
QUOTE = '"'

_TOKEN_RE = re.compile(r'[,.!?…"]|[^,.!?…"\s]+')


class PronounKind(enum.Enum):
    PERSONAL = "pers"
    REFLEXIVE = "refl"


class Number(enum.Enum):
    SINGULAR = "sg"
    PLURAL = "pl"


class Overtness(enum.Enum):
    OVERT = "overt"
    ZERO = "zero"


@dataclass(frozen=True)
class Token:
    surface: str
    index: int
    sentence_index: int
    quoted: bool = False
    followed_by_comma: bool = False

    def __post_init__(self) -> None:
        if not self.surface or any(ch.isspace() for ch in self.surface):
            raise ValueError(
                f"token surface must be non-empty and whitespace-free: {self.surface!r}"
            )


@dataclass(frozen=True)
class Sentence:
    index: int
    token_range: tuple[int, int]  # inclusive [first, last]

    @property
    def first(self) -> int:
        return self.token_range[0]

    @property
    def last(self) -> int:
        return self.token_range[1]

    def contains(self, token_index: int) -> bool:
        return self.first <= token_index <= self.last


@dataclass(frozen=True)
class PronounMention:
    """One overt or zero pronoun occurrence.

    ``position`` is the index of the pronoun token itself for overt
    mentions; for zero mentions it is the index of the token the zero
    marker precedes.  ``surface`` is empty for zero mentions.
    """

    id: int
    kind: PronounKind
    number: Number
    overtness: Overtness
    position: int
    surface: str = ""
    gold_antecedent: frozenset[str] | None = None

    def __post_init__(self) -> None:
        if self.overtness is Overtness.ZERO and self.surface:
            raise ValueError("zero pronoun must have an empty surface")
        if self.overtness is Overtness.OVERT and not self.surface:
            raise ValueError("overt pronoun must carry its surface form")
        if self.gold_antecedent is not None and not self.gold_antecedent:
            raise ValueError("gold antecedent, when present, must be non-empty")


@dataclass(frozen=True)
class Document:
    tokens: tuple[Token, ...]
    sentences: tuple[Sentence, ...]
    pronouns: tuple[PronounMention, ...]

    def sentence_index_of(self, token_index: int) -> int:
        if not 0 <= token_index < len(self.tokens):
            raise IndexError(f"token index out of range: {token_index}")
        return self.tokens[token_index].sentence_index

    def sentence_tokens(self, sentence_index: int) -> tuple[Token, ...]:
        sent = self.sentences[sentence_index]
        return self.tokens[sent.first:sent.last + 1]

    def validate(self) -> None:
        """Check the structural invariants; raise ValueError on violation."""
        for i, token in enumerate(self.tokens):
            if token.index != i:
                raise ValueError(f"token {i} carries index {token.index}")
        expected_start = 0
        for k, sent in enumerate(self.sentences):
            if sent.index != k:
                raise ValueError(f"sentence {k} carries index {sent.index}")
            first, last = sent.token_range
            if first != expected_start or last < first:
                raise ValueError(f"sentence {k} range {sent.token_range} is not adjacent")
            expected_start = last + 1
            for i in range(first, last + 1):
                if self.tokens[i].sentence_index != k:
                    raise ValueError(f"token {i} not tagged with sentence {k}")
        if expected_start != len(self.tokens):
            raise ValueError("sentences do not cover the token stream")
        seen_ids = set()
        last_position = -1
        for mention in self.pronouns:
            if mention.id in seen_ids:
                raise ValueError(f"duplicate pronoun id {mention.id}")
            seen_ids.add(mention.id)
            if not 0 <= mention.position < len(self.tokens):
                raise ValueError(f"pronoun {mention.id} position out of range")
            if mention.position < last_position:
                raise ValueError("pronouns are not ordered by position")
            last_position = mention.position
            if mention.overtness is Overtness.OVERT:
                if self.tokens[mention.position].surface != mention.surface:
                    raise ValueError(
                        f"pronoun {mention.id} surface does not match its token"
                    )


def sentence_distance(doc: Document, a: int, b: int) -> int:
    """Distance in sentences between two token positions."""
    return abs(doc.sentence_index_of(a) - doc.sentence_index_of(b))


def split_tokens(text: str) -> list[str]:
    """Split plain text into token surfaces; punctuation marks stand alone."""
    return _TOKEN_RE.findall(text)


def sentence_spans(surfaces: Sequence[str]) -> list[tuple[int, int]]:
    """Half-open [start, end) spans of the sentences in a token stream.

    A sentence ends after a run of terminator tokens; a closing double
    quote immediately after the run belongs to the ending sentence.
    """
    spans: list[tuple[int, int]] = []
    start = 0
    quotes_seen = 0
    i = 0
    n = len(surfaces)
    while i < n:
        surface = surfaces[i]
        if surface in SENTENCE_TERMINATORS:
            while i + 1 < n and surfaces[i + 1] in SENTENCE_TERMINATORS:
                i += 1
            if i + 1 < n and surfaces[i + 1] == QUOTE and quotes_seen % 2 == 1:
                quotes_seen += 1
                i += 1
            spans.append((start, i + 1))
            start = i + 1
        elif surface == QUOTE:
            quotes_seen += 1
        i += 1
    if start < n:
        spans.append((start, n))
    return spans


def _quoted_flags(surfaces: Sequence[str], sentence_of: Sequence[int]) -> list[bool]:
    # Quote characters pair up left to right; tokens strictly between an
    # opening quote and its partner are quoted.  An unpaired trailing quote
    # opens a span that ends with its own sentence.
    flags = [False] * len(surfaces)
    open_at: int | None = None
    for i, surface in enumerate(surfaces):
        if surface == QUOTE:
            open_at = i if open_at is None else None
        elif open_at is not None:
            flags[i] = True
    if open_at is not None:
        limit = sentence_of[open_at]
        for i in range(open_at + 1, len(surfaces)):
            if sentence_of[i] != limit:
                flags[i] = False
    return flags


def assemble_document(
    sentence_surfaces: Sequence[Sequence[str]],
    pronouns: Iterable[PronounMention] = (),
) -> Document:
    """Build a Document from per-sentence token surfaces and pronoun mentions.

    Mentions are re-sorted by position (stable, so same-position mentions
    keep their given order).  All structural invariants are verified.
    """
    surfaces: list[str] = []
    sentence_of: list[int] = []
    sentences: list[Sentence] = []
    for k, sent_surfaces in enumerate(sentence_surfaces):
        if not sent_surfaces:
            raise ValueError(f"sentence {k} has no tokens")
        first = len(surfaces)
        for surface in sent_surfaces:
            surfaces.append(surface)
            sentence_of.append(k)
        sentences.append(Sentence(k, (first, len(surfaces) - 1)))

    quoted = _quoted_flags(surfaces, sentence_of)
    tokens = tuple(
        Token(
            surface=surface,
            index=i,
            sentence_index=sentence_of[i],
            quoted=quoted[i],
            followed_by_comma=(i + 1 < len(surfaces) and surfaces[i + 1] == ","),
        )
        for i, surface in enumerate(surfaces)
    )
    ordered = tuple(sorted(pronouns, key=lambda m: m.position))
    doc = Document(tokens=tokens, sentences=tuple(sentences), pronouns=ordered)
    doc.validate()
    return doc
