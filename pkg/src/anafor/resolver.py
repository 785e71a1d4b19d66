"""Left-to-right resolution with antecedent replacement, plus the
most-recent-candidate baseline.

Pronouns are processed in document order.  Whenever one is resolved, its
token (or zero-marker position) is rewritten to the antecedent's bare base
names joined with ``ve``, so the replacement is visible to later candidate
extraction and repetition counting.  Ambiguous pronouns stay in the text
untouched.  Sentence boundaries never move; token indices of later
pronouns are remapped after every replacement.
"""

from __future__ import annotations

from dataclasses import dataclass, replace as dc_replace
from typing import Callable, Iterable, Sequence

from .candidates import Candidate, SearchScope, constrained_candidates
from .corpus import NameDictionary
from .morphology import Lexicon
from .scoring import (
    DEFAULT_WEIGHTS,
    PreferenceVector,
    PreferenceWeights,
    ResolutionHistory,
    feature_vector,
    score,
)
from .textmodel import Document, Overtness, PronounMention, assemble_document


@dataclass(frozen=True)
class ScoredCandidate:
    candidate: Candidate
    vector: PreferenceVector | None  # None in baseline traces
    score: float


@dataclass(frozen=True)
class Resolution:
    """Outcome for one pronoun: an antecedent name set, or ambiguous."""

    pronoun_id: int
    antecedent: frozenset[str] | None
    score: float | None
    trace: tuple[ScoredCandidate, ...] = ()

    @property
    def resolved(self) -> bool:
        return self.antecedent is not None


@dataclass(frozen=True)
class ResolvedDocument:
    resolutions: tuple[Resolution, ...]
    paraphrased: Document


def _replacement_surfaces(names: Sequence[str]) -> list[str]:
    surfaces: list[str] = []
    for name in names:
        if surfaces:
            surfaces.append("ve")
        surfaces.append(name)
    return surfaces


def replace_mention(doc: Document, mention: PronounMention, names: Sequence[str]) -> Document:
    """Rewrite one pronoun as its antecedent names and drop it from the
    mention list; positions of later mentions shift accordingly."""
    if not names:
        raise ValueError("replacement needs at least one name")
    position = mention.position
    sentence = doc.sentence_index_of(position)
    sentence_surfaces = [
        [token.surface for token in doc.sentence_tokens(k)]
        for k in range(len(doc.sentences))
    ]
    local = position - doc.sentences[sentence].first
    inserted = _replacement_surfaces(names)
    if mention.overtness is Overtness.OVERT:
        sentence_surfaces[sentence][local:local + 1] = inserted
        delta = len(inserted) - 1
    else:
        sentence_surfaces[sentence][local:local] = inserted
        delta = len(inserted)

    order = {m.id: i for i, m in enumerate(doc.pronouns)}
    resolved_order = order[mention.id]
    remaining = []
    for other in doc.pronouns:
        if other.id == mention.id:
            continue
        shifts = other.position > position or (
            other.position == position and order[other.id] > resolved_order
        )
        if shifts and delta:
            other = dc_replace(other, position=other.position + delta)
        remaining.append(other)
    return assemble_document(sentence_surfaces, remaining)


_Chooser = Callable[
    [Document, PronounMention, list[Candidate], ResolutionHistory],
    list[ScoredCandidate],
]


def _pick(scored: Sequence[ScoredCandidate]) -> ScoredCandidate:
    # Survivors arrive anchored-ascending; >= keeps the most recent maximum,
    # so score ties fall back to recency.
    best = scored[0]
    for entry in scored[1:]:
        if entry.score >= best.score:
            best = entry
    return best


def _resolve_one(
    doc: Document,
    pronoun: PronounMention,
    dictionary: NameDictionary,
    scope: SearchScope,
    lexicon: Lexicon | None,
    history: ResolutionHistory,
    chooser: _Chooser,
) -> tuple[Resolution, Candidate | None]:
    survivors = constrained_candidates(doc, pronoun, dictionary, scope, lexicon)
    if not survivors:
        return Resolution(pronoun.id, None, None, ()), None
    scored = chooser(doc, pronoun, survivors, history)
    best = _pick(scored)
    resolution = Resolution(
        pronoun_id=pronoun.id,
        antecedent=best.candidate.base_names,
        score=best.score,
        trace=tuple(scored),
    )
    return resolution, best.candidate


def _preference_chooser(weights: PreferenceWeights, scope: SearchScope) -> _Chooser:
    def choose(doc, pronoun, survivors, history):
        scored = []
        for candidate in survivors:
            vector = feature_vector(doc, pronoun, candidate, survivors, history, scope)
            scored.append(ScoredCandidate(candidate, vector, score(vector, weights)))
        return scored

    return choose


def _recency_chooser(doc, pronoun, survivors, history):
    # Baseline: no preference scoring, the anchor order alone decides.
    return [ScoredCandidate(candidate, None, 0.0) for candidate in survivors]


def resolve_pronoun(
    doc: Document,
    pronoun: PronounMention,
    dictionary: NameDictionary,
    weights: PreferenceWeights = DEFAULT_WEIGHTS,
    history: ResolutionHistory | None = None,
    scope: SearchScope = SearchScope(),
    lexicon: Lexicon | None = None,
) -> Resolution:
    """Resolve a single pronoun against the current document state.

    Expects earlier pronouns to have been replaced already; the highest
    scoring survivor wins, ties go to the most recent anchor, and an empty
    survivor set reports the pronoun as ambiguous.
    """
    resolution, _candidate = _resolve_one(
        doc,
        pronoun,
        dictionary,
        scope,
        lexicon,
        history if history is not None else ResolutionHistory(),
        _preference_chooser(weights, scope),
    )
    return resolution


def _run_document(
    doc: Document,
    dictionary: NameDictionary,
    scope: SearchScope,
    lexicon: Lexicon | None,
    chooser: _Chooser,
) -> ResolvedDocument:
    work = doc
    history = ResolutionHistory()
    resolutions = []
    for pronoun_id in [mention.id for mention in doc.pronouns]:
        mention = next(m for m in work.pronouns if m.id == pronoun_id)
        resolution, candidate = _resolve_one(
            work, mention, dictionary, scope, lexicon, history, chooser
        )
        resolutions.append(resolution)
        if candidate is not None:
            mention_sentence = work.sentence_index_of(mention.position)
            work = replace_mention(
                work, mention, [member.base for member in candidate.members]
            )
            if mention.overtness is Overtness.ZERO:
                history.record(candidate.base_names, mention_sentence)
    return ResolvedDocument(tuple(resolutions), work)


def resolve_document(
    doc: Document,
    dictionary: NameDictionary,
    weights: PreferenceWeights = DEFAULT_WEIGHTS,
    scope: SearchScope = SearchScope(),
    lexicon: Lexicon | None = None,
) -> ResolvedDocument:
    """Resolve every pronoun left to right and paraphrase the document."""
    return _run_document(doc, dictionary, scope, lexicon, _preference_chooser(weights, scope))


def baseline_resolve_document(
    doc: Document,
    dictionary: NameDictionary,
    scope: SearchScope = SearchScope(),
    lexicon: Lexicon | None = None,
) -> ResolvedDocument:
    """Same pipeline, but selection always favours the most recent survivor."""
    return _run_document(doc, dictionary, scope, lexicon, _recency_chooser)


# ---------------------------------------------------------------------------
# Trace records: one tab-separated line per pronoun, machine-readable.

AMBIGUOUS_FIELD = "-"


@dataclass(frozen=True)
class TraceRecord:
    pronoun_id: int
    antecedent: frozenset[str] | None

    @property
    def resolved(self) -> bool:
        return self.antecedent is not None


def _format_candidate(entry: ScoredCandidate) -> str:
    names = ";".join(member.base for member in entry.candidate.members)
    bits = entry.vector.bits() if entry.vector is not None else AMBIGUOUS_FIELD
    return f"{names}:{bits}={entry.score:.4f}"


def format_trace(resolutions: Iterable[Resolution]) -> str:
    lines = []
    for resolution in resolutions:
        if resolution.resolved:
            fields = [
                str(resolution.pronoun_id),
                "resolved",
                ";".join(sorted(resolution.antecedent)),
                f"{resolution.score:.4f}",
                "|".join(_format_candidate(entry) for entry in resolution.trace),
            ]
        else:
            fields = [
                str(resolution.pronoun_id),
                "ambiguous",
                AMBIGUOUS_FIELD,
                AMBIGUOUS_FIELD,
                AMBIGUOUS_FIELD,
            ]
        lines.append("\t".join(fields))
    return "\n".join(lines) + ("\n" if lines else "")


def parse_trace(text: str) -> list[TraceRecord]:
    records = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        if not raw.strip():
            continue
        fields = raw.split("\t")
        if len(fields) != 5:
            raise ValueError(f"trace line {lineno}: expected 5 tab-separated fields")
        try:
            pronoun_id = int(fields[0])
        except ValueError:
            raise ValueError(f"trace line {lineno}: bad pronoun id {fields[0]!r}") from None
        outcome = fields[1]
        if outcome == "resolved":
            names = frozenset(fields[2].split(";"))
            if not names or "" in names:
                raise ValueError(f"trace line {lineno}: bad antecedent field")
            records.append(TraceRecord(pronoun_id, names))
        elif outcome == "ambiguous":
            records.append(TraceRecord(pronoun_id, None))
        else:
            raise ValueError(f"trace line {lineno}: unknown outcome {outcome!r}")
    return records
