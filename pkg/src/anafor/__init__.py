"""Knowledge-poor pronoun resolution for annotated Turkish narrative text.

Links overt and zero third-person personal and reflexive pronouns to proper
person names using hard constraints (number agreement, reflexive locality,
personal-pronoun disjointness) and weighted surface preferences, with no
parser or semantic resources involved.
"""

from .textmodel import (
    Document,
    Number,
    Overtness,
    PronounKind,
    PronounMention,
    Sentence,
    Token,
    assemble_document,
    sentence_distance,
)
from .corpus import (
    NameDictionary,
    ParseError,
    load_dictionary,
    parse_document,
    serialize_document,
)
from .morphology import (
    Case,
    Lexicon,
    NameOccurrence,
    PronounForm,
    classify_pronoun,
    default_lexicon,
    is_nominative,
    match_name,
    turkish_lower,
    turkish_upper,
)
from .candidates import (
    Candidate,
    CandidateKind,
    SearchScope,
    apply_constraints,
    constrained_candidates,
    extract_candidates,
    generate_sets,
    scan_name_occurrences,
)
from .scoring import (
    DEFAULT_WEIGHTS,
    FEATURE_NAMES,
    PreferenceVector,
    PreferenceWeights,
    ResolutionHistory,
    feature_vector,
    load_weights,
    parse_weights,
    save_weights,
    score,
)
from .resolver import (
    Resolution,
    ResolvedDocument,
    ScoredCandidate,
    TraceRecord,
    baseline_resolve_document,
    format_trace,
    parse_trace,
    replace_mention,
    resolve_document,
    resolve_pronoun,
)
from .training import TrainConfig, TrainingInstance, TrainReport, build_instances, train
from .evaluation import Comparison, Metrics, compare, evaluate

__version__ = "0.1.0"

__all__ = [
    "Candidate",
    "CandidateKind",
    "Case",
    "Comparison",
    "DEFAULT_WEIGHTS",
    "Document",
    "FEATURE_NAMES",
    "Lexicon",
    "Metrics",
    "NameDictionary",
    "NameOccurrence",
    "Number",
    "Overtness",
    "ParseError",
    "PreferenceVector",
    "PreferenceWeights",
    "PronounForm",
    "PronounKind",
    "PronounMention",
    "Resolution",
    "ResolutionHistory",
    "ResolvedDocument",
    "ScoredCandidate",
    "SearchScope",
    "Sentence",
    "Token",
    "TraceRecord",
    "TrainConfig",
    "TrainReport",
    "TrainingInstance",
    "apply_constraints",
    "assemble_document",
    "baseline_resolve_document",
    "build_instances",
    "classify_pronoun",
    "compare",
    "constrained_candidates",
    "default_lexicon",
    "evaluate",
    "extract_candidates",
    "feature_vector",
    "format_trace",
    "generate_sets",
    "is_nominative",
    "load_dictionary",
    "load_weights",
    "match_name",
    "parse_document",
    "parse_trace",
    "parse_weights",
    "replace_mention",
    "resolve_document",
    "resolve_pronoun",
    "save_weights",
    "scan_name_occurrences",
    "score",
    "sentence_distance",
    "serialize_document",
    "train",
    "turkish_lower",
    "turkish_upper",
]
