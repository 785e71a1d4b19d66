"""Perceptron (delta-rule) optimization of the preference weights.

Training instances come from gold-annotated documents: each pronoun whose
gold antecedent survives the constraints yields one instance holding the
survivors' feature vectors (ordered oldest anchor first, so the tie rule
"prefer the most recent" is simply "prefer the higher index").  Earlier
pronouns are replaced by their gold antecedents while instances are built,
so later feature vectors see the correct context.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .candidates import SearchScope, constrained_candidates
from .corpus import NameDictionary
from .morphology import Lexicon
from .resolver import replace_mention
from .scoring import (
    FEATURE_NAMES,
    PreferenceVector,
    PreferenceWeights,
    ResolutionHistory,
    feature_vector,
)
from .textmodel import Document, Overtness


@dataclass(frozen=True)
class TrainingInstance:
    pronoun_id: int
    vectors: tuple[PreferenceVector, ...]  # survivors, ascending anchor
    gold_index: int

    def __post_init__(self) -> None:
        if not self.vectors:
            raise ValueError("instance needs at least one survivor")
        if not 0 <= self.gold_index < len(self.vectors):
            raise ValueError("gold index out of range")


@dataclass(frozen=True)
class TrainConfig:
    learning_rate: float = 0.05
    max_epochs: int = 100
    initial_weights: PreferenceWeights = PreferenceWeights((1.0,) * len(FEATURE_NAMES))

    def __post_init__(self) -> None:
        if self.learning_rate < 0:
            raise ValueError("learning rate must be non-negative")
        if self.max_epochs < 1:
            raise ValueError("need at least one epoch")


@dataclass(frozen=True)
class TrainReport:
    epochs: int
    final_errors: int


def build_instances(
    corpus: list[Document],
    dictionary: NameDictionary,
    scope: SearchScope = SearchScope(),
    lexicon: Lexicon | None = None,
) -> tuple[list[TrainingInstance], int]:
    """Turn gold-annotated documents into training instances.

    Returns the instances plus the count of pronouns skipped because their
    gold antecedent did not survive the constraints.  Every pronoun must
    carry a gold link; a document without them is an error.
    """
    instances: list[TrainingInstance] = []
    skipped = 0
    for doc in corpus:
        if not any(m.gold_antecedent for m in doc.pronouns):
            raise ValueError("document carries no gold antecedent links")
        work = doc
        history = ResolutionHistory()
        for pronoun_id in [m.id for m in doc.pronouns]:
            mention = next(m for m in work.pronouns if m.id == pronoun_id)
            gold = mention.gold_antecedent
            if gold is None:
                raise ValueError(f"pronoun {pronoun_id} has no gold antecedent")
            survivors = constrained_candidates(work, mention, dictionary, scope, lexicon)
            gold_index = None
            for i, candidate in enumerate(survivors):
                if candidate.base_names == gold:
                    gold_index = i  # keep the most recent gold-matching survivor
            if gold_index is None:
                skipped += 1
            else:
                vectors = tuple(
                    feature_vector(work, mention, candidate, survivors, history, scope)
                    for candidate in survivors
                )
                instances.append(TrainingInstance(pronoun_id, vectors, gold_index))
            mention_sentence = work.sentence_index_of(mention.position)
            work = replace_mention(work, mention, sorted(gold))
            if mention.overtness is Overtness.ZERO:
                history.record(gold, mention_sentence)
    return instances, skipped


def _predict(weights: list[float], vectors: tuple[PreferenceVector, ...]) -> int:
    best_index = 0
    best_score = sum(w for flag, w in zip(vectors[0], weights) if flag)
    for i in range(1, len(vectors)):
        candidate_score = sum(w for flag, w in zip(vectors[i], weights) if flag)
        if candidate_score >= best_score:  # ties go to the most recent survivor
            best_index, best_score = i, candidate_score
    return best_index


def train(
    instances: list[TrainingInstance],
    config: TrainConfig = TrainConfig(),
) -> tuple[PreferenceWeights, TrainReport]:
    """Delta-rule training: on a miss, move the weights toward the gold
    survivor's features and away from the predicted one.

    Stops at the first zero-error epoch or at ``max_epochs``; deterministic
    given the instance order.
    """
    if not instances:
        raise ValueError("no training instances")
    weights = list(config.initial_weights.values)
    epochs_run = 0
    errors = 0
    for _epoch in range(config.max_epochs):
        errors = 0
        for instance in instances:
            predicted = _predict(weights, instance.vectors)
            if predicted != instance.gold_index:
                errors += 1
                gold_vector = instance.vectors[instance.gold_index]
                predicted_vector = instance.vectors[predicted]
                weights = [
                    w + config.learning_rate * (int(g) - int(p))
                    for w, g, p in zip(weights, gold_vector, predicted_vector)
                ]
        epochs_run += 1
        if errors == 0:
            break
    return PreferenceWeights(tuple(weights)), TrainReport(epochs_run, errors)
