"""Suffix-based morphological heuristics, no parser required.

Two jobs live here: classifying pronoun surface forms against a closed
inflection lexicon, and analysing proper-name tokens (gazetteer match plus
case / plurality / copula flags read off the post-apostrophe suffix).

Both the pronoun lexicon and the suffix tables ship as an editable data
file (``data/lexicon.txt``); see :meth:`Lexicon.from_text` for the format.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources
from typing import TYPE_CHECKING, Mapping

from .textmodel import Number, PronounKind

if TYPE_CHECKING:
    from .corpus import NameDictionary
    from .textmodel import Token

APOSTROPHES = ("'", "’")

_SECTION_RE = re.compile(r"\[(pronoun|suffix)\s+([^\]]+)\]\s*$")


def turkish_lower(text: str) -> str:
    """Lowercase with Turkish dotted/dotless i handling (İ->i, I->ı)."""
    return text.replace("İ", "i").replace("I", "ı").lower()


def turkish_upper(text: str) -> str:
    """Uppercase with Turkish dotted/dotless i handling (i->İ, ı->I)."""
    return text.replace("i", "İ").replace("ı", "I").upper()


class Case(enum.Enum):
    NOMINATIVE = "nom"
    OBLIQUE = "obl"


@dataclass(frozen=True)
class PronounForm:
    lemma: str
    kind: PronounKind
    number: Number


@dataclass(frozen=True)
class NameOccurrence:
    """A gazetteer name matched at one token position."""

    base: str
    token_index: int
    case: Case
    plural_suffix: bool
    copular_suffix: bool


@dataclass(frozen=True)
class Lexicon:
    """Closed pronoun inflection lexicon plus name-suffix tables."""

    pronoun_forms: Mapping[str, PronounForm]  # keys are turkish_lower surfaces
    case_markers: frozenset[str]
    plural_prefixes: frozenset[str]
    copula_suffixes: frozenset[str]

    @classmethod
    def from_text(cls, text: str) -> "Lexicon":
        """Parse the lexicon file format.

        Sections are ``[pronoun LEMMA KIND NUMBER]`` (KIND pers|refl,
        NUMBER sg|pl) and ``[suffix case|plural|copula]``; each section
        lists one form per line.  ``#`` starts a comment.
        """
        forms: dict[str, PronounForm] = {}
        tables: dict[str, set[str]] = {"case": set(), "plural": set(), "copula": set()}
        current: PronounForm | str | None = None
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            match = _SECTION_RE.match(line)
            if match:
                section_kind, payload = match.group(1), match.group(2).split()
                if section_kind == "pronoun":
                    if len(payload) != 3:
                        raise ValueError(f"lexicon line {lineno}: bad pronoun section header")
                    lemma, kind_value, number_value = payload
                    try:
                        current = PronounForm(
                            lemma=lemma,
                            kind=PronounKind(kind_value),
                            number=Number(number_value),
                        )
                    except ValueError as exc:
                        raise ValueError(f"lexicon line {lineno}: {exc}") from None
                else:
                    if len(payload) != 1 or payload[0] not in tables:
                        raise ValueError(f"lexicon line {lineno}: bad suffix section header")
                    current = payload[0]
                continue
            if current is None:
                raise ValueError(f"lexicon line {lineno}: entry outside any section")
            if isinstance(current, PronounForm):
                key = turkish_lower(line)
                if key in forms:
                    raise ValueError(f"lexicon line {lineno}: duplicate pronoun form {line!r}")
                forms[key] = current
            else:
                tables[current].add(turkish_lower(line))
        if not forms:
            raise ValueError("lexicon defines no pronoun forms")
        for name, table in tables.items():
            if not table:
                raise ValueError(f"lexicon defines no [suffix {name}] entries")
        return cls(
            pronoun_forms=dict(forms),
            case_markers=frozenset(tables["case"]),
            plural_prefixes=frozenset(tables["plural"]),
            copula_suffixes=frozenset(tables["copula"]),
        )

    @classmethod
    def from_file(cls, path) -> "Lexicon":
        with open(path, encoding="utf-8") as handle:
            return cls.from_text(handle.read())


@lru_cache(maxsize=1)
def default_lexicon() -> Lexicon:
    text = resources.files("anafor").joinpath("data/lexicon.txt").read_text("utf-8")
    return Lexicon.from_text(text)


def classify_pronoun(surface: str, lexicon: Lexicon | None = None) -> PronounForm | None:
    """Match a surface form against the pronoun lexicon; None if no match.

    Matching is case-insensitive under Turkish casing, so sentence-initial
    forms like ``Onu`` classify the same as ``onu``.
    """
    lexicon = lexicon or default_lexicon()
    return lexicon.pronoun_forms.get(turkish_lower(surface))


def _split_apostrophe(surface: str) -> tuple[str, str]:
    cut = min((i for i in (surface.find(a) for a in APOSTROPHES) if i >= 0), default=-1)
    if cut < 0:
        return surface, ""
    return surface[:cut], surface[cut + 1:]


def _analyze_suffix(suffix: str, lexicon: Lexicon) -> tuple[Case, bool, bool]:
    """Classify a post-apostrophe suffix into (case, plural, copular).

    Longest-match: an optional plural prefix, an optional copula in final
    position, and the remainder must then be empty or exactly one case
    marker.  Anything unrecognized counts as oblique, never nominative.
    """
    rest = turkish_lower(suffix)
    if not rest:
        return Case.NOMINATIVE, False, False
    plural = False
    for prefix in sorted(lexicon.plural_prefixes, key=len, reverse=True):
        if rest.startswith(prefix):
            plural = True
            rest = rest[len(prefix):]
            break
    copular = False
    for copula in sorted(lexicon.copula_suffixes, key=len, reverse=True):
        if rest.endswith(copula):
            copular = True
            rest = rest[:-len(copula)]
            break
    has_case = False
    if rest and rest in lexicon.case_markers:
        has_case = True
        rest = ""
    nominative = not (has_case or copular or rest)
    return (Case.NOMINATIVE if nominative else Case.OBLIQUE), plural, copular


def match_name(
    token: "Token",
    dictionary: "NameDictionary",
    lexicon: Lexicon | None = None,
) -> NameOccurrence | None:
    """Match a token against the name gazetteer; None if it is not a name.

    The base is the token surface up to the first apostrophe (or the whole
    token) and must equal a dictionary entry exactly, Turkish casing
    included.  Surfaces in the pronoun lexicon never match, even when a
    same-spelled dictionary entry exists.
    """
    lexicon = lexicon or default_lexicon()
    if turkish_lower(token.surface) in lexicon.pronoun_forms:
        return None
    base, suffix = _split_apostrophe(token.surface)
    if not base or base not in dictionary:
        return None
    case, plural, copular = _analyze_suffix(suffix, lexicon)
    return NameOccurrence(
        base=base,
        token_index=token.index,
        case=case,
        plural_suffix=plural,
        copular_suffix=copular,
    )


def is_nominative(occurrence: NameOccurrence) -> bool:
    """True when the occurrence carries neither a case marker nor a copula."""
    return occurrence.case is Case.NOMINATIVE
