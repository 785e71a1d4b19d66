from __future__ import annotations

from pathlib import Path

import pytest

from anafor import NameDictionary, load_dictionary

FIXTURES = Path(__file__).parent / "fixtures"

EXAMPLE_NAMES = (
    "Ayşe", "Ahmet", "Fatma", "Ali", "Zerrin", "Murat", "Zeynep", "Tekin", "Ayla",
)


def fixture_text(relative: str) -> str:
    return (FIXTURES / relative).read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def names9() -> NameDictionary:
    return load_dictionary(FIXTURES / "names9.txt")
