"""Cached pipeline results shared between test modules."""

from __future__ import annotations

from functools import lru_cache

from howessp.howe_search import enumerate_howe
from howessp.isomorphism import classify
from howessp.pipeline import analyze_all

#: criterion id -> one-line verdict, filled by test_acceptance and printed by conftest
ACCEPTANCE_LINES: dict[str, str] = {}


@lru_cache(maxsize=None)
def howe_set(p: int):
    return tuple(enumerate_howe(p))


@lru_cache(maxsize=None)
def analyses(p: int):
    return tuple(analyze_all(list(howe_set(p))))


@lru_cache(maxsize=None)
def classification(p: int):
    return classify([a.ram_tuples() for a in analyses(p)])
