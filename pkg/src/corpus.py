"""
Golden corpus: manifest model and expected-value comparison.

Each entry names a check, its target (a presentation file relative to the
corpus directory, or inline text for polynomial checks), the arguments, the
expected result fields and where the expected values come from.
"""

from pathlib import Path
from typing import Any, Dict, List, Literal, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field

from algebra.errors import AlgebraError


class CorpusError(AlgebraError):
    """The corpus itself is unusable, or one of its entries raised."""


class CorpusEntry(BaseModel):
    model_config = ConfigDict(extra="forbid")

    id: str
    check: str
    target: str
    args: Dict[str, Any] = Field(default_factory=dict)
    expect: Dict[str, Any]
    provenance: Literal["published", "derived", "trivial"]
    reference: str = ""
    experimental: bool = False


class CorpusManifest(BaseModel):
    model_config = ConfigDict(extra="forbid")

    entries: List[CorpusEntry]


class EntryOutcome(BaseModel):
    id: str
    check: str
    provenance: str
    reference: str
    experimental: bool
    passed: bool
    mismatches: List[str]
    detail: str


def load_manifest(path: Union[str, Path]) -> CorpusManifest:
    path = Path(path)
    if not path.is_file():
        raise CorpusError(f"corpus manifest not found: {path}")
    with open(path, "r", encoding="utf-8") as f:
        raw = yaml.safe_load(f) or {}
    manifest = CorpusManifest.model_validate(raw)
    if not manifest.entries:
        raise CorpusError(f"corpus manifest {path} has no entries")
    ids = [e.id for e in manifest.entries]
    duplicates = sorted({i for i in ids if ids.count(i) > 1})
    if duplicates:
        raise CorpusError(f"duplicate corpus ids: {', '.join(duplicates)}")
    return manifest


def lookup(results: Dict[str, Any], dotted: str) -> Any:
    """``a.b.0`` walks dict keys and list indices."""
    value: Any = results
    for part in dotted.split("."):
        if isinstance(value, dict) and part in value:
            value = value[part]
        elif isinstance(value, list) and part.isdigit() and int(part) < len(value):
            value = value[int(part)]
        else:
            raise KeyError(dotted)
    return value


def _normalise(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return [_normalise(v) for v in value]
    if isinstance(value, dict):
        return {str(k): _normalise(v) for k, v in value.items()}
    return value


def compare(expect: Dict[str, Any], results: Dict[str, Any]) -> List[str]:
    mismatches = []
    for key, wanted in expect.items():
        try:
            actual = lookup(results, key)
        except KeyError:
            mismatches.append(f"{key}: missing from results")
            continue
        if _normalise(actual) != _normalise(wanted):
            mismatches.append(f"{key}: expected {wanted!r}, got {actual!r}")
    return mismatches


def outcome(entry: CorpusEntry, results: Dict[str, Any]) -> EntryOutcome:
    mismatches = compare(entry.expect, results)
    shown = ", ".join(f"{k}={lookup(results, k)!r}" for k in entry.expect if not _missing(results, k))
    return EntryOutcome(
        id=entry.id,
        check=entry.check,
        provenance=entry.provenance,
        reference=entry.reference,
        experimental=entry.experimental,
        passed=not mismatches,
        mismatches=mismatches,
        detail="; ".join(mismatches) if mismatches else shown,
    )


def _missing(results: Dict[str, Any], key: str) -> bool:
    try:
        lookup(results, key)
    except KeyError:
        return True
    return False
