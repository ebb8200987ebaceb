import pytest

from corpus import CorpusEntry, CorpusError, compare, load_manifest, lookup, outcome

RESULTS = {
    "conclusion": "Inconclusive",
    "ledger": [{"tag": "dimension", "status": "verified"}, {"tag": "gap", "status": "failed"}],
    "factors": {"1": 2, "4": 1},
    "vertices": [[0, 0], [4, 2]],
}


def test_lookup_walks_keys_and_indices():
    assert lookup(RESULTS, "ledger.1.status") == "failed"
    assert lookup(RESULTS, "vertices.1.0") == 4
    with pytest.raises(KeyError):
        lookup(RESULTS, "ledger.7.status")


def test_compare_normalises_keys_and_tuples():
    assert compare({"factors": {1: 2, 4: 1}, "vertices": [(0, 0), (4, 2)]}, RESULTS) == []
    mismatches = compare({"conclusion": "NoUlrichModules", "missing.key": 1}, RESULTS)
    assert len(mismatches) == 2
    assert mismatches[1] == "missing.key: missing from results"


def test_outcome_detail():
    entry = CorpusEntry(id="e", check="verdict", target="r.ring", expect={"conclusion": "Inconclusive"},
                        provenance="trivial")
    result = outcome(entry, RESULTS)
    assert result.passed
    assert result.detail == "conclusion='Inconclusive'"


def test_manifest_validation(tmp_path, corpus_dir):
    manifest = load_manifest(corpus_dir / "manifest.yaml")
    ids = [e.id for e in manifest.entries]
    assert len(ids) == len(set(ids))
    assert {e.provenance for e in manifest.entries} <= {"published", "derived", "trivial"}

    duplicate = tmp_path / "dup.yaml"
    duplicate.write_text(
        "entries:\n"
        "  - {id: a, check: dim, target: x.ring, expect: {krull_dim: 2}, provenance: trivial}\n"
        "  - {id: a, check: dim, target: y.ring, expect: {krull_dim: 2}, provenance: trivial}\n",
        encoding="utf-8")
    with pytest.raises(CorpusError):
        load_manifest(duplicate)
    with pytest.raises(CorpusError):
        load_manifest(tmp_path / "absent.yaml")


def test_unknown_provenance_rejected():
    with pytest.raises(ValueError):
        CorpusEntry(id="e", check="dim", target="r.ring", expect={}, provenance="folklore")
