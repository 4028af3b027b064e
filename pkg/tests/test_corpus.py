import random

import pytest

from lotkit.corpus import (
    CRITERIA, CaseResult, check_manifest, corpus_files, load, load_manifest, random_coxeter_edge, roundtrip_trees,
    run_corpus, tree_shapes,
)
from lotkit.lot import is_coxeter_type


def test_manifest_lists_every_corpus_file():
    m = load_manifest()
    assert m["version"] == 1
    assert sorted(m["files"]) == corpus_files()


@pytest.mark.parametrize("name", corpus_files())
def test_corpus_files_parse(name):
    assert load(name) is not None


def test_manifest_goldens():
    res = check_manifest()
    assert res.passed, [c for c in res.checks if not c[1]]
    assert len(res.checks) >= 20


@pytest.mark.parametrize("n,count", [(1, 1), (2, 1), (3, 1), (4, 2), (5, 3), (6, 6), (7, 11)])
def test_tree_shapes_are_isomorphism_classes(n, count):
    assert len(tree_shapes(n)) == count


def test_roundtrip_tree_count():
    # shapes x orientations x labels for n = 3: one shape, 4 orientations, 9 labellings
    trees = [g for g in roundtrip_trees(3, (1, 3, 5)) if len(g.vertices) == 3]
    assert len(trees) == 4 * 9
    assert len({g for g in trees}) == len(trees)


def test_random_edges_are_coxeter_type():
    rng = random.Random(0)
    for _ in range(200):
        lot = random_coxeter_edge(rng)
        assert is_coxeter_type(lot) and len(lot.edges[0].word) <= 12


def test_run_corpus_subset():
    results = run_corpus({1, 7})
    assert [r.criterion for r in results] == [1, 7]
    assert all(r.passed and r.seconds >= 0 for r in results)
    assert results[0].line().startswith("[PASS] criterion  1:")
    assert results[0].to_json()["checks"]


def test_known_golden_failures_are_reported():
    r = CRITERIA[1]()
    assert not r.passed
    assert "failed: w = y x y x gives m = 3" in r.line()
    r = CRITERIA[9]()
    assert not r.passed and "long-edge LOT" in r.line()


def test_case_result():
    r = CaseResult(99, "demo")
    assert r.check("ok", True) and not r.check("bad", 0, {"x": 1})
    assert r.line() == "[FAIL] criterion 99: demo (failed: bad)"
