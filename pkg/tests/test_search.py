import itertools
import json

import pytest

from rankmetric.codes import code_from_json, gabidulin
from rankmetric.criteria import detect_gabidulin, is_mrd_distance, is_mrd_minor
from rankmetric.errors import BadShard, BudgetExceeded, EntryInBaseField
from rankmetric.gf import default_field, make_field
from rankmetric.linalg import rank_q
from rankmetric.search import (
    MRD_GABIDULIN,
    MRD_NON_GABIDULIN,
    NON_MRD,
    SearchSpace,
    _candidates,
    classify_candidate,
    merge_reports,
    report_exemplars_from_json,
    run_search,
)

from conftest import MOD_Q3_M4


@pytest.fixture(scope="module")
def full_q2(f24):
    return run_search(SearchSpace(f24, 4, 2))


# -- candidate order ---------------------------------------------------------------------

def test_candidate_indexing(f24):
    sp = SearchSpace(f24, 4, 2)
    assert sp.radix == 14 and sp.cell_count == 14**4 == 38416
    assert sp.candidate(0) == ((2, 2), (2, 2))
    assert sp.candidate(1) == ((2, 2), (2, 3))
    assert sp.candidate(14) == ((2, 2), (3, 2))
    assert sp.candidate(38415) == ((15, 15), (15, 15))
    for idx in (0, 1, 777, 38415):
        assert sp.candidate_index(sp.candidate(idx)) == idx
    cands = [sp.candidate(i) for i in range(200)]
    assert cands == sorted(cands)


def test_space_validation(f24):
    with pytest.raises(BadShard):
        SearchSpace(f24, 4, 2, shard=(4, 4))
    with pytest.raises(BadShard):
        SearchSpace(f24, 4, 2, shard=(0, 0))
    with pytest.raises(ValueError):
        SearchSpace(f24, 4, 4)
    with pytest.raises(ValueError):
        SearchSpace(f24, 4, 2, mode="random")
    with pytest.raises(BudgetExceeded):
        run_search(SearchSpace(default_field(3, 5), 5, 2))


# -- single candidates ----------------------------------------------------------------------

def test_classify_ex1():
    F = make_field(3, 4, MOD_Q3_M4)
    a = F.alpha
    X = [[a, F.mul(a, a)], [F.mul(a, a), F.mul(2, a)]]
    c = classify_candidate(F, 4, 2, X)
    assert c.label == MRD_NON_GABIDULIN and c.mrd.is_mrd and not c.gabidulin.is_generalized_gabidulin


def test_classify_equal_entries_non_mrd(f34):
    c = classify_candidate(f34, 4, 2, [[5, 5], [5, 5]])
    assert c.label == NON_MRD
    assert rank_q(f34, [1, f34.neg(1), 0, 0]) <= 2
    assert not is_mrd_distance(c.code).is_mrd


def test_classify_gabidulin_systematic(f34):
    g = [f34.pow(f34.alpha, j) for j in range(4)]
    S = gabidulin(f34, g, 2).systematic
    c = classify_candidate(f34, 4, 2, [r[2:] for r in S.rows])
    assert c.label == MRD_GABIDULIN


def test_classify_rejects_base_entries(f34):
    with pytest.raises(EntryInBaseField):
        classify_candidate(f34, 4, 2, [[5, 1], [5, 5]])


# -- exhaustive q=2, m=4 -------------------------------------------------------------------

def test_prop_q2_reproduction(full_q2):
    c = full_q2.counts
    assert c["candidates_scanned"] == 38416
    assert c[MRD_NON_GABIDULIN] == 0
    assert c[NON_MRD] + c[MRD_GABIDULIN] + c[MRD_NON_GABIDULIN] == c["candidates_scanned"]
    assert full_q2.exemplars == []


def test_mrd_count_equals_number_of_gabidulin_codes(f24, full_q2):
    """Independent oracle: every generalized Gabidulin [4,2] code over F_16 from its Moore matrix."""
    F = f24
    codes = set()
    for g in itertools.product(range(1, 16), repeat=4):
        if rank_q(F, g) < 4:
            continue
        for s in (1, 3):
            codes.add(gabidulin(F, g, 2, s).canonical.rows)
    assert full_q2.counts[MRD_GABIDULIN] == len(codes)


@pytest.mark.parametrize("T", [1, 4, 7])
def test_shard_sum_consistency(f24, full_q2, T):
    parts = [run_search(SearchSpace(f24, 4, 2, shard=(i, T))) for i in range(T)]
    assert sum(p.counts["candidates_scanned"] for p in parts) == 38416
    merged = merge_reports(parts)
    assert merged.counts == full_q2.counts
    assert merged.shards == [(i, T) for i in range(T)]


def test_jobs_match_single_process(f24):
    space = SearchSpace(f24, 4, 2, shard=(1, 5))
    a = run_search(space)
    b = run_search(space, jobs=2)
    assert a.counts == b.counts and b.shards == [(1, 5)]


# -- random mode ---------------------------------------------------------------------------

def test_random_zero_samples(f34):
    r = run_search(SearchSpace(f34, 4, 2, mode="random", seed=1, sample_count=0))
    assert all(v == 0 for v in r.counts.values())


def test_random_determinism_and_sharding(f34):
    sp = SearchSpace(f34, 4, 2, mode="random", seed=42, sample_count=500)
    a, b = run_search(sp), run_search(sp)
    assert a.counts == b.counts
    parts = [run_search(sp.with_shard(i, 3)) for i in range(3)]
    assert merge_reports(parts).counts == a.counts


def test_random_q3m4_with_injected_ex1():
    F = make_field(3, 4, MOD_Q3_M4)
    a = F.alpha
    X = ((a, F.mul(a, a)), (F.mul(a, a), F.mul(2, a)))
    r = run_search(SearchSpace(F, 4, 2, mode="random", seed=42, sample_count=3000, include=(X,)))
    assert r.included[0].label == MRD_NON_GABIDULIN
    assert r.counts["candidates_scanned"] == 3000
    assert r.counts[MRD_NON_GABIDULIN] >= 1


def test_classification_agrees_with_distance_checker():
    F = make_field(3, 4, MOD_Q3_M4)
    sp = SearchSpace(F, 4, 2, mode="random", seed=5, sample_count=1000)
    for X in _candidates(sp):
        c = classify_candidate(F, 4, 2, X)
        assert (c.label != NON_MRD) == is_mrd_distance(c.code).is_mrd


def test_exemplars_reverify_from_json():
    F = make_field(3, 4, MOD_Q3_M4)
    r = run_search(SearchSpace(F, 4, 2, mode="random", seed=3, sample_count=400, max_exemplars=5))
    obj = json.loads(json.dumps(r.to_json()))
    ex = report_exemplars_from_json(obj)
    assert 1 <= len(ex) <= 5
    assert len({c.canonical.rows for c in ex}) == len(ex)
    for c in ex:
        assert is_mrd_minor(c).is_mrd
        assert not detect_gabidulin(c).is_generalized_gabidulin
    assert obj["parameters"]["seed"] == 3 and obj["counts"]["candidates_scanned"] == 400
    assert code_from_json(obj["exemplars"][0]) == ex[0]
