import pytest

from bhcodes.analytics import is_self_dual, profile
from bhcodes.constructions import build_binary
from bhcodes.search import SearchConfig, SearchHit, dedupe_hits, fingerprint, run_search


def _cfg(**kw):
    base = dict(ring="F2", variant="general", n=3, seed=99, budget=6000, block_size=500,
                min_distance=4)
    base.update(kw)
    return SearchConfig(**base)


def _key(hits):
    return [(h.index, h.fingerprint) for h in hits]


def test_random_needs_seed():
    with pytest.raises(ValueError):
        SearchConfig("F2", "general", 3)


def test_exhaustive_budget_guard():
    with pytest.raises(ValueError):
        SearchConfig("F4U", "general", 2, mode="exhaustive", budget=1000)


def test_symmetric_needs_odd_n():
    with pytest.raises(ValueError):
        SearchConfig("F2", "symmetric", 2, seed=1)


def test_determinism_and_partitioning():
    one = run_search(_cfg(workers=1))
    assert one
    for workers in (2, 8):
        assert _key(run_search(_cfg(workers=workers))) == _key(one)
    assert _key(run_search(_cfg(workers=1))) == _key(one)


def test_exhaustive_symmetric_f2u():
    hits = run_search(SearchConfig("F2U", "symmetric", 1, mode="exhaustive", budget=10 ** 6,
                                   min_distance=2))
    assert hits
    assert all(is_self_dual(build_binary(h.recipe)) for h in hits)


def test_hits_reproduce_profiles():
    for h in run_search(_cfg())[:20]:
        assert profile(build_binary(h.recipe)) == h.profile
        assert h.profile.min_distance >= 4


def test_stepwise_matches_plain_exhaustive():
    common = dict(ring="F2", variant="amicable", n=3, mode="exhaustive", budget=10 ** 6,
                  min_distance=4)
    plain = run_search(SearchConfig(**common))
    step = run_search(SearchConfig(**common, stepwise=True))
    key = lambda h: tuple(v.to_text() for v in (h.recipe.r_a, h.recipe.r_b, h.recipe.r_c, h.recipe.r_d))
    assert sorted(map(key, plain)) == sorted(map(key, step))


def test_random_f4u_finds_table1_like_codes():
    hits = run_search(SearchConfig("F4U", "general", 2, seed=7, lambdas=[3], budget=30000,
                                   block_size=10000))
    assert hits
    for h in hits:
        assert h.profile.min_distance == 12 and is_self_dual(build_binary(h.recipe))
    assert any(h.profile.family == "W64_2" for h in hits)


def test_dedupe():
    hits = run_search(_cfg())
    uniq = dedupe_hits(hits)
    assert len({h.fingerprint for h in hits}) == len(uniq)
    assert dedupe_hits([]) == []
    h = hits[0]
    twin = SearchHit(h.index + 1, h.recipe, h.profile, h.fingerprint)
    assert dedupe_hits([h, twin]) == [h]


def test_family_filter():
    hits = run_search(SearchConfig("F4U", "general", 2, seed=7, lambdas=[3], budget=30000,
                                   block_size=10000, family="W64_2", params={"beta": 24}))
    assert all(h.profile.family == "W64_2" and h.profile.beta == 24 for h in hits)


def test_config_roundtrip():
    cfg = _cfg()
    assert SearchConfig.from_dict(cfg.to_dict()) == cfg


def test_record_shape():
    rec = run_search(_cfg())[0].record()
    assert {"variant", "ring", "rA", "rB", "rC", "rD", "profile"} <= set(rec)
