# File: tests/test_codesearch.py
import itertools

import pytest

from msldpc_core.codecraft import build_code, is_orthogonal
from msldpc_core.codesearch import (
    CodesList,
    SearchConfig,
    SearchStats,
    _nondegenerate_spectrum,
    _period_masks,
    code_search,
    dedup_insert,
    is_nondegenerate,
    within_weight_bound,
)
from msldpc_core.errors import BudgetExceeded, ConfigError, ZeroPolynomial
from msldpc_core.msdomain import prepare_factor_set, subset_idempotent, subset_theta
from msldpc_core.polyring import BinaryPolynomial, max_cyclic_run
from msldpc_core.record import CodeRecord

P = BinaryPolynomial.from_text


def _search(n, r_min, d, delta=1, **kw):
    ctx, fs = prepare_factor_set(n)
    return code_search(SearchConfig(n=n, r_min=r_min, d=d, delta=delta, **kw), fs, ctx)


def _brute_force(n, r_min, d, delta):
    """Every subset checked directly against the bounds, no pruning."""
    _, fs = prepare_factor_set(n)
    cfg = SearchConfig(n=n, r_min=r_min, d=d, delta=delta)
    out = []
    for r in range(1, fs.t + 1):
        for I in itertools.combinations(range(1, fs.t + 1), r):
            deg = sum(fs.entry(i).degree for i in I)
            if not within_weight_bound(deg, n, delta):
                continue
            theta = subset_theta(I, fs)
            if theta.weight > cfg.max_theta_weight:
                continue
            run = max_cyclic_run(theta, n)
            if run <= d:
                continue
            u = subset_idempotent(I, fs)
            if not is_nondegenerate(u, n):
                continue
            out.append((u.weight, theta.weight, I, build_code(u, n).g))
    out.sort(key=lambda t: (t[0], t[1], t[2]))
    return [(I, g) for _, _, I, g in out]


def test_seven_three_codes():
    recs = _search(7, 0.4, 2, 1)
    assert [r.subset for r in recs] == [(2,), (3,)]
    assert [(r.n, r.k, r.weight, r.bch_bound) for r in recs] == [(7, 3, 3, 4), (7, 3, 3, 4)]
    assert [r.g.to_text() for r in recs] == ["1+x+x^2+x^4", "1+x^2+x^3+x^4"]
    assert recs[0].u == P("x+x^2+x^4")
    assert recs[1].u == P("x^3+x^5+x^6")
    assert all(r.orthogonal for r in recs)


def test_hamming_code_needs_more_slack():
    recs = _search(7, 0.4, 1, 2)
    assert [r.subset for r in recs] == [(2,), (3,), (1, 2), (1, 3)]
    ham = recs[2]
    assert ham.k == 4
    assert ham.u == P("1+x+x^2+x^4")
    assert ham.theta == P("z^3+z^5+z^6")
    assert ham.g == P("1+x+x^3")
    assert ham.bch_bound == 3
    assert not ham.orthogonal


def test_nothing_below_the_weight_bound():
    assert _search(7, 0.5, 2, 0) == []


def test_difference_set_codes_at_n21():
    recs = _search(21, 0.5, 4, 1)
    dsc = [r for r in recs if r.k == 11 and r.weight == 5]
    assert {r.subset for r in dsc} == {(2, 3), (2, 4)}
    for r in dsc:
        assert r.orthogonal
        assert r.bch_bound == 6
        assert r.r_theta == 5
    assert _search(21, 0.5, 5, 1) == []
    assert _search(21, 0.5, 4, 0) == []


def test_unreachable_bounds_give_empty_result():
    assert _search(9, 0.9, 20, 1) == []


@pytest.mark.parametrize("n, r_min, d, delta", [
    (7, 0.0, 1, 3),
    (15, 0.3, 2, 1),
    (15, 0.0, 1, 4),
    (21, 0.4, 3, 2),
    (21, 0.0, 1, 1),
])
def test_search_matches_brute_force(n, r_min, d, delta):
    recs = _search(n, r_min, d, delta)
    assert [(r.subset, r.g) for r in recs] == _brute_force(n, r_min, d, delta)


def test_records_honor_their_bounds():
    n, r_min, d, delta = 63, 0.4, 3, 2
    for r in _search(n, r_min, d, delta):
        assert within_weight_bound(r.weight, n, delta)
        assert r.k >= r_min * n
        assert r.r_theta > d
        assert r.bch_bound == r.r_theta + 1
        assert r.k == build_code(r.u, n).k
        assert r.orthogonal == is_orthogonal(r.u, n)
        assert is_nondegenerate(r.u, n)


def test_output_independent_of_worker_count():
    one = _search(63, 0.3, 2, 2, workers=1)
    many = _search(63, 0.3, 2, 2, workers=4)
    assert [r.to_json() for r in one] == [r.to_json() for r in many]


def test_max_results_truncates_sorted_output():
    full = _search(21, 0.0, 1, 2)
    assert len(full) > 2
    assert _search(21, 0.0, 1, 2, max_results=2) == full[:2]


def test_budget_overrun_returns_partial_results():
    ctx, fs = prepare_factor_set(63)
    cfg = SearchConfig(n=63, r_min=0.0, d=1, delta=2, budget=5)
    with pytest.raises(BudgetExceeded) as ei:
        code_search(cfg, fs, ctx)
    assert ei.value.nodes > 5
    assert ei.value.partial == sorted(ei.value.partial, key=lambda r: r.sort_key())


def test_on_record_and_stats():
    ctx, fs = prepare_factor_set(7)
    seen = []
    stats = SearchStats()
    recs = code_search(SearchConfig(n=7, r_min=0.4, d=1, delta=2), fs, ctx, on_record=seen.append, stats=stats)
    assert sorted(seen, key=lambda r: r.sort_key()) == recs
    assert stats.records == 4
    assert stats.nodes >= 4
    assert stats.truncated is False


def test_dedup_by_generator():
    recs = _search(7, 0.4, 2, 1)
    codes = CodesList()
    assert dedup_insert(recs[0], codes)
    twin = CodeRecord(
        n=7, k=3, subset=(1, 2), u=recs[0].u, theta=recs[0].theta, g=recs[0].g,
        bch_bound=4, r_theta=3, orthogonal=True,
    )
    assert not dedup_insert(twin, codes)
    assert len(codes) == 1
    assert recs[0].dedup_key in codes


def test_weight_bound_ties_are_exact():
    assert within_weight_bound(4, 9, 1)      # 4 <= 3 + 1
    assert not within_weight_bound(5, 9, 1)
    assert within_weight_bound(2, 7, 0)
    assert not within_weight_bound(3, 7, 0)
    assert within_weight_bound(1, 7, 5)


def test_nondegenerate_examples():
    assert is_nondegenerate(P("1+x+x^2+x^4"), 7)
    assert not is_nondegenerate(P("1+x^3+x^6"), 9)
    assert not is_nondegenerate(BinaryPolynomial.all_ones(15), 15)
    assert not is_nondegenerate(P("1"), 7)
    with pytest.raises(ZeroPolynomial):
        is_nondegenerate(BinaryPolynomial(), 7)


@pytest.mark.parametrize("n", [9, 15, 21, 45])
def test_spectral_nondegeneracy_agrees_with_polynomial_test(n):
    _, fs = prepare_factor_set(n)
    masks = _period_masks(n)
    for r in range(1, fs.t + 1):
        for I in itertools.combinations(range(1, fs.t + 1), r):
            u = subset_idempotent(I, fs)
            theta = subset_theta(I, fs)
            assert _nondegenerate_spectrum(theta.bits, n, masks) == is_nondegenerate(u, n), I


@pytest.mark.parametrize("kwargs", [
    dict(n=8, r_min=0.5, d=2),
    dict(n=1, r_min=0.5, d=2),
    dict(n=7, r_min=1.0, d=2),
    dict(n=7, r_min=0.5, d=0),
    dict(n=7, r_min=0.5, d=2, delta=-1),
    dict(n=7, r_min=0.5, d=2, colour="red"),
])
def test_search_config_validation(kwargs):
    with pytest.raises(ConfigError):
        SearchConfig(**kwargs)


def test_search_config_workers_default_from_env(monkeypatch):
    monkeypatch.setenv("MSLDPC_SEARCH_WORKERS", "3")
    assert SearchConfig(n=7, r_min=0.5, d=2).workers == 3
