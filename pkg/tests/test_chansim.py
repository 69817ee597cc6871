# File: tests/test_chansim.py
import io
import warnings

import numpy as np
import pytest

from msldpc_core.chansim import (
    ChannelConfig,
    DecoderConfig,
    bp_decode,
    bpsk_awgn_llr,
    simulate_fer,
    uncoded_fer,
    write_csv,
)
from msldpc_core.codecraft import build_code, parity_check_matrix
from msldpc_core.decoder_base import TannerGraph
from msldpc_core.decoder_registry import default_registry
from msldpc_core.errors import ConfigError, InconsistentParityCheck, LengthMismatch
from msldpc_core.polyring import BinaryPolynomial
from msldpc_core.reference_codes import find_reference

HAMMING_U = BinaryPolynomial.from_text("1+x+x^2+x^4")


def _hamming():
    code = build_code(HAMMING_U, 7)
    return code, parity_check_matrix(HAMMING_U, 7)


def test_noise_variance():
    assert ChannelConfig(ebn0_db=0.0, rate=0.5).sigma2 == pytest.approx(1.0)
    assert ChannelConfig(ebn0_db=10.0, rate=0.5).sigma2 == pytest.approx(0.1)


def test_channel_config_validation():
    with pytest.raises(ConfigError):
        ChannelConfig(ebn0_db=1.0, rate=0.0)
    with pytest.raises(ConfigError):
        ChannelConfig(ebn0_db=1.0, rate=0.5, seed=-1)


def test_llr_signs_follow_bits_at_high_snr():
    cw = np.array([0, 1, 1, 0, 1, 0, 0], dtype=np.uint8)
    llr = bpsk_awgn_llr(cw, ChannelConfig(ebn0_db=60.0, rate=0.5, seed=1))
    assert np.array_equal(llr < 0, cw.astype(bool))


def test_llr_is_reproducible_from_seed():
    cw = np.zeros(31, dtype=np.uint8)
    ch = ChannelConfig(ebn0_db=2.0, rate=0.5, seed=9)
    assert np.array_equal(bpsk_awgn_llr(cw, ch), bpsk_awgn_llr(cw, ch))


def test_noiseless_frame_needs_no_iterations():
    _, H = _hamming()
    res = bp_decode(H, np.full(7, 10.0), DecoderConfig())
    assert res.converged is True
    assert res.iterations == 0
    assert not res.estimate.any()


@pytest.mark.parametrize("algorithm", ["spa", "minsum"])
def test_single_error_is_corrected(algorithm):
    _, H = _hamming()
    cfg = DecoderConfig(algorithm=algorithm, max_iterations=20)
    for p in range(7):
        llr = np.full(7, 5.0)
        llr[p] = -5.0
        res = bp_decode(H, llr, cfg)
        assert res.converged is True
        assert not res.estimate.any()
        assert res.iterations >= 1


def test_converged_frames_satisfy_every_check():
    ref = find_reference(93, 47)
    H = parity_check_matrix(ref.u, ref.n)
    graph = TannerGraph.of(H)
    cw = np.zeros((64, ref.n), dtype=np.uint8)
    rng = np.random.default_rng(3)
    llr = bpsk_awgn_llr(cw, ChannelConfig(ebn0_db=2.0, rate=ref.k / ref.n), rng)
    out = default_registry().get("spa").decode_batch(graph, llr, DecoderConfig(max_iterations=30))
    dense = H.to_dense().astype(np.int64)
    synd = (out.estimates.astype(np.int64) @ dense.T) & 1
    assert not synd[out.converged].any()
    assert np.all(out.iterations <= 30)


def test_decode_rejects_wrong_length():
    _, H = _hamming()
    with pytest.raises(LengthMismatch):
        bp_decode(H, np.zeros(8), DecoderConfig())


def test_simulation_is_error_free_at_high_snr():
    code, H = _hamming()
    [res] = simulate_fer(code, H, [ChannelConfig(ebn0_db=20.0, rate=4 / 7)], max_frames=10_000)
    assert res.frames == 10_000
    assert res.frame_errors == 0
    assert res.fer == 0.0
    assert res.avg_iterations == pytest.approx(0.0)


def test_simulation_stops_at_error_target():
    code, H = _hamming()
    [res] = simulate_fer(code, H, [ChannelConfig(ebn0_db=0.0, rate=4 / 7)],
                         min_frame_errors=100, max_frames=100_000, batch_size=64)
    assert res.frame_errors == 100
    assert res.frames < 100_000


def test_simulation_is_deterministic_for_a_seed():
    code, H = _hamming()
    points = [ChannelConfig(ebn0_db=s, rate=4 / 7, seed=5) for s in (1.0, 3.0)]
    a = simulate_fer(code, H, points, max_frames=2000)
    b = simulate_fer(code, H, points, max_frames=2000)
    assert [r.csv_row() for r in a] == [r.csv_row() for r in b]


@pytest.mark.parametrize("random_codewords", [False, True])
def test_batch_size_does_not_change_results(random_codewords):
    code, H = _hamming()
    points = [ChannelConfig(ebn0_db=s, rate=4 / 7, seed=3) for s in (1.0, 4.0)]
    kw = dict(min_frame_errors=30, max_frames=512, random_codewords=random_codewords)
    rows = {
        b: [r.csv_row() for r in simulate_fer(code, H, points, batch_size=b, **kw)]
        for b in (7, 64, 256)
    }
    assert rows[7] == rows[64] == rows[256]


def test_batch_size_from_environment_does_not_change_results(monkeypatch):
    code, H = _hamming()
    ch = [ChannelConfig(ebn0_db=1.0, rate=4 / 7, seed=3)]
    monkeypatch.setenv("MSLDPC_SIM_BATCH", "64")
    [a] = simulate_fer(code, H, ch, max_frames=512)
    monkeypatch.setenv("MSLDPC_SIM_BATCH", "256")
    [b] = simulate_fer(code, H, ch, max_frames=512)
    assert a.csv_row() == b.csv_row()


def test_fer_decreases_with_snr():
    code, H = _hamming()
    points = [ChannelConfig(ebn0_db=s, rate=4 / 7, seed=2) for s in (1.0, 5.0)]
    low, high = simulate_fer(code, H, points, min_frame_errors=10**9, max_frames=20_000)
    assert high.fer <= low.fer


def test_random_codewords_match_all_zero():
    code, H = _hamming()
    ch = [ChannelConfig(ebn0_db=3.0, rate=4 / 7, seed=11)]
    kw = dict(min_frame_errors=10**9, max_frames=20_000)
    [zero] = simulate_fer(code, H, ch, **kw)
    [rand] = simulate_fer(code, H, ch, random_codewords=True, **kw)
    assert abs(zero.fer - rand.fer) < 0.02


# Ceilings for sum-product on the full (127,84) circulant; FER stays well below them.
FER_CEILING_127_84 = {2.0: 0.9, 3.0: 0.5, 4.0: 0.1}


@pytest.mark.slow
def test_ldpc_code_beats_uncoded_transmission():
    ref = find_reference(127, 84)
    code = build_code(ref.u, ref.n)
    H = parity_check_matrix(ref.u, ref.n)
    points = [ChannelConfig(ebn0_db=s, rate=code.rate, seed=0) for s in FER_CEILING_127_84]
    results = simulate_fer(code, H, points, min_frame_errors=100, max_frames=100_000)
    for r in results:
        assert r.frame_errors == 100 or r.frames == 100_000
        assert r.fer < FER_CEILING_127_84[r.ebn0_db]
    fers = [r.fer for r in results]
    assert fers[0] >= fers[1] >= fers[2]
    assert fers[2] < uncoded_fer(4.0, code.k)


def test_full_and_reduced_matrices_decode_the_same_code():
    ref = find_reference(93, 47)
    code = build_code(ref.u, ref.n)
    H = parity_check_matrix(ref.u, ref.n)
    ch = [ChannelConfig(ebn0_db=3.0, rate=code.rate, seed=4)]
    [full] = simulate_fer(code, H, ch, min_frame_errors=10**9, max_frames=1000)
    [reduced] = simulate_fer(code, H.reduced(code.k), ch, min_frame_errors=10**9, max_frames=1000)
    assert full.frames == reduced.frames == 1000
    if full.fer > reduced.fer:
        warnings.warn(f"full circulant FER {full.fer:.3e} above reduced {reduced.fer:.3e}")


def test_simulation_rejects_foreign_parity_checks():
    code, _ = _hamming()
    other = parity_check_matrix(BinaryPolynomial.from_text("x+x^2+x^4"), 7)
    with pytest.raises(InconsistentParityCheck):
        simulate_fer(code, other, [ChannelConfig(ebn0_db=3.0, rate=4 / 7)], max_frames=10)


def test_uncoded_fer():
    p = uncoded_fer(4.0, 1)
    assert 0.0 < p < 0.05
    assert uncoded_fer(4.0, 84) == pytest.approx(1 - (1 - p) ** 84)
    assert uncoded_fer(2.0, 84) > uncoded_fer(4.0, 84)


def test_csv_output():
    code, H = _hamming()
    results = simulate_fer(code, H, [ChannelConfig(ebn0_db=20.0, rate=4 / 7)], max_frames=256)
    buf = io.StringIO()
    write_csv(results, buf)
    lines = buf.getvalue().splitlines()
    assert lines[0] == "ebn0_db,frames,frame_errors,fer,ber,avg_iterations"
    assert lines[1].startswith("20.0,256,0,")
