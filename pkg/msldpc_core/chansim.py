# msldpc_core/chansim.py
"""
Monte-Carlo frame error rate of a binary code under BPSK over AWGN.

 - mapping 0 -> +1, 1 -> -1; noise variance sigma^2 = 1 / (2 R Eb/N0)
 - channel LLR = 2y / sigma^2
 - frame f of a point with seed s draws its message and noise from
   numpy.random.default_rng([s, f]); batching only groups frames for the decoder,
   so results do not depend on the batch size, and every parity-check matrix of
   the same code sees the same noise
 - a point stops on the exact frame that reaches the frame-error target
 - all-zero codeword by default, random messages on request
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Iterable, List, Optional, Sequence, TextIO, Union
import csv
import logging
import time

import numpy as np
from pydantic import Field
from scipy.stats import norm

from msldpc_core import settings
from msldpc_core.codecraft import CyclicCode, generator_matrix
from msldpc_core.decoder_base import DecodeResult, DecoderConfig, MatrixLike, TannerGraph
from msldpc_core.decoder_registry import DecoderRegistry, default_registry
from msldpc_core.errors import InconsistentParityCheck, LengthMismatch

log = logging.getLogger(__name__)

CSV_HEADER = ("ebn0_db", "frames", "frame_errors", "fer", "ber", "avg_iterations")

# A cyclic code, or the generator matrix of any binary linear code.
CodeLike = Union[CyclicCode, np.ndarray]

__all__ = [
    "ChannelConfig", "DecoderConfig", "SimResult", "bpsk_awgn_llr", "bp_decode",
    "simulate_fer", "uncoded_fer", "write_csv",
]


class ChannelConfig(settings.ConfigModel):
    ebn0_db: float
    rate: float = Field(gt=0.0, le=1.0)
    seed: int = Field(default=0, ge=0)

    @property
    def sigma2(self) -> float:
        return 1.0 / (2.0 * self.rate * 10.0 ** (self.ebn0_db / 10.0))


@dataclass
class SimResult:
    ebn0_db: float
    frames: int
    frame_errors: int              # frames whose hard decision differs from the sent codeword
    bit_errors: int
    n: int                         # code length, for BER
    total_iterations: int = 0      # BP iterations summed over frames (0 for a clean frame)
    wall_time: float = 0.0         # seconds; not part of csv_row

    @property
    def fer(self) -> float:
        return self.frame_errors / self.frames if self.frames else 0.0

    @property
    def ber(self) -> float:
        return self.bit_errors / (self.frames * self.n) if self.frames else 0.0

    @property
    def avg_iterations(self) -> float:
        return self.total_iterations / self.frames if self.frames else 0.0

    def to_dict(self):
        d = asdict(self)
        d.update(fer=self.fer, ber=self.ber, avg_iterations=self.avg_iterations)
        return d

    def csv_row(self) -> List[str]:
        return [
            repr(float(self.ebn0_db)),
            str(self.frames),
            str(self.frame_errors),
            f"{self.fer:.6e}",
            f"{self.ber:.6e}",
            f"{self.avg_iterations:.4f}",
        ]


def bpsk_awgn_llr(codeword: np.ndarray, ch: ChannelConfig,
                  rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """LLRs 2y/sigma^2 for y = (1 - 2b) + noise; works on (n,) or (B, n) bit arrays."""
    bits = np.asarray(codeword, dtype=np.float64)
    rng = rng if rng is not None else np.random.default_rng(ch.seed)
    return _llr(bits, rng.standard_normal(bits.shape), ch.sigma2)


def _llr(bits: np.ndarray, noise: np.ndarray, sigma2: float) -> np.ndarray:
    y = (1.0 - 2.0 * bits) + np.sqrt(sigma2) * noise
    return 2.0 * y / sigma2


def _frames(ch: ChannelConfig, G: np.ndarray, first: int, count: int,
            random_codewords: bool):
    """Codewords and LLRs of frames first .. first+count-1, one generator per frame."""
    k, n = G.shape
    msgs = np.zeros((count, k), dtype=np.int64)
    noise = np.empty((count, n))
    for i in range(count):
        rng = np.random.default_rng([ch.seed, first + i])
        if random_codewords:
            msgs[i] = rng.integers(0, 2, size=k, dtype=np.int64)
        noise[i] = rng.standard_normal(n)
    if random_codewords:
        cw = ((msgs @ G.astype(np.int64)) & 1).astype(np.uint8)
    else:
        cw = np.zeros((count, n), dtype=np.uint8)
    return cw, _llr(cw.astype(np.float64), noise, ch.sigma2)


def bp_decode(H: MatrixLike, llr: np.ndarray, cfg: DecoderConfig,
              registry: Optional[DecoderRegistry] = None) -> DecodeResult:
    """Decode one frame; non-convergence is reported, not raised."""
    graph = TannerGraph.of(H)
    llr = np.asarray(llr, dtype=np.float64)
    if llr.ndim != 1 or llr.size != graph.n:
        raise LengthMismatch(f"llr must be a vector of length {graph.n}, got shape {llr.shape}")
    decoder = (registry or default_registry()).get(cfg.algorithm)
    return decoder.decode_batch(graph, llr[None, :], cfg).frame(0)


def _generator_of(code: CodeLike) -> np.ndarray:
    if isinstance(code, CyclicCode):
        return generator_matrix(code)
    return (np.asarray(code) & 1).astype(np.uint8)


def _check_consistent(code: CodeLike, graph: TannerGraph) -> np.ndarray:
    G = _generator_of(code)
    n = G.shape[1]
    if graph.n != n:
        raise InconsistentParityCheck(f"parity-check matrix has {graph.n} columns, code length is {n}")
    H = np.zeros((graph.m, n), dtype=np.int64)
    H[graph.check_idx, graph.var_idx] = 1
    if np.any((H @ G.T.astype(np.int64)) & 1):
        raise InconsistentParityCheck("H G^T != 0: the matrix does not check this code")
    return G


def simulate_fer(code: CodeLike, H: MatrixLike, ch_points: Sequence[ChannelConfig],
                 dec: Optional[DecoderConfig] = None, min_frame_errors: int = 100,
                 max_frames: int = 100_000, batch_size: Optional[int] = None,
                 random_codewords: bool = False,
                 registry: Optional[DecoderRegistry] = None) -> List[SimResult]:
    """
    One SimResult per Eb/N0 point. Each point runs until min_frame_errors frame
    errors or max_frames frames, whichever comes first.
    """
    dec = dec or DecoderConfig()
    graph = TannerGraph.of(H)
    G = _check_consistent(code, graph)
    decoder = (registry or default_registry()).get(dec.algorithm)
    batch_size = batch_size or settings.sim_batch_size()
    n = G.shape[1]

    results = []
    for ch in ch_points:
        started = time.perf_counter()
        res = SimResult(ebn0_db=ch.ebn0_db, frames=0, frame_errors=0, bit_errors=0, n=n)
        while res.frames < max_frames and res.frame_errors < min_frame_errors:
            B = min(batch_size, max_frames - res.frames)
            cw, llr = _frames(ch, G, res.frames, B, random_codewords)
            out = decoder.decode_batch(graph, llr, dec)
            wrong = out.estimates != cw
            failed = np.flatnonzero(wrong.any(axis=1))
            need = min_frame_errors - res.frame_errors
            used = int(failed[need - 1]) + 1 if failed.size >= need else B
            res.frames += used
            res.frame_errors += int(min(failed.size, need))
            res.bit_errors += int(wrong[:used].sum())
            res.total_iterations += int(out.iterations[:used].sum())
        res.wall_time = time.perf_counter() - started
        log.info("Eb/N0=%.2f dB: frames=%d frame_errors=%d fer=%.3e ber=%.3e avg_it=%.2f",
                 ch.ebn0_db, res.frames, res.frame_errors, res.fer, res.ber, res.avg_iterations)
        results.append(res)
    return results


def uncoded_fer(ebn0_db: float, k: int) -> float:
    """Probability that at least one of k uncoded BPSK bits is wrong."""
    p = float(norm.sf(np.sqrt(2.0 * 10.0 ** (ebn0_db / 10.0))))
    return float(-np.expm1(k * np.log1p(-p)))


def write_csv(results: Iterable[SimResult], stream: TextIO) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for res in results:
        writer.writerow(res.csv_row())
