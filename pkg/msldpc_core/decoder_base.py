# msldpc_core/decoder_base.py
from __future__ import annotations

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Literal, Union
import logging

import numpy as np
from pydantic import Field
from scipy import sparse

from msldpc_core import settings
from msldpc_core.codecraft import CirculantMatrix
from msldpc_core.errors import LengthMismatch

log = logging.getLogger(__name__)

MatrixLike = Union["TannerGraph", CirculantMatrix, np.ndarray, sparse.spmatrix]


class DecoderConfig(settings.ConfigModel):
    max_iterations: int = Field(default_factory=settings.bp_iterations, ge=1)
    algorithm: Literal["spa", "minsum"] = "spa"
    early_stop: bool = True
    llr_clip: float = Field(default=30.0, gt=0.0)


class TannerGraph:
    """
    Edge list of a parity-check matrix, edges grouped by check.
    All-zero rows carry no constraint and are dropped.
    """

    def __init__(self, H):
        if isinstance(H, CirculantMatrix):
            coo = H.to_sparse().tocoo()
        else:
            coo = sparse.coo_matrix(np.asarray(H) if not sparse.issparse(H) else H)
        coo.sum_duplicates()
        nz = (coo.data.astype(np.int64) & 1) == 1
        rows, cols = coo.row[nz].astype(np.int64), coo.col[nz].astype(np.int64)
        order = np.lexsort((cols, rows))
        rows, cols = rows[order], cols[order]

        self.n = int(coo.shape[1])
        self.num_rows = int(coo.shape[0])
        kept, self.check_idx = np.unique(rows, return_inverse=True)
        self.m = int(kept.size)
        self.var_idx = cols
        self.num_edges = int(cols.size)
        self.check_starts = np.searchsorted(self.check_idx, np.arange(self.m))
        self.check_degree = np.diff(np.append(self.check_starts, self.num_edges))
        self.var_sum = sparse.csr_matrix(
            (np.ones(self.num_edges), (cols, np.arange(self.num_edges))), shape=(self.n, self.num_edges)
        )

    @staticmethod
    def of(H: MatrixLike) -> "TannerGraph":
        return H if isinstance(H, TannerGraph) else TannerGraph(H)

    def per_check(self, ufunc: np.ufunc, edge_values: np.ndarray) -> np.ndarray:
        """Reduce (B, E) edge values to (B, m) per check."""
        return ufunc.reduceat(edge_values, self.check_starts, axis=1)

    def to_variables(self, edge_values: np.ndarray) -> np.ndarray:
        """Sum (B, E) edge values into (B, n) per variable."""
        return np.asarray((self.var_sum @ edge_values.T).T)

    def syndrome_ok(self, hard: np.ndarray) -> np.ndarray:
        """(B,) bool: hard decisions (B, n) satisfy every check."""
        if self.m == 0:
            return np.ones(hard.shape[0], dtype=bool)
        parity = self.per_check(np.add, hard[:, self.var_idx].astype(np.int64)) & 1
        return ~parity.any(axis=1)


@dataclass
class DecodeResult:
    estimate: np.ndarray
    converged: bool
    iterations: int


@dataclass
class DecodeBatch:
    estimates: np.ndarray   # (B, n) uint8
    converged: np.ndarray   # (B,) bool
    iterations: np.ndarray  # (B,) int

    def frame(self, i: int) -> DecodeResult:
        return DecodeResult(self.estimates[i].copy(), bool(self.converged[i]), int(self.iterations[i]))


class Decoder(ABC):
    """
    Flooding-schedule belief propagation. Subclasses supply the check-node rule;
    the variable-node update, syndrome test and early stopping live here.
    """

    name: str = "base"

    @abstractmethod
    def check_messages(self, graph: TannerGraph, q: np.ndarray) -> np.ndarray:
        """Extrinsic check-to-variable messages (B, E) from variable-to-check messages (B, E)."""
        raise NotImplementedError

    def decode_batch(self, graph: TannerGraph, llr: np.ndarray, cfg: DecoderConfig) -> DecodeBatch:
        llr = np.atleast_2d(np.asarray(llr, dtype=np.float64))
        if llr.shape[1] != graph.n:
            raise LengthMismatch(f"llr length {llr.shape[1]} != code length {graph.n}")
        B = llr.shape[0]
        clip = cfg.llr_clip

        estimates = (llr < 0).astype(np.uint8)
        converged = graph.syndrome_ok(estimates)
        iterations = np.zeros(B, dtype=np.int64)

        active = np.flatnonzero(~converged) if cfg.early_stop else np.arange(B)
        ch = llr[active]
        q = np.clip(ch[:, graph.var_idx], -clip, clip)
        for it in range(1, cfg.max_iterations + 1):
            if active.size == 0:
                break
            r = np.clip(self.check_messages(graph, q), -clip, clip)
            totals = ch + graph.to_variables(r)
            hard = (totals < 0).astype(np.uint8)
            ok = graph.syndrome_ok(hard)
            estimates[active] = hard
            converged[active] = ok
            iterations[active] = it
            if cfg.early_stop:
                keep = ~ok
                active, ch, r, totals = active[keep], ch[keep], r[keep], totals[keep]
            q = np.clip(totals[:, graph.var_idx] - r, -clip, clip)

        log.debug("%s: %d/%d frames converged", self.name, int(converged.sum()), B)
        return DecodeBatch(estimates=estimates, converged=converged, iterations=iterations)


def extrinsic_signs(graph: TannerGraph, q: np.ndarray) -> np.ndarray:
    """+-1 per edge: product of the signs of the other messages into the same check."""
    neg = (q < 0).astype(np.int64)
    parity = graph.per_check(np.add, neg)[:, graph.check_idx] & 1
    return 1.0 - 2.0 * (parity ^ neg)
