# decoders/min_sum.py
import numpy as np

from msldpc_core.decoder_base import Decoder, TannerGraph, extrinsic_signs


class MinSumDecoder(Decoder):
    """Min-sum: extrinsic magnitude is the smallest other |q| in the check."""

    name = "minsum"

    def check_messages(self, graph: TannerGraph, q: np.ndarray) -> np.ndarray:
        a = np.abs(q)
        min1 = graph.per_check(np.minimum, a)[:, graph.check_idx]
        is_min = a == min1
        ties = graph.per_check(np.add, is_min.astype(np.int64))[:, graph.check_idx]
        min2 = graph.per_check(np.minimum, np.where(is_min, np.inf, a))[:, graph.check_idx]
        magnitude = np.where(is_min & (ties == 1), min2, min1)
        return extrinsic_signs(graph, q) * magnitude
