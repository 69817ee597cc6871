# decoders/sum_product.py
import numpy as np

from msldpc_core.decoder_base import Decoder, TannerGraph, extrinsic_signs

_TINY = 1e-12


def _phi(x: np.ndarray) -> np.ndarray:
    """-log(tanh(x/2)) for x > 0; its own inverse."""
    e = np.exp(-x)
    return np.log1p(e) - np.log1p(-e)


class SumProductDecoder(Decoder):
    """Tanh rule evaluated as sums of phi(|q|), signs handled separately."""

    name = "spa"

    def check_messages(self, graph: TannerGraph, q: np.ndarray) -> np.ndarray:
        f = _phi(np.maximum(np.abs(q), _TINY))
        total = graph.per_check(np.add, f)[:, graph.check_idx]
        magnitude = _phi(np.maximum(total - f, _TINY))
        return extrinsic_signs(graph, q) * magnitude
