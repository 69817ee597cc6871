# decoders/__init__.py
from decoders.min_sum import MinSumDecoder
from decoders.sum_product import SumProductDecoder

__all__ = ["MinSumDecoder", "SumProductDecoder"]
