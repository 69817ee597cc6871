# msldpc_core/decoder_registry.py
from typing import Dict, List, Optional

from msldpc_core.decoder_base import Decoder
from msldpc_core.errors import ConfigError


class DecoderRegistry:
    """
    Holds the available decoders, looked up by name ("spa", "minsum", ...).
    """

    def __init__(self):
        self._decoders: Dict[str, Decoder] = {}

    def register(self, decoder: Decoder) -> None:
        if decoder.name in self._decoders:
            raise ValueError(f"Decoder with name '{decoder.name}' already registered")
        self._decoders[decoder.name] = decoder

    def unregister(self, name: str) -> None:
        self._decoders.pop(name, None)

    def get(self, name: str) -> Decoder:
        try:
            return self._decoders[name]
        except KeyError:
            raise ConfigError(f"unknown decoder {name!r}; available: {', '.join(self.names()) or 'none'}") from None

    def names(self) -> List[str]:
        return sorted(self._decoders)


_DEFAULT: Optional[DecoderRegistry] = None


def default_registry() -> DecoderRegistry:
    """Registry with the bundled decoders, built on first use."""
    global _DEFAULT
    if _DEFAULT is None:
        from decoders import MinSumDecoder, SumProductDecoder  # decoders depend on this package

        reg = DecoderRegistry()
        reg.register(SumProductDecoder())
        reg.register(MinSumDecoder())
        _DEFAULT = reg
    return _DEFAULT
