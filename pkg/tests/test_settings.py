# File: tests/test_settings.py
import logging

import pytest

from msldpc_core import settings
from msldpc_core.errors import ConfigError


def test_defaults(monkeypatch):
    for name in settings.DEFAULTS:
        monkeypatch.delenv(name, raising=False)
    monkeypatch.delenv("MSLDPC_CATALOG", raising=False)
    assert settings.max_field_degree() == 24
    assert settings.dmin_budget() == 2 ** 28
    assert settings.bp_iterations() == 50
    assert settings.search_workers() == 1
    assert settings.sim_batch_size() == 256
    assert settings.catalog_path() == "codes_catalog.jsonl"


def test_env_overrides(monkeypatch):
    monkeypatch.setenv("MSLDPC_DMIN_BUDGET", "4096")
    monkeypatch.setenv("MSLDPC_CATALOG", "/tmp/c.jsonl")
    assert settings.dmin_budget() == 4096
    assert settings.catalog_path() == "/tmp/c.jsonl"


@pytest.mark.parametrize("raw", ["lots", "0", "-3"])
def test_bad_override_keeps_default(monkeypatch, caplog, raw):
    monkeypatch.setenv("MSLDPC_BP_ITERATIONS", raw)
    with caplog.at_level(logging.WARNING, logger="msldpc_core.settings"):
        assert settings.bp_iterations() == 50
    assert "MSLDPC_BP_ITERATIONS" in caplog.text


def test_config_model_wraps_validation_errors():
    class Demo(settings.ConfigModel):
        size: int

    assert Demo(size=3).size == 3
    with pytest.raises(ConfigError) as ei:
        Demo(size="big")
    assert "Demo" in str(ei.value)
    with pytest.raises(ConfigError):
        Demo(size=1, extra=2)
