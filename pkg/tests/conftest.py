"""Shared fixtures: canonical configurations and truncation helpers."""

import pytest

from doubleslit.config import parse_config, with_detector, with_truncation


@pytest.fixture(scope="session")
def default_config():
    """All-defaults configuration (a=5λ, b=1000λ, c=λ, d=25λ)."""
    return parse_config("")


@pytest.fixture(scope="session")
def small_config():
    """Default geometry with a reduced mode set, for fast closed-form work."""
    return with_truncation(parse_config(""), m_max=3, n_max=3)


@pytest.fixture(scope="session")
def coarse_detector_config(small_config):
    """Small mode set plus a coarse grid, for whole-scan tests."""
    return with_detector(small_config, steps=201)
