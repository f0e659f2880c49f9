# updates/conftest.py
"""
Shared pytest configuration: import path, hypothesis profiles, the slow marker
and the standard bundles used across the suite
"""

import os
import sys

import pytest
from hypothesis import HealthCheck, settings

# Add project root to path
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from support.knowledge_base import KnowledgeBase  # noqa: E402
from tools.euler_data import BundleSpec  # noqa: E402

settings.register_profile(
    "default", max_examples=50, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.register_profile(
    "ci", max_examples=200, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full D=10 reproductions of the golden tables")


@pytest.fixture(scope="session")
def golden_bundle():
    """O(3) + O(-3) over P^5"""
    return BundleSpec(5, (3,), (3,))


@pytest.fixture(scope="session")
def quintic():
    return BundleSpec(4, (5,))


@pytest.fixture(scope="session")
def conifold():
    """O(-1) + O(-1) over P^1"""
    return BundleSpec(1, (), (1, 1))


@pytest.fixture(scope="session")
def rank_two_concave():
    """O(-1) + O(-2) over P^2"""
    return BundleSpec(2, (), (1, 2))


@pytest.fixture(scope="session")
def knowledge_base():
    return KnowledgeBase()
