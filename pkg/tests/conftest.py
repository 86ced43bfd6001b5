import pytest

from ltepower.config import DEFAULT_SCENARIO_CONFIG
from ltepower.profiles import ContextProfile, TrafficScenario


@pytest.fixture
def default_scenario() -> TrafficScenario:
    """Stock traffic settings: 1 Gbit downloads every 5 minutes, boost 2."""
    return TrafficScenario(**DEFAULT_SCENARIO_CONFIG)


@pytest.fixture
def plain_context() -> ContextProfile:
    """A fixed analytic context, independent of any Monte Carlo run."""
    return ContextProfile(theta=(0.6, 0.3, 0.1), label="plain")
