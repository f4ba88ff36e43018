"""Shared fixtures: the two reference families used throughout the suite."""

import pytest

from prorata import CfmmArbitragePayoff, PowerPayoff


@pytest.fixture
def cfmm() -> CfmmArbitragePayoff:
    return CfmmArbitragePayoff(gamma=0.99, r1=200.0, r2=250.0, c=1.0)


@pytest.fixture
def power() -> PowerPayoff:
    return PowerPayoff(beta=0.5, gamma=0.05)
