"""Shared fixtures: the reference pair and a few derived configurations."""

import pytest

from pairspec.model import default_config


@pytest.fixture()
def system():
    return default_config()[0]


@pytest.fixture()
def pulse():
    return default_config()[1]


@pytest.fixture()
def gamma_min(system):
    return min(system.atom_a.gamma, system.atom_b.gamma)
