import json

import numpy as np
import pytest

from energy_transfer.config import config
from energy_transfer.utils.file_utils import energy_from_file, parse_partition
from energy_transfer.utils.models import Side


def load_ref(name):
    with open(config.ref(name), 'r', encoding='utf-8') as f:
        return json.load(f)


@pytest.fixture
def overline_energy():
    """The four-state overline matrix over bbar, abar, a, b"""
    return energy_from_file(config.ref('overpartition_energy.json'))


@pytest.fixture
def twister():
    return energy_from_file(config.ref('twister_energy.json'))


@pytest.fixture
def worked():
    return load_ref('worked_example.json')


@pytest.fixture
def worked_lambda(overline_energy, worked):
    return parse_partition(overline_energy, worked['lambda'], Side.O)


@pytest.fixture
def worked_nu(overline_energy, worked):
    return parse_partition(overline_energy, worked['nu'], Side.E)


@pytest.fixture
def enumeration_tables():
    return load_ref('enumeration_tables.json')


@pytest.fixture
def rng():
    return np.random.default_rng(20240501)
