import numpy as np
import pytest

from totalMatching.utils import configure_log


@pytest.fixture(autouse=True)
def quiet_log():
    configure_log(None)
    yield
    configure_log(None)


@pytest.fixture
def rng():
    return np.random.default_rng(0)
