import numpy as np
import pytest

from nodalk.checks import random_laurent, random_two_var  # noqa: F401


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
