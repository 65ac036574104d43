import os

import numpy as np
import pytest


@pytest.fixture
def rng():
    seed = int(os.environ.get("SPHERIQ_SEED", "20240809"))
    return np.random.default_rng(seed)
