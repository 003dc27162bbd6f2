import sys
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from silhouette_coach.template_store import builtin_store


@pytest.fixture(scope="session")
def store():
    return builtin_store()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


def random_mask(rng, h, w, p=0.5):
    return rng.random((h, w)) < p
