import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from grassmann.generate import random_nine_points


@pytest.fixture
def labels9():
    """One deterministic general-position nine-point configuration."""
    return random_nine_points(random.Random(42))


def seeded_labels(seed: int):
    return random_nine_points(random.Random(seed))
