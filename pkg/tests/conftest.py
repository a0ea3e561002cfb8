import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from intercat.oracle import build_test_family


@pytest.fixture(scope="session")
def family_small():
    return build_test_family(2, 4)


@pytest.fixture(scope="session")
def family_full():
    return build_test_family(2, 5)
