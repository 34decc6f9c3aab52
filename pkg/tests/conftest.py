import os
import sys

import pytest

# Tests import backend/ and config.py from the repository root
sys.path.insert(0, os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from backend.core import Dims3


@pytest.fixture
def cube2():
    return Dims3(2, 2, 2)


@pytest.fixture
def dims644():
    return Dims3(6, 4, 4)
