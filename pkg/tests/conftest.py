import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

import pytest

from germlift.exprio import parse_poly
from germlift.poly import VarSet


@pytest.fixture
def xy():
    return VarSet(["x", "y"])


@pytest.fixture
def P():
    """Shorthand parser: P("x^2 + y", ring)."""
    return parse_poly


def fixture_path(name):
    import germlift.fixtures

    return os.path.join(os.path.dirname(germlift.fixtures.__file__), name)
