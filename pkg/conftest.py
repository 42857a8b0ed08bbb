"""
Pytest Configuration and Fixtures
"""

import pytest
import sys
import os

# Testing config (no homology cache) must be selected before any module reads it
os.environ.setdefault('KNOT_TORSION_ENV', 'testing')

# Add repository root to path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import numpy as np

from cache_manager import CacheManager
from knots import parse_knot


@pytest.fixture
def rng():
    """Seeded generator for random matrices and move sequences"""
    return np.random.default_rng(20240511)


@pytest.fixture
def cache_manager():
    """Create an enabled cache manager instance"""
    cache = CacheManager(max_entries=4, enabled=True)
    yield cache


@pytest.fixture
def t34():
    return parse_knot("T(3,4)")


@pytest.fixture
def family_knot_1_2():
    """K_{1,2} = T(5,6) # mirror(T(3,4))"""
    return parse_knot("T(5,6) # mirror(T(3,4))")


@pytest.fixture
def moves_file(tmp_path):
    """Write a move file and return its path"""
    def _write(text, name="moves.txt"):
        path = tmp_path / name
        path.write_text(text, encoding='utf-8')
        return str(path)
    return _write


@pytest.fixture
def sample_expressions():
    """Expressions covering every node of the grammar"""
    return [
        "U",
        "T(2,3)",
        "mirror(T(3,4))",
        "T(5,6) # mirror(T(3,4))",
        "T(2,3) # T(2,3) # mirror(U)",
    ]
