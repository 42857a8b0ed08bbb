"""
Tests for Cache Manager
"""

from cache_manager import CacheManager


def test_cache_set_get(cache_manager):
    """Test storing and reading values"""
    assert cache_manager.get("homology:T(2,3)") is None
    assert cache_manager.set("homology:T(2,3)", (1, (1,)))
    assert cache_manager.get("homology:T(2,3)") == (1, (1,))

    stats = cache_manager.get_stats()
    assert stats['hits'] == 1
    assert stats['misses'] == 1
    assert stats['hit_rate'] == 50.0


def test_cache_evicts_least_recently_used(cache_manager):
    """Test LRU eviction at capacity"""
    for i in range(4):
        cache_manager.set(f"homology:{i}", i)
    cache_manager.get("homology:0")
    cache_manager.set("homology:4", 4)

    assert cache_manager.get("homology:1") is None
    assert cache_manager.get("homology:0") == 0
    assert cache_manager.get_stats()['total_keys'] == 4


def test_cache_clear_pattern(cache_manager):
    """Test glob deletion"""
    cache_manager.set("homology:T(2,3)", 1)
    cache_manager.set("homology:T(3,4)", 1)
    cache_manager.set("other:x", 1)
    assert cache_manager.clear_pattern("homology:*") == 2
    assert cache_manager.delete("other:x")
    assert not cache_manager.delete("other:x")


def test_disabled_cache():
    """Test that a disabled cache never stores"""
    cache = CacheManager(enabled=False)
    assert not cache.set("k", 1)
    assert cache.get("k") is None
    assert cache.get_stats() == {'enabled': False}
