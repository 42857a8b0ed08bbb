"""
Cache Manager Module
In-process memoization of homology computations
"""

from collections import OrderedDict
from fnmatch import fnmatchcase
from typing import Any, Optional
import threading
import logging

from config import get_config

logger = logging.getLogger(__name__)


class CacheManager:
    """Bounded LRU cache keyed by strings such as 'homology:T(3,4)'"""

    def __init__(self, max_entries: Optional[int] = None, enabled: Optional[bool] = None):
        """
        Initialize the cache

        Args:
            max_entries: Capacity before least-recently-used eviction
            enabled: Turn caching off entirely (every get misses)
        """
        cfg = get_config()
        self.max_entries = max_entries if max_entries is not None else cfg.CACHE_MAX_ENTRIES
        self.cache_enabled = enabled if enabled is not None else cfg.CACHE_ENABLED
        self._store: 'OrderedDict[str, Any]' = OrderedDict()
        self._lock = threading.Lock()

        # Statistics
        self.hits = 0
        self.misses = 0

    def get(self, key: str) -> Optional[Any]:
        """
        Get value from cache

        Args:
            key: Cache key

        Returns:
            Cached value or None
        """
        if not self.cache_enabled:
            return None

        with self._lock:
            if key in self._store:
                self._store.move_to_end(key)
                self.hits += 1
                logger.debug(f"cache hit: {key}")
                return self._store[key]
            self.misses += 1
            return None

    def set(self, key: str, value: Any) -> bool:
        """
        Set value in cache

        Args:
            key: Cache key
            value: Immutable value to cache

        Returns:
            True if stored
        """
        if not self.cache_enabled:
            return False

        with self._lock:
            self._store[key] = value
            self._store.move_to_end(key)
            while len(self._store) > self.max_entries:
                evicted, _ = self._store.popitem(last=False)
                logger.debug(f"cache evicted: {evicted}")
        return True

    def delete(self, key: str) -> bool:
        with self._lock:
            return self._store.pop(key, None) is not None

    def clear_pattern(self, pattern: str) -> int:
        """
        Clear all keys matching a glob pattern

        Args:
            pattern: Key pattern (e.g., "homology:*")

        Returns:
            Number of keys deleted
        """
        with self._lock:
            keys = [k for k in self._store if fnmatchcase(k, pattern)]
            for k in keys:
                del self._store[k]
        return len(keys)

    def get_hit_rate(self) -> float:
        """Calculate cache hit rate"""
        total = self.hits + self.misses
        if total == 0:
            return 0.0
        return round((self.hits / total) * 100, 2)

    def get_stats(self) -> dict:
        """Get cache statistics"""
        if not self.cache_enabled:
            return {'enabled': False}
        return {
            'enabled': True,
            'hits': self.hits,
            'misses': self.misses,
            'hit_rate': self.get_hit_rate(),
            'total_keys': len(self._store),
        }
