"""Process-wide memo for read-only numerical tables."""

import threading
from typing import Any, Callable, Hashable, Optional


class Cache:
    """Thread-safe keyed store for tables computed once and shared.

    Entries never expire: quadrature rules and basis tables are pure
    functions of their key. Callers must treat returned arrays as read-only.
    """

    def __init__(self):
        self._cache: dict[Hashable, Any] = {}
        self._lock = threading.Lock()

    def get(self, key: Hashable) -> Optional[Any]:
        """Get value from cache if present."""
        with self._lock:
            return self._cache.get(key)

    def set(self, key: Hashable, value: Any) -> None:
        """Store a value."""
        with self._lock:
            self._cache[key] = value

    def clear(self, key: Hashable) -> None:
        """Clear a specific key."""
        with self._lock:
            self._cache.pop(key, None)

    def clear_all(self) -> None:
        """Clear all entries."""
        with self._lock:
            self._cache.clear()

    def __len__(self) -> int:
        with self._lock:
            return len(self._cache)

    def get_or_compute(self, key: Hashable, compute_fn: Callable[[], Any]) -> Any:
        """Get from cache or compute and store.

        Two threads racing on the same key may both compute; the first
        stored value wins and is returned to both.
        """
        cached = self.get(key)
        if cached is not None:
            return cached

        result = compute_fn()
        with self._lock:
            return self._cache.setdefault(key, result)


# Global cache instance
_global_cache = Cache()


def get_cache() -> Cache:
    """Get global cache instance."""
    return _global_cache
