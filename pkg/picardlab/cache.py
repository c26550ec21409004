from typing import Any
import hashlib
from functools import wraps

from django.conf import settings


def cache_result(timeout: int = 3600, prefix: str = 'picardlab'):
    """Memoize a pure function in the Django cache, keyed on the repr of its arguments.

    Outside a configured Django process the wrapped function is simply called.
    """
    def decorator(func):
        @wraps(func)
        def wrapper(*args: Any, **kwargs: Any) -> Any:
            if not settings.configured:
                return func(*args, **kwargs)
            from django.core.cache import cache

            key_parts = [func.__module__, func.__qualname__]
            key_parts.extend(repr(arg) for arg in args)
            for k, v in sorted(kwargs.items()):
                key_parts.append(f"{k}={v!r}")
            cache_key = f"{prefix}:{hashlib.md5('|'.join(key_parts).encode()).hexdigest()}"

            cached = cache.get(cache_key)
            if cached is not None:
                return cached

            result = func(*args, **kwargs)
            cache.set(cache_key, result, timeout)
            return result
        wrapper.uncached = func
        return wrapper
    return decorator
