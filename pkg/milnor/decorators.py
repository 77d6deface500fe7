from __future__ import annotations

from functools import wraps

from milnor.exceptions import ContextMismatchError


def same_context(func):
    """Reject binary operations whose two operands live in different contexts."""
    @wraps(func)
    def wrapper(a, b, *args, **kwargs):
        if a.ctx != b.ctx:
            raise ContextMismatchError(
                f"{func.__name__}: operands belong to {a.ctx} and {b.ctx}"
            )
        return func(a, b, *args, **kwargs)
    return wrapper
