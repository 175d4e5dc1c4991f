import functools

from .exceptions import BathConfigError
from .fields import check_structure


def validated(structure, message='bath configuration is not valid'):
    """Check a JSON mapping against ``structure`` before calling the builder.

    The wrapped function receives the structured (typed, defaulted) data.
    """
    def validated_decorator(f):
        @functools.wraps(f)
        def wrapper(data, *args, **kwargs):
            structured, messages = check_structure(data, structure)
            if messages:
                raise BathConfigError([message] + messages)
            return f(structured, *args, **kwargs)

        return wrapper

    return validated_decorator
