"""Select the compiled kernels when available, the numpy ones otherwise.

Set ``EEENUM_PURE_PYTHON=1`` to force the numpy kernels.
"""
import os

from . import _fallback

NAME = "python"
kernels = _fallback

if not os.environ.get("EEENUM_PURE_PYTHON"):
    try:
        from . import _core
    except ImportError:
        pass
    else:
        kernels = _core
        NAME = "cython"


def available():
    """Names of the kernel backends importable in this environment."""
    names = ["python"]
    try:
        from . import _core  # noqa: F401
    except ImportError:
        return names
    return ["cython"] + names


def get(name):
    if name == "python":
        return _fallback
    if name == "cython":
        from . import _core
        return _core
    raise ValueError(f"unknown backend {name!r}")
