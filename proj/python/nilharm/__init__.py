"""Harmonic analysis on two-step nilpotent Lie groups.

Thin re-export of the compiled extension.  Supports both the packaged
layout (extension inside the package) and the development layout (extension
directory on sys.path, e.g. a CMake build tree).
"""

try:
    from ._nilharm import *  # noqa: F401,F403
    from . import _nilharm as _impl
except ImportError:
    from _nilharm import *  # noqa: F401,F403
    import _nilharm as _impl

__version__ = "0.1.0"
__all__ = [name for name in dir(_impl) if not name.startswith("_")]
