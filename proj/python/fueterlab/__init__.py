"""Block-spectral laboratory for quaternionic frame operators on 3-manifolds."""

from ._core import *  # noqa: F401,F403

__version__ = "0.1.0"
