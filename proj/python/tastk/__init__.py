"""Time-accuracy-size benchmarking toolkit.

The compiled extension carries the implementation; this package re-exports
its public surface.
"""

from tastk._core import *  # noqa: F401,F403
from tastk._core import __version__  # noqa: F401
