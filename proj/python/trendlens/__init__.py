"""Piecewise parametric trend decomposition for daily price series.

The heavy lifting lives in the compiled ``trendlens._core`` extension; this
package re-exports its full surface.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
