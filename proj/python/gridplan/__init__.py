"""Weighted-grid route planning over raster maps."""

from ._gridplan import *  # noqa: F401,F403
from ._gridplan import __doc__  # noqa: F401
