"""Python surface of the bulk eigenvalue statistics laboratory."""

from ._wignerlab import *  # noqa: F401,F403
from ._wignerlab import __doc__  # noqa: F401
