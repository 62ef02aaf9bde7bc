from ._hil import *  # noqa: F401,F403
from ._hil import __doc__  # noqa: F401
