"""Local and global canonical heights."""

from .heights import *  # noqa: F401,F403
from .heights import __all__  # noqa: F401
from .local import LocalContext, LocalElement, local_apply  # noqa: F401
