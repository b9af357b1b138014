from ._semigroup_lab import *  # noqa: F401,F403
