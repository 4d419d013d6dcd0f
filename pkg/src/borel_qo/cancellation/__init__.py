"""Small-cancellation toolkit: presentations, pieces, Dehn's algorithm, builders."""

from .presentation import *  # noqa: F401,F403
from .substitution import *  # noqa: F401,F403
from .dehn import *  # noqa: F401,F403
from .builders import *  # noqa: F401,F403
