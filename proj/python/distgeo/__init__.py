"""Distance geometry toolkit: realizations, rigidity, branch-and-prune.

Thin python wrapper over the C++ core. Vertices are 0-based in this API;
the JSON file formats use 1-based labels.
"""

from ._core import *  # noqa: F401,F403
from ._core import __version__  # noqa: F401
