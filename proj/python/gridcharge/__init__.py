"""Emissions-aware EV smart charging: dispatch, carbon pricing, scheduling.

Thin re-export of the compiled core. When running from a build tree the
extension lives next to this package on PYTHONPATH rather than inside it.
"""

try:
    from ._core import *  # noqa: F401,F403
except ImportError:
    from _core import *  # noqa: F401,F403
