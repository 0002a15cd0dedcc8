"""Auction-based allocation of reflecting surfaces across non-cooperative operators."""

try:
    from irsim._core import *  # noqa: F401,F403  (installed layout)
except ImportError:
    from _core import *  # noqa: F401,F403  (build-tree layout, _core on sys.path)
