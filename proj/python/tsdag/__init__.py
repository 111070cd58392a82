"""Adaptive interventional discovery of causal DAGs over discrete Bayesian networks."""

try:
    from ._tsdag import *  # noqa: F401,F403  (installed package layout)
except ImportError:
    from _tsdag import *  # noqa: F401,F403  (in-tree build layout)
