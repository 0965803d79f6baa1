"""Regular sets of subgroups in Cayley sum graphs of generalized dicyclic groups."""

__version__ = "0.1.0"
