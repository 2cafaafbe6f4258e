"""Bound quivers of special biserial algebras: string and band
combinatorics, graph-map Hom bases, brick censuses, quiver surgeries and
tau-tilting finiteness verdicts."""

__version__ = "0.1.0"
