"""Computer algebra for the partially alternating ternary sum in a free
associative dialgebra: monomial bases, expansion matrices, identity
discovery, and symmetric-group rank tables."""

__version__ = "0.1.0"
