"""Exact and numeric toolkit for palindromic (symmetric) Zassenhaus
splittings of exp(X+Y), their one-sided relatives, and the norm-bound
recursions that certify where the disentanglement converges."""

__version__ = "0.1.0"
