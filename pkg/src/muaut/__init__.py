"""Workbench for mu-calculi over monadic one-step logics, parity automata,
and weak/noetherian monadic second-order logics on finite systems."""

__version__ = "0.1.0"
