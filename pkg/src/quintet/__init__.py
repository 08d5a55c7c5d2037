"""Quintet: a free-style Gomoku engine built on pattern algebra and
potential-line board analysis, with PVS tree search and endgame solvers."""

__version__ = "0.1.0"
