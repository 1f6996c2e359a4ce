"""Maximin point configurations in the unit ball and the cross-polytope."""

__version__ = "0.1.0"
