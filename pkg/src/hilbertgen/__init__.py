"""Hilbert series of generic graded algebras over prime fields."""
