"""Exact lower bounds on the algebraic unknotting number from Seifert matrices."""

__version__ = "0.1.0"
