"""Spans and polynomials of finite sets, and oplax functors out of them."""

__version__ = "0.1.0"
