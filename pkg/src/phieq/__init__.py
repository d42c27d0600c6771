"""Exact verification tools for phi(|x^m - y^m|) = |x^n - y^n| and its Lucas-quotient variants."""

__version__ = "0.1.0"
