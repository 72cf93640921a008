"""Exact intersection theory, K-theory and signatures of unimodular fans."""

__version__ = "0.1.0"
