"""Labeled oriented trees of Coxeter type: presentations, quotients and certificates."""
__version__ = "0.1.0"
