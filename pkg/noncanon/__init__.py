"""Finite coherence checks for monoidal functors and coproduct completions."""
__version__ = "0.1.0"
