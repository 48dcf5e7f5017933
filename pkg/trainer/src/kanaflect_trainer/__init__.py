"""Neural baseline trainer for the kanaflect evaluation harness."""

__version__ = "0.1.0"
