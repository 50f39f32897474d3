"""Benchmark objective functions for bit strings."""
