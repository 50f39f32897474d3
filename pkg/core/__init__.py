"""Seeded randomness, bit-string operators and evaluation accounting."""
