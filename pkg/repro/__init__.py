"""Canned acceptance scenarios."""
