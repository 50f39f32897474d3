"""Frequency Fitness Assignment state."""
