"""Experiment orchestration and result persistence."""
