"""Summary statistics over run records."""
