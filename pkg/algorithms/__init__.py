"""Pure, FFA-based and hybrid optimization algorithms."""
