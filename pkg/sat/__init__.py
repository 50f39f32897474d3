"""DIMACS CNF handling and the MAX-SAT objective."""
