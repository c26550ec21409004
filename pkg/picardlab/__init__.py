"""Numerical toolkit for the prime geodesic theorem on the Picard manifold."""
