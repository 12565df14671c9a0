"""Computation services.

Services hold the algorithms: Gröbner bases, resolutions, operations on
complexes, Frobenius twists and the total-Betti checks. They are called
by the CLI and by each other, and work on the value types in app.models.
"""
