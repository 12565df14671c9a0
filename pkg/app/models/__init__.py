"""Domain types: polynomials, free modules, complexes, resolutions."""
