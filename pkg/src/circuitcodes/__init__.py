"""Circuit codes in the hypercube: verification, construction, isomorphism, search."""
