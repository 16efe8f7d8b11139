from hyperchrom.combinatorics import members


def as_sets(x) -> dict:
    """QSymF coefficients keyed by frozensets of ranks."""
    return {frozenset(members(k)): c for k, c in x.coeffs.items()}
