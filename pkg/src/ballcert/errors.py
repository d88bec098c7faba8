class ResourceExhausted(RuntimeError):
    """An enumeration ran past its configured size cap.

    Distinct from a mathematical failure: the input may be fine, the cap is
    just too small (or the subgroup has infinite index).
    """


class InconsistencyError(ValueError):
    """Data that should be internally consistent is not (non-integral genus,
    non-integral Chern number, failed homomorphism check, ...)."""


class ConstructionImpossible(ValueError):
    """No object with the requested properties exists for this input."""
