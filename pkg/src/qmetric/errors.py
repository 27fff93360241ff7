"""Exception type for violated engine invariants."""


class EngineError(RuntimeError):
    """An internal exactness or symmetry invariant failed."""
