"""Exception types raised by the analyzer."""


class ToricError(Exception):
    """Base class for all analyzer errors."""


class InputError(ToricError, ValueError):
    """Malformed or invalid cone input."""


class ZeroRayError(InputError):
    pass


class NonPointedConeError(InputError):
    pass


class NonExtremeRayError(InputError):
    pass


class DegenerateConeError(ToricError, ValueError):
    """Operation requires a full-dimensional cone."""


class CapExceededError(ToricError, RuntimeError):
    """Number of rays exceeds the permutation enumeration cap."""

    def __init__(self, r: int, cap: int):
        super().__init__(f"{r} rays exceed the enumeration cap of {cap}")
        self.r = r
        self.cap = cap


class CriteriaMismatchError(ToricError, AssertionError):
    """The lattice-witness and class-group routes disagree (internal bug)."""
