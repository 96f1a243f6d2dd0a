"""Exception types shared across the package."""


class RwHopfError(Exception):
    pass


class InputError(RwHopfError, ValueError):
    """Malformed model data or out-of-range arguments."""


class AxiomError(RwHopfError):
    """An operation needed a structural axiom that the input violates."""


class SizeCapExceeded(RwHopfError):
    """An exact computation would exceed the configured size cap."""

    def __init__(self, what: str, size: int, cap: int) -> None:
        super().__init__(f"{what}: size {size} exceeds cap {cap}")
        self.what = what
        self.size = size
        self.cap = cap
