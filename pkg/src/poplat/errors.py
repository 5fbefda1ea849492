"""Shared exception types."""


class GuardError(ValueError):
    """A size guard was exceeded (enumeration or lattice construction too large)."""


class NotALatticeError(ValueError):
    """The cover relation does not define a lattice; carries a witness pair."""


class NonIntervalClassError(ValueError):
    """A congruence class is not an interval of the lattice."""
