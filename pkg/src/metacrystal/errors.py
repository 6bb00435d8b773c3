"""Exception types raised across the package."""


class MetacrystalError(Exception):
    """Base class for all errors raised by metacrystal."""


class NonHermitianCustom(MetacrystalError, ValueError):
    """A custom dispersion produced a complex energy."""


class NonHermitian(MetacrystalError, ValueError):
    """A hopping table violates J[-n] == conj(J[n])."""


class NonHermitianMatrix(MetacrystalError, ValueError):
    pass


class RangeExceedsLattice(MetacrystalError, ValueError):
    """Hopping range M is larger than N/2, so offsets would alias on the ring."""


class DegenerateWidth(MetacrystalError, ValueError):
    pass


class ZeroState(MetacrystalError, ValueError):
    pass


class NoSnapshot(MetacrystalError, LookupError):
    pass


class GratingTooStrong(MetacrystalError, ValueError):
    """Grating amplitude is outside the small-phase regime."""


class SchemaError(MetacrystalError, ValueError):
    """Invalid scenario configuration.

    ``pointer`` is the JSON pointer of the offending value ("" for the root).
    """

    def __init__(self, message, pointer=""):
        super().__init__(f"{pointer or '/'}: {message}")
        self.pointer = pointer
        self.reason = message


class EnsembleError(MetacrystalError):
    """A realization failed; ``index`` identifies which one."""

    def __init__(self, index, cause):
        super().__init__(f"realization {index} failed: {cause!r}")
        self.index = index
        self.cause = cause
