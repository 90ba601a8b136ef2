"""Exception types shared across the package."""


class WDParityError(Exception):
    """Base class for all errors raised by this package."""


class ScalarError(WDParityError):
    """Invalid field parameters, mixed-field arithmetic, or a bad scalar string."""


class WeightAbsentError(ScalarError):
    """a * conj(a) is not an integer power of q, so the element has no Weil weight."""


class LinAlgError(WDParityError):
    """Singular matrix where an invertible one is required, or shape mismatch."""


class RepInvariantError(WDParityError):
    """A Weil-Deligne representation invariant failed at construction time."""


class NonSplitError(WDParityError):
    """The characteristic polynomial of Frobenius does not split over the
    coefficient field; re-encode the datum over a larger cyclotomic conductor N."""


class PurityError(WDParityError):
    """An operation required purity of a stated weight and the input is not pure."""


class PairingError(WDParityError):
    """A symplectic pairing invariant failed (named in the message)."""


class ClassificationError(WDParityError):
    """Input does not match the type (1) / type (2) block classification."""


class UnsupportedInputError(WDParityError):
    """Structurally valid input outside the supported computational scope."""


class NumerologyError(WDParityError):
    """Inconsistent cohomological numerology inputs."""


class DatumError(WDParityError):
    """Datum file parse or validation failure; message carries the field path."""
