"""Exception types shared across the package.

Each class names one failure condition of the public API; the CLI maps
InputError subtypes to exit code 2 and SearchExhausted to exit code 3.
"""


class EllmasseyError(Exception):
    """Base class for all package errors."""


class InputError(EllmasseyError):
    """Invalid input data or arguments (CLI exit code 2)."""


class NotPrime(InputError):
    pass


class DegreeTooLarge(InputError):
    pass


class ZeroPolynomial(InputError):
    pass


class FieldTooLarge(InputError):
    pass


class UnsupportedField(InputError):
    """Operation not supported over this field (e.g. large char-2 root search)."""


class SingularCurve(InputError):
    pass


class BadCharacteristic(InputError):
    pass


class FieldMismatch(InputError):
    pass


class UnsupportedLevel(InputError):
    pass


class ExtensionCapExceeded(EllmasseyError):
    pass


class NotTorsion(InputError):
    pass


class NotInSpan(EllmasseyError):
    """Internal inconsistency: Frobenius image not in the torsion span."""


class ModulusMismatch(InputError):
    pass


class GroupMismatch(InputError):
    pass


class CaseMismatch(EllmasseyError):
    """Galois-case normalization did not produce the expected matrix shape."""


class WrongPrime(InputError):
    pass


class InvalidData(InputError):
    pass


class NotCongruentIdentity(InvalidData):
    pass


class NotInvertible(InvalidData):
    pass


class SearchExhausted(EllmasseyError):
    """Curve search found no match within bounds (CLI exit code 3)."""
