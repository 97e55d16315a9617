"""Exception types shared across the package."""


class HoweError(Exception):
    """Base class for errors raised by this package."""


class CompositeOrSmallPrime(HoweError, ValueError):
    pass


class MixedContexts(HoweError, ValueError):
    pass


class NotAnExtension(HoweError, ValueError):
    pass


class ZeroPolynomial(HoweError, ValueError):
    pass


class NotZeroDimensional(HoweError):
    pass


class DegenerateParams(HoweError, ValueError):
    pass


class NotHoweType(HoweError, ValueError):
    pass


class DegenerateGeometry(HoweError):
    """An admissible-pair computation hit a configuration with no usable data."""


class EmptyVH(HoweError):
    pass


class SchemaMismatch(HoweError, ValueError):
    pass


class InvariantViolation(HoweError):
    """An internal consistency check failed (command line exit code 3)."""
