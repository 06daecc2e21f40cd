"""Exception types raised across the package."""


class PoleAtPoint(ArithmeticError):
    """A rational function was evaluated at a zero of its denominator."""


class DivergentSeries(ArithmeticError):
    """A geometric series with ratio of modulus >= 1 was summed."""


class ZeroResidue(ArithmeticError):
    """A residue normalization vanished where it is used as a divisor."""


class InvalidParameters(ValueError):
    pass


class PatternMismatch(ValueError):
    pass


class DegreeOutOfRange(ValueError):
    pass


class OddR(ValueError):
    """A quantity only defined for even leg count was requested at odd r."""


class InvalidConfig(ValueError):
    pass
