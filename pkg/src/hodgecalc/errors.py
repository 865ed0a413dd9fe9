"""Exception hierarchy for hodgecalc."""


class HodgecalcError(Exception):
    """Base class for all library errors."""


class NotNilpotent(HodgecalcError):
    pass


class NoSolution(HodgecalcError):
    pass


class NotCommuting(HodgecalcError):
    pass


class NotMHS(HodgecalcError):
    pass


class NotEffective(HodgecalcError):
    pass


class NotPolarized(HodgecalcError):
    pass


class DegenerateDet(HodgecalcError):
    pass


class ZeroAtPoint(HodgecalcError):
    pass


class NoFactorization(HodgecalcError):
    pass


class NotSpanned(HodgecalcError):
    pass


class NotUnit(HodgecalcError):
    pass


class ZeroVector(HodgecalcError):
    pass


class DimensionMismatch(HodgecalcError):
    pass


class InvalidPartition(HodgecalcError):
    pass


class ParseError(HodgecalcError):
    pass


class SchemaError(HodgecalcError):
    pass


class UnknownSubcommand(HodgecalcError):
    pass
