"""Exception hierarchy shared by the library and the command-line front-end."""


class SatQaoaError(Exception):
    """Base class; ``exit_code`` is what the CLI returns when it escapes."""

    exit_code = 1


class ConfigurationError(SatQaoaError, ValueError):
    exit_code = 2


class ContractError(SatQaoaError, ValueError):
    """Arguments disagree in shape (bitstring length, table length, ...)."""

    exit_code = 2


class SizeLimitError(SatQaoaError):
    exit_code = 3


class NumericalError(SatQaoaError, ArithmeticError):
    exit_code = 4
