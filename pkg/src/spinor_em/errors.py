"""Exception hierarchy.

Each class carries an ``exit_code`` used by the CLI so that distinct failure
classes map to distinct process exit statuses.
"""


class SpinorEMError(Exception):
    exit_code = 10


class ZeroDirection(SpinorEMError, ValueError):
    exit_code = 11


class InvalidLorentz(SpinorEMError, ValueError):
    exit_code = 12


class NonPositiveMu0(SpinorEMError, ValueError):
    exit_code = 13


class TransversalityViolation(SpinorEMError, ValueError):
    exit_code = 14


class ShapeMismatch(SpinorEMError, ValueError):
    exit_code = 15


class ZeroWavevector(SpinorEMError, ValueError):
    exit_code = 16


class CflViolation(SpinorEMError, ValueError):
    exit_code = 17


class ContinuityViolation(SpinorEMError, ValueError):
    exit_code = 18


class UnsupportedInput(SpinorEMError, ValueError):
    exit_code = 19


class EmptyModeSet(SpinorEMError, ValueError):
    exit_code = 20


class UnknownMode(SpinorEMError, KeyError):
    exit_code = 21


class DimensionMismatch(SpinorEMError, ValueError):
    exit_code = 22


class ZeroNorm(SpinorEMError, ValueError):
    exit_code = 23


class ConfigError(SpinorEMError, ValueError):
    exit_code = 30


class ParseError(ConfigError):
    exit_code = 31

    def __init__(self, message, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class UnknownKey(ConfigError):
    exit_code = 32


class InvalidValue(ConfigError):
    exit_code = 33
