"""Exception hierarchy.

Input errors map to CLI exit code 2, scale/limit errors to exit code 3.
"""


class CltLabError(Exception):
    exit_code = 1


class InputError(CltLabError, ValueError):
    exit_code = 2


class ScaleError(CltLabError, RuntimeError):
    exit_code = 3


class EmptyLaw(InputError):
    pass


class NonPositiveMass(InputError):
    pass


class MassSumOutOfTolerance(InputError):
    pass


class UnboundedSpan(InputError):
    """A single-atom law lies on every lattice, so its span is +inf."""


class DegenerateLaw(InputError):
    """The law has zero variance."""


class NonFiniteInput(InputError):
    pass


class InvalidS(InputError):
    pass


class InvalidK(InputError):
    pass


class SupportOverflow(ScaleError):
    pass


class OracleScaleExceeded(ScaleError):
    pass


class ScaleExceeded(ScaleError):
    pass
