"""Exception hierarchy shared by every salemforge module."""


class SalemForgeError(Exception):
    """Base class; the CLI maps these to exit status 1."""


class HalvedParityError(SalemForgeError, ValueError):
    pass


class PrecisionUnreachable(SalemForgeError):
    pass


class InvalidFamilyParams(SalemForgeError, ValueError):
    pass


class InvalidReference(SalemForgeError, ValueError):
    pass


class PreconditionViolated(SalemForgeError):
    pass


class NotSalemError(SalemForgeError):
    pass


class NotCyclotomicComponent(SalemForgeError):
    pass


class ColorClassViolation(SalemForgeError):
    pass


class InvalidBaseGraph(SalemForgeError, ValueError):
    pass


class NonCyclotomicChild(SalemForgeError):
    pass


class NotTypeA(SalemForgeError):
    pass


class NotSalemTreeError(SalemForgeError):
    pass


class LengthMismatch(SalemForgeError, ValueError):
    pass


class NotEventuallySalem(SalemForgeError):
    pass


class RootIsWhite(SalemForgeError, ValueError):
    pass


class ParseError(SalemForgeError, ValueError):
    pass
