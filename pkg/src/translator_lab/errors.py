"""Exception hierarchy shared by every module of the package."""


class TranslatorLabError(Exception):
    """Base class for all errors raised by translator_lab."""


class DegeneratePoint(TranslatorLabError):
    """The surface patch is not immersed at the requested parameters."""


class VanishingCurvature(TranslatorLabError):
    pass


class NonPositiveRadius(TranslatorLabError, ValueError):
    pass


class BadAngle(TranslatorLabError, ValueError):
    pass


class BadParameters(TranslatorLabError, ValueError):
    pass


class CylindricalRuling(TranslatorLabError):
    """The ruling direction is (numerically) constant, so alpha is undefined."""


class StrictionPoint(TranslatorLabError):
    pass


class SingularAngle(TranslatorLabError):
    """sin(theta) vanishes where the profile system is genuinely singular."""


class StepFailure(TranslatorLabError):
    pass


class WrongInitialConditions(TranslatorLabError):
    pass


class NoSolution(TranslatorLabError):
    pass


class Inconclusive(TranslatorLabError):
    pass


class InverseDomain(TranslatorLabError, ValueError):
    pass


class NegativeRadicand(TranslatorLabError):
    pass


class BadEpsilon(TranslatorLabError, ValueError):
    pass


class NoConvergence(TranslatorLabError):
    pass


class NotConverged(TranslatorLabError):
    pass


class DomainBoundary(TranslatorLabError):
    """A phase-plane point lies too close to theta in {0, pi}."""


class OpenSurface(TranslatorLabError):
    pass


class DegenerateG(TranslatorLabError, ValueError):
    pass


class TangentSurfaceCase(TranslatorLabError):
    pass


class NegativeRadius(TranslatorLabError, ValueError):
    pass
