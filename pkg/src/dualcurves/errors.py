"""Exception hierarchy.

Two broad families: ``InputError`` for malformed user input (configs, CLI
arguments) and ``GeometryError`` for violated mathematical preconditions.
The CLI maps them onto exit codes 2 and 3; ``ExportError`` maps to 4.
"""


class DualGeometryError(Exception):
    exit_code = 1


class InputError(DualGeometryError):
    exit_code = 2


class ParseError(InputError):
    pass


class UnknownBuiltin(InputError):
    pass


class SchemaViolation(InputError):
    pass


class GeometryError(DualGeometryError, ValueError):
    exit_code = 3


class DivisionByPureDual(GeometryError, ZeroDivisionError):
    pass


class NonPositiveRealPart(GeometryError):
    pass


class ZeroRealPart(GeometryError):
    pass


class NotUnit(GeometryError):
    pass


class NotUnitDirection(NotUnit):
    pass


class MomentNotPerpendicular(GeometryError):
    pass


class ParallelLines(GeometryError):
    pass


class OutOfDomain(GeometryError):
    pass


class SingularIndicatrix(GeometryError):
    pass


class VanishingCurvature(GeometryError):
    pass


class VanishingTorsion(GeometryError):
    pass


class QuadratureNonConvergence(GeometryError):
    pass


class IllConditionedFit(GeometryError):
    pass


class InconsistentFits(GeometryError):
    pass


class NotOnDualUnitSphere(GeometryError):
    def __init__(self, message, index=None, s=None, residual=None):
        super().__init__(message)
        self.index = index
        self.s = s
        self.residual = residual


class ExportError(DualGeometryError, OSError):
    exit_code = 4
