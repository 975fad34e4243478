"""Exception hierarchy.

Each family carries, as ``exit_code``, the status the CLI returns for it.
"""


class IdealCyclesError(Exception):
    exit_code = 1


class InputError(IdealCyclesError):
    exit_code = 1


class ParseError(InputError):
    pass


class FieldMismatch(InputError):
    pass


class InvariantViolation(InputError):
    pass


class PreconditionError(IdealCyclesError, ValueError):
    exit_code = 2


class ZeroPoint(PreconditionError):
    pass


class DegenerateTriple(PreconditionError):
    pass


class DegenerateTuple(PreconditionError):
    pass


class BoundaryOfVertex(PreconditionError):
    pass


class BoundaryOfBasepoint(PreconditionError):
    pass


class UnnormalizableTuple(PreconditionError):
    pass


class MixedDegree(PreconditionError):
    pass


class InvalidDecoration(PreconditionError):
    pass


class RelatorViolation(PreconditionError):
    pass


class CuspFixedPointViolation(PreconditionError):
    pass


class BasePointCollision(PreconditionError):
    pass


class OnBoundaryFace(PreconditionError):
    pass


class SamplingExhausted(PreconditionError):
    pass


class NotRelativeCycle(PreconditionError):
    pass


class NotACycle(PreconditionError):
    pass


class DegreeCertificateFailed(PreconditionError):
    pass


class VerificationMismatch(IdealCyclesError):
    exit_code = 3
