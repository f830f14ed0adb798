"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`TropsevError`.
Validation problems derive from :class:`ValidationError` (CLI exit code 2) and
failed move-legality gates from :class:`GateError` (CLI exit code 3).
"""


class TropsevError(Exception):
    """Base class for library errors."""


class ValidationError(TropsevError):
    pass


class GateError(TropsevError):
    pass


# polygon
class NonConvexInput(ValidationError):
    pass


class NotHTransverse(ValidationError):
    pass


class ProfileMismatch(ValidationError):
    pass


class InvalidKiteParameters(ValidationError):
    pass


# tropical
class InvalidCurve(ValidationError):
    pass


class ContractedEdge(ValidationError):
    pass


class DisconnectedGraph(ValidationError):
    pass


class EvaluationMismatch(ValidationError):
    pass


# floors
class NotFloorDecomposed(ValidationError):
    pass


class NotDual(ValidationError):
    pass


class FunctionalContractsEverything(ValidationError):
    pass


class TooManyCycles(ValidationError):
    pass


# realizability
class HypothesesNotMet(ValidationError):
    pass


# moves
class NotFourValent(ValidationError):
    pass


class InvalidPairing(ValidationError):
    pass


class NoFreedom(ValidationError):
    pass


class UnboundedMove(TropsevError):
    """Raised when a deformation meets no wall; carries the ray."""

    def __init__(self, message, ray=None):
        super().__init__(message)
        self.ray = ray


class NotOnWall(ValidationError):
    pass


class NotFlattenedCycleWall(ValidationError):
    pass


class NotWeightOneVertex(ValidationError):
    pass


class CharacteristicGate(GateError):
    pass


class SearchExhausted(TropsevError):
    def __init__(self, message, explored=None):
        super().__init__(message)
        self.explored = explored or []


# rational
class ParameterAtPole(ValidationError):
    pass


class DegenerateParameters(ValidationError):
    pass


class DegenerateABC(ValidationError):
    pass


class NonGenericParameters(ValidationError):
    pass


# enumeration
class NotStretched(ValidationError):
    pass


class UnsupportedProfile(ValidationError):
    pass


class OutOfRange(ValidationError):
    pass
