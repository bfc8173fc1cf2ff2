"""Exception taxonomy shared by all semiwig modules."""


class SemiwigError(Exception):
    """Base class for all library errors."""


class DomainError(SemiwigError):
    """Argument outside the mathematical domain of the operation."""


class CapabilityError(SemiwigError):
    """Request exceeds a hard implementation limit (e.g. polynomial degree cap)."""


class AccuracyError(SemiwigError):
    """Quadrature/iteration budget exhausted before reaching the target accuracy.

    Carries the achieved error estimate in ``achieved``.
    """

    def __init__(self, msg, achieved=None):
        super().__init__(msg)
        self.achieved = achieved


class DegeneratePointError(SemiwigError):
    """Stationary point too degenerate for the standard formula."""


class UnsupportedError(SemiwigError):
    """Configuration intentionally unsupported (e.g. complex saddles in exact mode)."""


class TurningBandError(DomainError):
    """Evaluation requested inside the turning-point exclusion band."""


class BracketingError(SemiwigError):
    """Root bracket does not straddle a sign change."""


class CertificateError(SemiwigError):
    """Decay certificate missing or inadequate for an integral transform."""


class GridError(SemiwigError):
    """Phase-space grid too small: field does not decay at the boundary."""


class FlatPhaseError(DomainError):
    """Third phase derivative below threshold; Airy scaling undefined."""


class DegenerateRootError(SemiwigError):
    """Stationary-set root is not simple."""


class WrongBranchError(SemiwigError):
    """Datum does not satisfy the structural flag required by this routine."""


class ConfigError(SemiwigError):
    """Invalid scenario/configuration input."""
