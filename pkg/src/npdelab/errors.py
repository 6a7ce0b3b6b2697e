"""Exception taxonomy shared across the package."""


class NpdeLabError(Exception):
    """Base class for package errors."""


class ConfigError(NpdeLabError):
    """Invalid configuration: bad key, bad value, or incompatible shapes."""


class StencilError(NpdeLabError):
    """Stencil construction failed."""


class SingularStencilError(StencilError):
    """Duplicate offsets make the moment system singular."""


class InsufficientPointsError(StencilError):
    """Fewer than deriv_order + 1 offsets were supplied."""


class NonFiniteFieldError(NpdeLabError):
    """A field carried NaN or Inf where finite values are required."""


class GroundTruthBlowupError(NpdeLabError):
    """Reference solver produced non-finite values during dataset generation."""


class TrainingDivergedError(NpdeLabError):
    """Training loss became non-finite."""

    def __init__(self, message: str, epoch: int):
        super().__init__(message)
        self.epoch = epoch


class EigenConvergenceError(NpdeLabError):
    """Dense eigensolver failed to converge for the named matrix."""


class CheckpointError(NpdeLabError):
    """Base class for checkpoint I/O failures."""


class CheckpointFormatError(CheckpointError):
    """File does not start with the checkpoint magic or has a bad section."""


class CheckpointVersionError(CheckpointError):
    """Checkpoint format version is not supported."""


class CheckpointHashError(CheckpointError):
    """Checkpoint was written under a different configuration."""


class CheckpointTruncatedError(CheckpointError):
    """File ended mid-section."""
