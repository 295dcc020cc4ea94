"""Exception hierarchy.

Every error raised by the library derives from :class:`KmsflowError`. The CLI
maps the families below onto its exit-code contract.
"""
from __future__ import annotations


class KmsflowError(Exception):
    """Base class; ``code`` is a short machine-readable tag."""

    code = "error"


class VertexNotFound(KmsflowError, KeyError):
    code = "vertex-not-found"


class EdgeNotFound(KmsflowError, KeyError):
    code = "edge-not-found"


class LevelOutOfRange(KmsflowError, ValueError):
    code = "level-out-of-range"


class NonAdjacentLevels(KmsflowError, ValueError):
    code = "non-adjacent-levels"


class LevelOrderViolation(KmsflowError, ValueError):
    code = "level-order-violation"


class ThermalDataMissing(KmsflowError, ValueError):
    code = "thermal-data-missing"


class InfinitePartitionFunction(KmsflowError, ValueError):
    code = "infinite-partition-function"


class DimensionLimitExceeded(KmsflowError, ValueError):
    code = "dimension-limit-exceeded"


class InadmissibleGauge(KmsflowError, ValueError):
    code = "inadmissible-gauge"


class NumericModeConflict(KmsflowError, ValueError):
    """Exact arithmetic was requested for a quantity that is not rational."""

    code = "numeric-mode-conflict"


class MassOnInfiniteVertex(KmsflowError, ValueError):
    code = "mass-on-infinite-vertex"


class InvalidCylinder(KmsflowError, ValueError):
    code = "invalid-cylinder"


class ZeroMassVertex(KmsflowError, ValueError):
    code = "zero-mass-vertex-reached"


class InfiniteVertexOnPath(KmsflowError, ValueError):
    code = "infinite-vertex-on-path"


class BetaZero(KmsflowError, ValueError):
    code = "beta-zero"


class InvalidLink(KmsflowError, ValueError):
    code = "invalid-link"


class GraphMismatch(KmsflowError, ValueError):
    code = "graph-mismatch"


class ParameterOutOfRange(KmsflowError, ValueError):
    code = "parameter-out-of-range"


class DepthLimit(KmsflowError, ValueError):
    code = "depth-limit"


class SpecParseError(KmsflowError, ValueError):
    """Input JSON does not match the expected schema."""

    code = "parse-error"
