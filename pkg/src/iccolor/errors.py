"""Exception hierarchy shared by all modules."""


class IccolorError(Exception):
    """Base class for every error raised by this package."""


class FormatError(IccolorError, ValueError):
    """A ``.pg`` / ``.icd`` / ``.map`` file could not be parsed."""


class EmbeddingError(IccolorError):
    """A rotation system or a requested surgery is not well formed."""


class DisconnectedError(EmbeddingError):
    def __init__(self, components):
        self.components = components
        super().__init__(f"input has {len(components)} connected components")


class LoopError(EmbeddingError):
    """An identification would turn an edge into a loop."""


class InvalidInstanceError(IccolorError):
    """The instance does not satisfy the hypotheses of the coloring theorem."""

    def __init__(self, report):
        self.report = report
        super().__init__("; ".join(report.violations) or "invalid instance")


class DrawingError(IccolorError):
    """An independent-crossing drawing violates its invariants."""


class OracleSizeError(IccolorError):
    pass


class GenerationError(IccolorError):
    def __init__(self, message, achieved=None):
        self.achieved = achieved
        super().__init__(message)


class InternalInvariantError(IccolorError):
    """An outcome that the coloring theorem rules out.

    Raised for extension slack failures, invalid reduction outputs and a
    missing reducible configuration. The CLI maps it to exit status 3.
    """


class ReductionError(InternalInvariantError):
    pass


class ExtensionError(InternalInvariantError):
    pass


class CounterexampleCandidate(InternalInvariantError):
    def __init__(self, graph, message="no reducible configuration found"):
        self.graph = graph
        super().__init__(message)
