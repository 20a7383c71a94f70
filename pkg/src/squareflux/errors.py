"""Exception types.

Every library error carries a module-qualified ``code`` such as
``"surface.NON_FILLING"`` so that the command line can report it verbatim.
"""


class SquareFluxError(Exception):
    """Base class for all domain errors."""

    module = "squareflux"

    def __init__(self, kind, message="", line=None):
        self.kind = kind
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"{self.module}.{kind}{where}: {message}" if message else f"{self.module}.{kind}{where}")

    @property
    def code(self):
        return f"{self.module}.{self.kind}"


class SurfaceError(SquareFluxError):
    module = "surface"


class CurveError(SquareFluxError):
    module = "curves"


class NotTransverse(CurveError):
    """Raised when two polylines are not in general position."""

    def __init__(self, message=""):
        super().__init__("NOT_TRANSVERSE", message)


class HomologyError(SquareFluxError):
    module = "homology"


class WordError(SquareFluxError):
    module = "twists"


class FluxError(SquareFluxError):
    module = "flux"
