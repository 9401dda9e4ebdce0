"""Exception hierarchy shared by every module of the package."""


class QDefError(Exception):
    """Base class for all errors raised by qdefcs."""


class InvalidDeformation(QDefError, ValueError):
    """Deformation parameter q is not a finite positive real."""


class OutOfDisc(QDefError):
    """|z|^2 lies outside the disc of convergence, or beyond the configured guard."""


class NonConvergent(QDefError):
    """No truncation index below the hard cap satisfies the requested tolerance."""


class DegenerateState(QDefError):
    """The requested quantity is undefined for this state (e.g. Mandel Q at the vacuum)."""


class InvalidGupParams(QDefError, ValueError):
    """Deformed-commutator constants outside the supported branch."""


class ConfigError(QDefError, ValueError):
    """Invalid scan configuration; ``field`` names the offending entry."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
