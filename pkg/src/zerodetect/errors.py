"""Exception types shared across the package."""


class ZeroDetectError(Exception):
    """Base class; ``payload`` is what the CLI serialises to stderr."""

    kind = "error"

    def __init__(self, message, **details):
        super().__init__(message)
        self.details = details

    def payload(self):
        out = {"error": self.kind, "message": str(self)}
        out.update({k: v for k, v in self.details.items() if v is not None})
        return out


class DomainError(ZeroDetectError, ValueError):
    kind = "domain"


class PoleError(DomainError):
    kind = "pole"


class CoverageError(ZeroDetectError):
    """The zero list does not reach the height a sum needs."""

    kind = "coverage"

    def __init__(self, message, required_height, available_height=None, **details):
        super().__init__(message, required_height=required_height,
                         available_height=available_height, **details)
        self.required_height = required_height
        self.available_height = available_height


class DegenerateShiftError(DomainError):
    kind = "degenerate_shift"


class VanishingGaussSumError(ZeroDetectError, ZeroDivisionError):
    kind = "vanishing_gauss_sum"


class ContourError(ZeroDetectError):
    """A zero of the integrand sits on or too near the integration contour."""

    kind = "contour"


class ConvergenceError(ZeroDetectError):
    kind = "convergence"


class ZeroFileError(ZeroDetectError):
    kind = "zero_file"


class NoDivergenceError(ZeroDetectError):
    kind = "no_divergence"
