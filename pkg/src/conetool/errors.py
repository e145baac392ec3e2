class ConeError(Exception):
    """Base class for all library errors."""


class AlgebraMismatchError(ConeError, ValueError):
    pass


class DomainError(ConeError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class NotInteriorError(DomainError):
    pass


class SpectralError(ConeError, ArithmeticError):
    def __init__(self, message: str, residual: float = float("nan")):
        super().__init__(f"{message} (residual {residual:.3e})")
        self.residual = residual


class ParamsError(ConeError, ValueError):
    """Boundary parameters or horofunction pairs violate their invariants."""
