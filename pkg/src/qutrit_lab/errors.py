"""Exception types shared across the package."""


class QutritLabError(Exception):
    """Base class for all package errors."""


class ShapeError(QutritLabError, ValueError):
    """Matrix dimensions are inconsistent with the requested operation."""


class DomainError(QutritLabError, ValueError):
    """Input lies outside the mathematical domain of the operation."""


class NumericError(QutritLabError, ArithmeticError):
    """A numerical routine failed to converge."""


class ConfigError(QutritLabError, ValueError):
    """An experiment configuration is invalid."""


class GeneratorResolutionError(QutritLabError):
    """No Hamiltonian generator reproduces the closed-form reduced state.

    Carries the residual of every candidate in ``residuals``.
    """

    def __init__(self, message, residuals):
        super().__init__(message)
        self.residuals = dict(residuals)
