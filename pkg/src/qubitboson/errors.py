"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Raised when a run configuration (JSON or dict) is malformed."""


class ConvergenceError(RuntimeError):
    """Raised when the eigensolver fails to converge within its sweep cap."""


class DegenerateDenominatorError(ArithmeticError):
    """Raised when a perturbative energy denominator is (near-)zero.

    This happens when g|x01| approaches the level-spacing scale; the
    second-order formulas are invalid there and we refuse to evaluate them.
    """
