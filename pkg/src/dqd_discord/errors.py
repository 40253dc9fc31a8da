class ResolutionError(ValueError):
    """Quadrature grid cannot resolve the requested time window."""

    def __init__(self, message: str, required_points: int | None = None):
        super().__init__(message)
        self.required_points = required_points


class StateError(ValueError):
    """Matrix violates a two-qubit density-matrix invariant."""

    def __init__(self, message: str, violations: list[str] | None = None):
        super().__init__(message)
        self.violations = violations or [message]


class ConfigError(ValueError):
    pass
