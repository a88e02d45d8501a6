class InvalidProblem(ValueError):
    """Inputs that do not describe a valid (f, n, s, lambda) multiplicity query."""


class BetaUndefined(ValueError):
    """The two-row tableau beta(f, s) does not exist for these inputs."""


class NonIntegerResult(ArithmeticError):
    """A multiplicity came out further from an integer than the tolerance allows."""

    def __init__(self, value: complex, tolerance: float, context: str = ""):
        self.value = value
        self.tolerance = tolerance
        self.context = context
        residue = abs(value - round(value.real))
        super().__init__(f"non-integer multiplicity {value:.12g} (residue {residue:.3g} >= {tolerance:g}) {context}".strip())
