"""Exception types shared across the package."""


class AlgebraError(ValueError):
    """Base class for rejected inputs and failed algebraic preconditions."""


class MalformedInput(AlgebraError):
    pass


class NotHomogeneous(AlgebraError):
    pass


class ComplexError(AlgebraError):
    """A complex or chain map violates its defining identities."""


class LiftObstructed(AlgebraError):
    def __init__(self, degree):
        super().__init__(f"lift obstructed at degree {degree}")
        self.degree = degree


class PreconditionError(AlgebraError):
    pass
