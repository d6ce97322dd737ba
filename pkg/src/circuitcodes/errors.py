"""Exception hierarchy shared by all circuitcodes modules."""


class CircuitCodeError(ValueError):
    """Base class for every error raised by this package."""


class NotACircuit(CircuitCodeError):
    """Some label occurs an odd number of times, so the walk does not close."""


class NotSimpleCycle(CircuitCodeError):
    """The closed walk revisits a vertex (or is the degenerate 2-cycle)."""


class PreconditionError(CircuitCodeError):
    pass


class ParityError(CircuitCodeError):
    """k and l have the same parity."""


class FamilyConditionError(CircuitCodeError):
    """(k, l) violates the family inequality for its parity class."""


class WitnessError(CircuitCodeError):
    """A relabeling map is not a bijection on [1, d]."""


class ConfigError(CircuitCodeError):
    pass


class SequenceParseError(CircuitCodeError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class SearchAborted(CircuitCodeError):
    """The node budget ran out; ``report`` holds the partial, non-exhaustive result."""

    def __init__(self, message: str, report):
        super().__init__(message)
        self.report = report
