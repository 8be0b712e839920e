class QceqError(ValueError):
    """Base class for every domain error raised by the circuit toolkit."""


class InvalidCircuit(QceqError):
    """Wire bookkeeping is inconsistent (dead wire used, duplicate wires, ...)."""


class ArityMismatch(QceqError):
    pass


class TheoryMismatch(QceqError):
    pass


class UnsupportedTheory(QceqError):
    pass


class DimensionCap(QceqError):
    pass


class DimensionMismatch(QceqError):
    pass


class NotUnitary(QceqError):
    pass


class NotIsometry(QceqError):
    pass


class SolveFailure(QceqError):
    """An angle solver could not reach its reconstruction target. Always a bug."""


class InvalidInput(QceqError):
    pass


class UnknownRule(QceqError):
    pass


class BadParameters(QceqError):
    pass


class StaleMatch(QceqError):
    pass


class BlockNotIdentity(QceqError):
    pass


class ShapeMismatch(QceqError):
    pass


class CircuitParseError(QceqError):
    """
    Raised by the text/JSON circuit readers.

    Args:
        message: Human readable reason.
        line: 1-based line number of the offending input line, if known.
    """

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


class StepFailed(QceqError):
    def __init__(self, index: int, reason: str):
        self.index = index
        self.reason = reason
        super().__init__(f"step {index} failed: {reason}")


class DerivationParseError(QceqError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")
