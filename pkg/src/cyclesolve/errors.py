"""Exception hierarchy shared across the solver."""


class SolverError(Exception):
    """Base class for all solver errors."""


class NotDerangement(SolverError):
    """Applying a cycle set produced a permutation with a fixed point."""


class LoopArc(SolverError):
    """A cycle arc maps a vertex onto its own (infinite) diagonal entry."""


class CorruptTable(SolverError):
    """Predecessor expansion did not terminate within n steps."""


class PassLimitExceeded(SolverError):
    """The negative-path sweep kept changing past the theoretical pass bound."""


class Infeasible(SolverError):
    """No feasible assignment exists (some row is entirely infinite)."""


class TooLarge(SolverError):
    """Instance exceeds the configured size guard of an exact method."""


class NoTourFound(SolverError):
    """No tour was found within the configured budget cap."""

    def __init__(self, budget_cap: int):
        super().__init__(f"no tour found within budget cap {budget_cap}")
        self.budget_cap = budget_cap


class ParseError(SolverError):
    """Malformed instance text; carries 1-based line and column."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"line {line}, col {col}: {message}")
        self.line = line
        self.col = col


class NonSquare(ParseError):
    """Row count or row length disagrees with the declared size."""


class DiagonalNotInf(ParseError):
    """A diagonal entry is finite."""
