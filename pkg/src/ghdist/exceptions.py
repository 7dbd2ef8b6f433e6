"""Exception hierarchy shared by all ghdist modules."""


class GHDistError(Exception):
    """Base class for every error raised by ghdist."""


class MetricError(GHDistError, ValueError):
    """A distance matrix violates one of the metric axioms."""


class NotSquare(MetricError):
    pass


class NonFiniteEntry(MetricError):
    pass


class NonzeroDiagonal(MetricError):
    def __init__(self, i):
        self.indices = (i,)
        super().__init__(f"NonzeroDiagonal({i}): dist[{i}][{i}] must be 0")


class Asymmetric(MetricError):
    def __init__(self, i, j):
        self.indices = (i, j)
        super().__init__(f"Asymmetric({i},{j}): dist[{i}][{j}] != dist[{j}][{i}]")


class NegativeOrZeroOffDiagonal(MetricError):
    def __init__(self, i, j):
        self.indices = (i, j)
        super().__init__(
            f"NegativeOrZeroOffDiagonal({i},{j}): distinct points need a positive distance"
        )


class TriangleViolation(MetricError):
    def __init__(self, i, j, k):
        self.indices = (i, j, k)
        super().__init__(
            f"TriangleViolation({i},{j},{k}): dist[{i}][{k}] > dist[{i}][{j}] + dist[{j}][{k}]"
        )


class EmptySubset(GHDistError, ValueError):
    pass


class NegativeScale(GHDistError, ValueError):
    pass


class DimensionMismatch(GHDistError, ValueError):
    pass


class DuplicatePoint(GHDistError, ValueError):
    def __init__(self, i, j):
        self.indices = (i, j)
        super().__init__(f"DuplicatePoint: points {i} and {j} coincide")


class SizeMismatch(GHDistError, ValueError):
    pass


class EmptyComposition(GHDistError, ValueError):
    pass


class TooLarge(GHDistError, ValueError):
    pass


class EpsilonTooLarge(GHDistError, ValueError):
    pass


class ModelHasEdges(GHDistError, ValueError):
    pass


class OutOfRange(GHDistError, ValueError):
    pass


class BadParameters(GHDistError, ValueError):
    pass


class BadGrid(BadParameters):
    pass


class BudgetExceeded(GHDistError, RuntimeError):
    """The search hit its node cap; ``result`` holds the best incumbent found."""

    def __init__(self, result):
        self.result = result
        super().__init__(
            f"node budget exhausted after {result.nodes_explored} nodes; "
            f"best incumbent value {result.value}"
        )


class BoundViolation(GHDistError, ArithmeticError):
    """A computed distance broke an inequality that must hold."""
