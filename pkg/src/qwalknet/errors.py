class QwalkError(Exception):
    """Base class for errors raised by qwalknet."""


class GraphError(QwalkError, ValueError):
    """A graph violates the simple-graph invariants or a node/edge is out of range."""


class EdgeListError(GraphError):
    """Malformed edge-list or labels file."""

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class ConvergenceError(QwalkError, ArithmeticError):
    """The eigensolver hit its sweep cap before reaching the tolerance."""

    def __init__(self, message, residual):
        self.residual = residual
        super().__init__(f"{message} (off-diagonal residual {residual:.3e})")
