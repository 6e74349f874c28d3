"""Exception hierarchy shared by the numerical stages."""


class SparseMomentsError(Exception):
    """Base class for solver failures.

    ``stage`` names the pipeline step that failed (set by the learner when it
    re-raises) and ``diagnostics`` carries whatever was computed before the
    failure.
    """

    status = "error"

    def __init__(self, message, *, stage=None, diagnostics=None, best=None):
        super().__init__(message)
        self.stage = stage
        self.diagnostics = dict(diagnostics or {})
        self.best = best

    def __str__(self):
        msg = super().__str__()
        return f"[{self.stage}] {msg}" if self.stage else msg


class DegreeDeficient(SparseMomentsError):
    """Kernel polynomial has (numerically) lower degree than k."""

    status = "degree_deficient"


class DegenerateNodes(SparseMomentsError):
    """Two Vandermonde nodes coincide within the degeneracy threshold."""

    status = "degenerate_nodes"


class ConvergenceFailure(SparseMomentsError):
    """An iterative solver hit its iteration cap."""

    status = "convergence_failure"


class InfeasibleSampleSize(SparseMomentsError, ValueError):
    status = "infeasible_sample_size"


class InvalidInput(SparseMomentsError, ValueError):
    status = "invalid_input"
