"""Exception hierarchy.  ``exit_code`` is what the command line reports."""
from __future__ import annotations

from typing import Optional, Tuple


class KernelError(Exception):
    exit_code = 1

    def __init__(self, reason: str = "", path: Optional[Tuple[int, ...]] = None):
        self.reason = reason
        self.path = path
        super().__init__(reason)

    def __str__(self) -> str:
        where = "" if self.path is None else f" at node {'/'.join(map(str, self.path)) or 'root'}"
        return f"{type(self).__name__}{where}: {self.reason}"


# checking failures (exit 1)
class RuleMismatch(KernelError):
    pass


class ContextMismatchInLConjR(RuleMismatch):
    pass


class ContextMismatchInLConjI(RuleMismatch):
    pass


class BadMulticutCount(RuleMismatch):
    pass


class EmptyResultAfterP(RuleMismatch):
    pass


class IndexOutOfRange(RuleMismatch):
    pass


class NonLinearContext(RuleMismatch):
    pass


class MeasureIncrease(KernelError):
    def __init__(self, reason: str = "", step=None):
        super().__init__(reason)
        self.step = step


# precondition violations (exit 2)
class PreconditionError(KernelError):
    exit_code = 2


class GlobalConjPresent(PreconditionError):
    pass


class ArityMismatch(PreconditionError):
    pass


class SubjectMismatch(PreconditionError):
    pass


class VariableSequenceMismatch(PreconditionError):
    pass


class NotACut(PreconditionError):
    pass


class NoCut(PreconditionError):
    pass


class NotClean(PreconditionError):
    pass


class NotCanonical(PreconditionError):
    pass


class NotPrincipalLocalConj(PreconditionError):
    pass


class PreconditionsViolated(PreconditionError):
    pass


class StepBudgetExceeded(KernelError):
    exit_code = 4

    def __init__(self, max_steps: int, trace=None):
        super().__init__(f"no cut-free derivation after {max_steps} steps")
        self.max_steps = max_steps
        self.trace = trace


class ProofSyntaxError(SyntaxError):
    """Positioned syntax error; ``expected`` lists what the parser wanted."""

    exit_code = 3

    def __init__(self, message: str, line: int, column: int, expected=()):
        self.line_no = line
        self.column = column
        self.expected = tuple(expected)
        exp = f" (expected {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{line}:{column}: {message}{exp}")
