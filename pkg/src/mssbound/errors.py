"""Exception hierarchy. Each class carries the status tag and CLI exit code it maps to."""


class MSSError(Exception):
    status = "ERROR"
    exit_code = 1


class HypothesisViolated(MSSError):
    """A theorem hypothesis failed; ``hypothesis`` names which one."""

    status = "HYPOTHESIS_VIOLATED"
    exit_code = 2

    def __init__(self, hypothesis, detail=""):
        self.hypothesis = hypothesis
        msg = hypothesis if not detail else f"{hypothesis}: {detail}"
        super().__init__(msg)


class GuardExceeded(MSSError):
    status = "ERROR"
    exit_code = 3

    def __init__(self, what, required, limit):
        self.required = required
        self.limit = limit
        super().__init__(f"{what}: needs {required}, guard is {limit}")


class ParseError(MSSError, ValueError):
    status = "ERROR"
    exit_code = 4


class InvariantBreach(MSSError):
    """Something the theory guarantees did not happen; always a library bug."""

    status = "ERROR"
    exit_code = 5
    tag = "INVARIANT_BREACH"


class InterlacingViolation(InvariantBreach):
    tag = "INTERLACING_VIOLATION"


class MixedCharNotRealRooted(InvariantBreach):
    tag = "MIXED_CHAR_NOT_REAL_ROOTED"


class NotAboveRoots(MSSError, ValueError):
    tag = "NOT_ABOVE_ROOTS"


class PreconditionFail(MSSError, ValueError):
    tag = "PRECONDITION_FAIL"
