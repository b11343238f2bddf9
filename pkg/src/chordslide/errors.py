"""Exception types shared across the package."""


class ChordSlideError(Exception):
    """Base class. ``kind`` names the error in machine-readable output."""

    kind = "error"

    def record(self):
        return {"error": self.kind, "message": str(self)}


class InputError(ChordSlideError, ValueError):
    kind = "InputError"


class UnknownLetter(InputError):
    kind = "UnknownLetter"


class InvalidDomain(InputError):
    kind = "InvalidDomain"

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))

    def record(self):
        return {"error": self.kind, "violations": self.violations}


class BoundaryNotPreserved(InputError):
    kind = "BoundaryNotPreserved"


class InvalidMove(InputError):
    kind = "InvalidMove"


class InvalidSpan(InputError):
    kind = "InvalidSpan"


class UsageError(InputError):
    kind = "UsageError"


class InvalidSlide(InputError):
    kind = "InvalidSlide"


class NotFlippable(InputError):
    kind = "NotFlippable"


class NotPentagonConfiguration(InputError):
    kind = "NotPentagonConfiguration"


class MalformedTriangulation(InputError):
    kind = "MalformedTriangulation"


class PreconditionViolation(InputError):
    kind = "PreconditionViolation"


class InapplicableMove(InputError):
    kind = "InapplicableMove"

    def __init__(self, prefix_length, message=""):
        self.prefix_length = prefix_length
        super().__init__(message or "move %d is not applicable" % prefix_length)

    def record(self):
        return {"error": self.kind, "message": str(self), "prefix_length": self.prefix_length}


class SearchBudgetExceeded(ChordSlideError):
    kind = "SearchBudgetExceeded"


class InternalInvariantViolation(ChordSlideError, AssertionError):
    kind = "InternalInvariantViolation"


class CompositionMismatch(ChordSlideError):
    kind = "CompositionMismatch"


class Finding(ChordSlideError):
    """A diagnostic that contradicts a claim the algorithms rely on."""

    kind = "Finding"


class StuckDomain(Finding):
    kind = "StuckDomain"

    def __init__(self, domain, reason):
        self.domain = domain
        self.reason = reason
        super().__init__(reason)

    def record(self):
        from .domain import domain_to_json
        return {"error": self.kind, "reason": self.reason, "domain": domain_to_json(self.domain)}


class MultiArcDiscrepancy(Finding):
    kind = "MultiArcDiscrepancy"

    def __init__(self, before, after, step):
        self.before = before
        self.after = after
        self.step = step
        super().__init__("greedy polygons at flip %d differ in more than one arc" % step)

    def record(self):
        from .domain import domain_to_json
        return {"error": self.kind, "step": self.step,
                "before": domain_to_json(self.before), "after": domain_to_json(self.after)}
